"""2x2 polynomial matrices, their spectra, and the matrix middle product."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arith import MulBackend, _middle, default_backend, mul, plan_for
from .errors import DegreeMismatch, LengthMismatch, LengthOverflow
from .ntt import TransformPlan, dft, evaluate_spectrum, fft_double, inverse_dft, next_power_of_two
from .polynomial import DEG_ZERO, Poly, add, sub

# a 2x2 matrix of field scalars, row-major: (a11, a12, a21, a22)
ScalarMat = tuple


class Mat2Poly:
    """``[[m11, m12], [m21, m22]]`` with polynomial entries over one field."""

    __slots__ = ("m11", "m12", "m21", "m22")

    def __init__(self, m11: Poly, m12: Poly, m21: Poly, m22: Poly):
        self.m11, self.m12, self.m21, self.m22 = m11, m12, m21, m22

    @classmethod
    def identity(cls, field) -> "Mat2Poly":
        one, zero = Poly.constant(field, 1), Poly.zero(field)
        return cls(one, zero, zero, one)

    @classmethod
    def elementary(cls, q: Poly) -> "Mat2Poly":
        """The Bezout factor ``[[0, 1], [1, -q]]``."""
        f = q.field
        return cls(Poly.zero(f), Poly.constant(f, 1), Poly.constant(f, 1), -q)

    @property
    def field(self):
        return self.m11.field

    @property
    def entries(self) -> tuple[Poly, Poly, Poly, Poly]:
        return (self.m11, self.m12, self.m21, self.m22)

    @property
    def deg(self):
        return max(e.deg for e in self.entries)

    def coeff(self, i: int) -> ScalarMat:
        """Coefficient matrix of x^i."""
        return tuple(e[i] for e in self.entries)

    def lead(self) -> ScalarMat:
        d = self.deg
        if d == DEG_ZERO:
            return (self.field.zero,) * 4
        return self.coeff(d)

    def det(self) -> Poly:
        return self.m11 * self.m22 - self.m12 * self.m21

    def is_identity(self) -> bool:
        return self == Mat2Poly.identity(self.field)

    def apply(self, P: Poly, Q: Poly, backend: MulBackend | None = None, counter=None) -> tuple[Poly, Poly]:
        """``M (P, Q)^T``."""
        a = add(mul(self.m11, P, backend, counter), mul(self.m12, Q, backend, counter), counter)
        b = add(mul(self.m21, P, backend, counter), mul(self.m22, Q, backend, counter), counter)
        return a, b

    def rows(self) -> list[list[Poly]]:
        return [[self.m11, self.m12], [self.m21, self.m22]]

    def __eq__(self, other):
        if not isinstance(other, Mat2Poly):
            return NotImplemented
        return all(a == b for a, b in zip(self.entries, other.entries))

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"Mat2Poly([[{self.m11}, {self.m12}], [{self.m21}, {self.m22}]])"

    def __matmul__(self, other: "Mat2Poly") -> "Mat2Poly":
        return mat_mul(self, other)


@dataclass
class Mat2Spectrum:
    """Values of a 2x2 polynomial matrix at ``w_n^0 .. w_n^(n-1)``, one array per entry."""

    n: int
    s11: np.ndarray
    s12: np.ndarray
    s21: np.ndarray
    s22: np.ndarray

    @property
    def entries(self):
        return (self.s11, self.s12, self.s21, self.s22)

    def at(self, i: int) -> ScalarMat:
        return tuple(e[i] for e in self.entries)

    def __eq__(self, other):
        if not isinstance(other, Mat2Spectrum):
            return NotImplemented
        return self.n == other.n and all(bool(np.all(a == b)) for a, b in zip(self.entries, other.entries))

    @classmethod
    def identity(cls, field, n: int) -> "Mat2Spectrum":
        one = field.array([1] * n)
        return cls(n, one, field.zeros(n), field.zeros(n), one.copy())


# -- scalar 2x2 helpers ---------------------------------------------------------------------


def scalar_mat_mul(field, A: ScalarMat, B: ScalarMat, counter=None) -> ScalarMat:
    """2x2 product; terms with a zero factor are skipped (leading matrices are sparse)."""
    f = field
    out = []
    mults = adds = 0
    for i in range(2):
        for j in range(2):
            terms = [(A[2 * i + t], B[2 * t + j]) for t in range(2)]
            terms = [(a, b) for a, b in terms if a != 0 and b != 0]
            acc = f.zero
            for a, b in terms:
                acc = f.add(acc, f.mul(a, b))
            mults += len(terms)
            adds += max(len(terms) - 1, 0)
            out.append(acc)
    if counter is not None:
        counter.mults(mults)
        counter.adds(adds)
    return tuple(out)


def scalar_mat_is_zero(A: ScalarMat) -> bool:
    return all(v == 0 for v in A)


# -- products -------------------------------------------------------------------------------


def mat_mul(M: Mat2Poly, N: Mat2Poly, backend: MulBackend | None = None, counter=None) -> Mat2Poly:
    """Exact product ``M N`` with eight polynomial products."""
    if backend is None:
        backend = default_backend(M.field)

    def dot(a, b, c, e):
        return add(mul(a, b, backend, counter), mul(c, e, backend, counter), counter)

    return Mat2Poly(
        dot(M.m11, N.m11, M.m12, N.m21),
        dot(M.m11, N.m12, M.m12, N.m22),
        dot(M.m21, N.m11, M.m22, N.m21),
        dot(M.m21, N.m12, M.m22, N.m22),
    )


def mat_dft(plan: TransformPlan, M: Mat2Poly, n: int, counter=None) -> Mat2Spectrum:
    """Entrywise transform of length n; every entry must have degree < n."""
    return Mat2Spectrum(n, *(dft(plan, e, n, counter) for e in M.entries))


def mat_evaluate(plan: TransformPlan, M: Mat2Poly, n: int, counter=None) -> Mat2Spectrum:
    """Spectrum of ``M rem (x^n - 1)``, for entries of any degree.

    Length 1 is a plain coefficient sum and records no transform.
    """
    if n == 1:
        f = plan.field
        vals = []
        for e in M.entries:
            s = f.zero
            for v in e.coeffs():
                s = f.add(s, v)
            if counter is not None and e.length > 1:
                counter.adds(e.length - 1)
            vals.append(f.array([s]))
        return Mat2Spectrum(1, *vals)
    return Mat2Spectrum(n, *(evaluate_spectrum(plan, e, n, counter) for e in M.entries))


def mat_idft(plan: TransformPlan, S: Mat2Spectrum, counter=None) -> Mat2Poly:
    return Mat2Poly(*(inverse_dft(plan, s, counter) for s in S.entries))


def mat_double(plan: TransformPlan, M: Mat2Poly, half: Mat2Spectrum, counter=None) -> Mat2Spectrum:
    """Length-2n spectrum of M from its length-n spectrum (four half-length transforms)."""
    return Mat2Spectrum(2 * half.n, *(fft_double(plan, e, s, counter) for e, s in zip(M.entries, half.entries)))


def spectrum_mul(field, S: Mat2Spectrum, T: Mat2Spectrum, counter=None) -> Mat2Spectrum:
    """Pointwise 2x2 products, 8 multiplications per point."""
    if S.n != T.n:
        raise LengthMismatch(f"spectra of lengths {S.n} and {T.n}")
    f = field
    a11, a12, a21, a22 = S.entries
    b11, b12, b21, b22 = T.entries
    if counter is not None:
        counter.mults(8 * S.n)
        counter.adds(4 * S.n)
    return Mat2Spectrum(
        S.n,
        f.vadd(f.vmul(a11, b11), f.vmul(a12, b21)),
        f.vadd(f.vmul(a11, b12), f.vmul(a12, b22)),
        f.vadd(f.vmul(a21, b11), f.vmul(a22, b21)),
        f.vadd(f.vmul(a21, b12), f.vmul(a22, b22)),
    )


def mat_mul_wrapped(
    plan: TransformPlan,
    S: Mat2Spectrum,
    T: Mat2Spectrum,
    lead_left: ScalarMat,
    lead_right: ScalarMat,
    k: int,
    counter=None,
) -> tuple[Mat2Poly, Mat2Spectrum]:
    """Exact product of two matrices whose product has degree <= k, from length-k spectra.

    The cyclic product is the true product modulo ``x^k - 1``; adding
    ``C (x^k - 1)`` with ``C = lead_left * lead_right`` (the degree-k
    coefficient of the true product) undoes the wrap-around.  Returns the
    product and its spectrum.
    """
    if S.n != k or T.n != k:
        raise LengthMismatch(f"expected spectra of length {k}, got {S.n} and {T.n}")
    f = plan.field
    prod = spectrum_mul(f, S, T, counter)
    cyclic = mat_idft(plan, prod, counter)
    C = scalar_mat_mul(f, lead_left, lead_right, counter)
    if scalar_mat_is_zero(C):
        return cyclic, prod
    out = []
    for e, c in zip(cyclic.entries, C):
        a = e.padded(k + 1)
        if c != 0:
            a[0] = f.scalar(f.sub(int(a[0]) if f.dtype is not object else a[0], c))
            a[k] = f.scalar(c)
        out.append(Poly(f, a, trusted=True))
    if counter is not None:
        counter.adds(sum(1 for c in C if c != 0))
    return Mat2Poly(*out), prod


# -- matrix middle product ---------------------------------------------------------------------


def _check_rhs(RHS: Mat2Poly, n: int) -> None:
    for e in RHS.entries:
        if e.length > n:
            raise LengthOverflow(f"right-hand entry of degree {e.deg} does not fit in length {n}")


def mat_middle_product(
    M: Mat2Poly,
    d: int,
    RHS: Mat2Poly,
    n: int,
    backend: MulBackend | None = None,
    counter=None,
    M_hat: Mat2Spectrum | None = None,
) -> Mat2Poly:
    """``M ⋊_d RHS``: entry (i, j) is ``sum_t M[i][t] ⋊_d RHS[t][j]``.

    Requires ``deg M = d < n`` and RHS entries of degree < n; the result
    entries have degree < n - d.  With the NTT backend (or a supplied
    spectrum ``M_hat``) the product is one cyclic convolution of length
    ``N = M_hat.n`` (or the next power of two >= n): 4 forward transforms
    of RHS, 4 inverse transforms, plus 4 for M when no spectrum is given.
    """
    if M.deg != d:
        raise DegreeMismatch(f"deg M = {M.deg}, expected {d}")
    if not d < n:
        raise LengthOverflow(f"need d < n, got d={d}, n={n}")
    _check_rhs(RHS, n)
    return _mat_middle(M, d, RHS, n, backend, counter, M_hat)


def _fits(field, n: int) -> bool:
    return next_power_of_two(n) <= field.max_transform_length


def _mat_middle(M, d, RHS, n, backend=None, counter=None, M_hat=None) -> Mat2Poly:
    """As :func:`mat_middle_product` but accepts ``deg M <= d``."""
    f = M.field
    if backend is None:
        backend = default_backend(f)
    if M_hat is not None or (backend.kind == "ntt" and n - d >= backend.ntt_cutoff and _fits(f, n)):
        plan = plan_for(f)
        N = M_hat.n if M_hat is not None else next_power_of_two(n)
        if N < n:
            raise LengthOverflow(f"spectrum length {N} shorter than {n}")
        if M_hat is None:
            M_hat = mat_dft(plan, M, N, counter)
        R_hat = mat_dft(plan, RHS, N, counter)
        full = mat_idft(plan, spectrum_mul(f, M_hat, R_hat, counter), counter)
        return Mat2Poly(*(e.slice(d, n) for e in full.entries))
    rows = M.rows()
    cols = RHS.rows()
    out = []
    for i in range(2):
        for j in range(2):
            a = _middle(rows[i][0], d, cols[0][j], n, backend, counter)
            b = _middle(rows[i][1], d, cols[1][j], n, backend, counter)
            out.append(add(a, b, counter))
    return Mat2Poly(*out)


def mat_middle_direct(M: Mat2Poly, d: int, RHS: Mat2Poly, n: int) -> Mat2Poly:
    """Literal double-sum evaluation, used as an oracle."""
    f = M.field
    width = n - d
    rows, cols = M.rows(), RHS.rows()
    out = []
    for i in range(2):
        for j in range(2):
            vals = []
            for r in range(width):
                acc = f.zero
                for t in range(2):
                    A, B = rows[i][t], cols[t][j]
                    for s in range(d + 1):
                        acc = f.add(acc, f.mul(A[s], B[d + r - s]))
                vals.append(acc)
            out.append(Poly(f, vals))
    return Mat2Poly(*out)


def mat_sub(M: Mat2Poly, N: Mat2Poly) -> Mat2Poly:
    return Mat2Poly(*(sub(a, b) for a, b in zip(M.entries, N.entries)))
