"""Dense univariate polynomials over a coefficient field.

Coefficients are stored low-to-high in a numpy array with no trailing zeros,
so the zero polynomial is the empty array and its degree is the sentinel
:data:`DEG_ZERO` (negative infinity, which compares below every integer and
absorbs additions).
"""

from __future__ import annotations

import numpy as np

DEG_ZERO = float("-inf")


def _trimmed_length(c: np.ndarray) -> int:
    if c.size == 0:
        return 0
    if c[-1] != 0:
        return c.size
    nz = np.flatnonzero(c)
    return int(nz[-1]) + 1 if nz.size else 0


class Poly:
    __slots__ = ("field", "c")

    def __init__(self, field, coeffs=(), *, trusted: bool = False):
        # trusted: coeffs is already an array of canonical residues of field.dtype
        if not trusted:
            coeffs = field.array(coeffs)
        n = _trimmed_length(coeffs)
        self.field = field
        self.c = coeffs if n == coeffs.size else coeffs[:n]

    # -- constructors ----------------------------------------------------------
    @classmethod
    def zero(cls, field) -> "Poly":
        return cls(field, field.zeros(0), trusted=True)

    @classmethod
    def constant(cls, field, value) -> "Poly":
        return cls(field, [field(value)])

    @classmethod
    def monomial(cls, field, n: int, value=1) -> "Poly":
        c = field.zeros(n + 1)
        c[n] = field.scalar(field(value))
        return cls(field, c, trusted=True)

    @classmethod
    def x(cls, field) -> "Poly":
        return cls.monomial(field, 1)

    # -- inspection ------------------------------------------------------------
    @property
    def deg(self):
        return self.c.size - 1 if self.c.size else DEG_ZERO

    @property
    def length(self) -> int:
        """Number of stored coefficients, ``deg + 1`` (0 for the zero polynomial)."""
        return self.c.size

    def is_zero(self) -> bool:
        return self.c.size == 0

    def __bool__(self):
        return self.c.size != 0

    def __getitem__(self, i: int):
        """Coefficient of x^i; indices outside ``[0, deg]`` read as zero."""
        if 0 <= i < self.c.size:
            v = self.c[i]
            return v if self.field.dtype is object else int(v)
        return self.field.zero

    @property
    def lc(self):
        if not self.c.size:
            return self.field.zero
        return self[self.c.size - 1]

    def coeffs(self) -> list:
        return [self[i] for i in range(self.c.size)]

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field == other.field and self.c.size == other.c.size and bool(np.all(self.c == other.c))

    def __hash__(self):
        return hash((self.field, tuple(self.coeffs())))

    def __repr__(self):
        return f"Poly({self.field.spec}, {[self.field.to_str(v) for v in self.coeffs()]})"

    def __str__(self):
        if not self.c.size:
            return "0"
        terms = []
        for i in range(self.c.size - 1, -1, -1):
            v = self[i]
            if v == 0:
                continue
            s = self.field.to_str(v)
            terms.append(s if i == 0 else f"{s}*x^{i}" if i > 1 else f"{s}*x")
        return " + ".join(terms)

    def __call__(self, x):
        f = self.field
        acc = f.zero
        for v in reversed(self.coeffs()):
            acc = f.add(f.mul(acc, x), v)
        return acc

    # -- structural operations ---------------------------------------------------
    def slice(self, i: int, j: int | None = None) -> "Poly":
        """``U_{i;j} = U_i + U_{i+1} x + ... + U_{j-1} x^{j-1-i}``.

        Coefficients outside ``[0, deg]`` read as zero, so a negative ``i``
        shifts the polynomial up (multiplication by ``x^(-i)``).  ``j=None``
        means ``deg + 1``; ``j <= i`` gives zero.  The result never shares
        memory with ``self``.
        """
        n = self.c.size
        if j is None:
            j = n
        if j <= i:
            return Poly.zero(self.field)
        lo, hi = max(i, 0), min(j, n)
        if hi <= lo:
            return Poly.zero(self.field)
        body = self.c[lo:hi]
        if lo > i:
            body = np.concatenate((self.field.zeros(lo - i), body))
        else:
            body = body.copy()
        return Poly(self.field, body, trusted=True)

    def shift(self, m: int) -> "Poly":
        """Multiply by x^m (m >= 0)."""
        if not self.c.size or m == 0:
            return self
        return Poly(self.field, np.concatenate((self.field.zeros(m), self.c)), trusted=True)

    def padded(self, n: int) -> np.ndarray:
        """Coefficient vector zero-extended (never truncated) to length n."""
        if self.c.size >= n:
            return self.c.copy()
        return np.concatenate((self.c, self.field.zeros(n - self.c.size)))

    def monic(self) -> "Poly":
        if not self.c.size:
            return self
        f = self.field
        return Poly(f, f.vscale(f.inv(self.lc), self.c), trusted=True)

    # -- operator sugar (uncounted) ------------------------------------------------
    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return sub(self, other)

    def __neg__(self):
        return neg(self)

    def __mul__(self, other):
        if isinstance(other, Poly):
            from .arith import mul

            return mul(self, other)
        return scale(self.field(other), self)

    __rmul__ = __mul__


def poly(field, coeffs) -> Poly:
    """Build a polynomial from low-to-high coefficients (any field-coercible values)."""
    return Poly(field, [field(v) for v in coeffs])


def add(P: Poly, Q: Poly, counter=None) -> Poly:
    f = P.field
    a, b = P.c, Q.c
    if a.size < b.size:
        a, b = b, a
    if not b.size:
        return Poly(f, a.copy(), trusted=True)
    out = a.copy()
    out[: b.size] = f.vadd(a[: b.size], b)
    if counter is not None:
        counter.adds(b.size)
    return Poly(f, out, trusted=True)


def sub(P: Poly, Q: Poly, counter=None) -> Poly:
    f = P.field
    a, b = P.c, Q.c
    n = max(a.size, b.size)
    m = min(a.size, b.size)
    out = f.zeros(n)
    out[: a.size] = a
    if b.size > m:
        out[m : b.size] = f.vneg(b[m:])
    if m:
        out[:m] = f.vsub(a[:m], b[:m])
        if counter is not None:
            counter.adds(m)
    return Poly(f, out, trusted=True)


def neg(P: Poly) -> Poly:
    return Poly(P.field, P.field.vneg(P.c), trusted=True)


def scale(c, P: Poly, counter=None) -> Poly:
    f = P.field
    if counter is not None:
        counter.mults(P.c.size)
    return Poly(f, f.vscale(c, P.c), trusted=True)
