"""Polynomial multiplication backends, middle products, division and series inversion."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DegreeMismatch, DivisionByZero, LengthOverflow, NotInvertible, UnsupportedLength
from .field import PrimeField
from .ntt import TransformPlan, dft, inverse_dft, next_power_of_two
from .polynomial import Poly, add, scale, sub

NEWTON_DIVISION_THRESHOLD = 32

_LIMB = 16
_LIMB_MASK = (1 << _LIMB) - 1


@lru_cache(maxsize=None)
def plan_for(field) -> TransformPlan:
    """Shared transform plan per field."""
    return TransformPlan(field)


@dataclass(frozen=True)
class MulBackend:
    """Multiplication strategy.

    ``kind`` is one of ``schoolbook``, ``karatsuba`` or ``ntt``.  Karatsuba
    recursion stops at operands of at most ``karatsuba_cutoff`` coefficients;
    the NTT path multiplies operands shorter than ``ntt_cutoff`` by schoolbook
    and, when ``fallback`` is set, falls back to Karatsuba for products longer
    than the field supports.
    """

    kind: str = "karatsuba"
    karatsuba_cutoff: int = 16
    ntt_cutoff: int = 32
    fallback: bool = True
    # ntt only: issue every transform at this one length, tiling longer operands
    fixed_length: int | None = None

    def __post_init__(self):
        if self.kind not in ("schoolbook", "karatsuba", "ntt"):
            raise ValueError(f"unknown multiplication backend {self.kind!r}")
        if self.karatsuba_cutoff < 1:
            raise ValueError("karatsuba_cutoff must be positive")
        if self.fixed_length is not None and (self.fixed_length < 2 or self.fixed_length & (self.fixed_length - 1)):
            raise ValueError("fixed_length must be a power of two >= 2")


SCHOOLBOOK = MulBackend("schoolbook")
KARATSUBA = MulBackend("karatsuba")
NTT = MulBackend("ntt")
EXACT_NTT = MulBackend("ntt", ntt_cutoff=1)


def default_backend(field) -> MulBackend:
    if isinstance(field, PrimeField) and field.two_adicity >= 10:
        return NTT
    return KARATSUBA


# -- raw convolution ---------------------------------------------------------------


def convolve(field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact full convolution of two coefficient vectors (uncounted).

    Word-size prime fields split each residue into two 16-bit limbs so the
    integer convolutions in int64 cannot overflow.
    """
    if a.size == 0 or b.size == 0:
        return field.zeros(0)
    if field.dtype is object:
        if a.size < b.size:
            a, b = b, a
        out = field.zeros(a.size + b.size - 1)
        for i, bi in enumerate(b):
            if bi != 0:
                out[i : i + a.size] = field.vadd(out[i : i + a.size], field.vscale(bi, a))
        return out
    p = field.p
    a = a.astype(np.int64)
    b = b.astype(np.int64)
    a0, a1 = a & _LIMB_MASK, a >> _LIMB
    b0, b1 = b & _LIMB_MASK, b >> _LIMB
    c00 = np.convolve(a0, b0) % p
    c11 = np.convolve(a1, b1) % p
    mid = (np.convolve(a0, b1) + np.convolve(a1, b0)) % p
    out = c00.astype(np.uint64)
    out = (out + (mid.astype(np.uint64) << np.uint64(_LIMB)) % np.uint64(p)) % np.uint64(p)
    out = (out + c11.astype(np.uint64) * np.uint64((1 << (2 * _LIMB)) % p) % np.uint64(p)) % np.uint64(p)
    return out


# -- products ------------------------------------------------------------------------


def _schoolbook(field, a, b, counter):
    if counter is not None and a.size and b.size:
        counter.mults(a.size * b.size)
        counter.adds(a.size * b.size - (a.size + b.size - 1))
    return convolve(field, a, b)


def _karatsuba(field, a, b, cutoff, counter):
    la, lb = a.size, b.size
    if la == 0 or lb == 0:
        return field.zeros(0)
    if min(la, lb) <= cutoff:
        return _schoolbook(field, a, b, counter)
    n = max(la, lb)
    if la < n:
        a = np.concatenate((a, field.zeros(n - la)))
    if lb < n:
        b = np.concatenate((b, field.zeros(n - lb)))
    h = (n + 1) // 2
    a0, a1 = a[:h], a[h:]
    b0, b1 = b[:h], b[h:]
    z0 = _karatsuba(field, a0, b0, cutoff, counter)
    z2 = _karatsuba(field, a1, b1, cutoff, counter)
    sa = a0.copy()
    sa[: a1.size] = field.vadd(sa[: a1.size], a1)
    sb = b0.copy()
    sb[: b1.size] = field.vadd(sb[: b1.size], b1)
    z1 = _karatsuba(field, sa, sb, cutoff, counter)
    z1[: z0.size] = field.vsub(z1[: z0.size], z0)
    z1[: z2.size] = field.vsub(z1[: z2.size], z2)
    out = field.zeros(2 * n - 1)
    out[: z0.size] = z0
    out[2 * h : 2 * h + z2.size] = z2
    out[h : h + z1.size] = field.vadd(out[h : h + z1.size], z1)
    if counter is not None:
        counter.adds(a1.size + b1.size + z0.size + 2 * z2.size + z1.size)
    return out[: la + lb - 1]


def _ntt_product(plan, a, b, counter):
    f = plan.field
    size = a.size + b.size - 1
    n = next_power_of_two(size)
    plan.check_length(n)
    fa = plan.transform(np.concatenate((a, f.zeros(n - a.size))), False, counter)
    fb = plan.transform(np.concatenate((b, f.zeros(n - b.size))), False, counter)
    prod = f.vmul(fa, fb)
    if counter is not None:
        counter.mults(n)
    return plan.transform(prod, True, counter)[:size]


def _karatsuba_estimate(la: int, lb: int, cutoff: int) -> float:
    lo, hi = min(la, lb), max(la, lb)
    if lo <= cutoff:
        return lo * hi
    return hi * lo**0.585 * cutoff**0.415


def _ntt_tiled(plan, a, b, L, counter):
    """Product through length-L transforms only: both operands are cut into
    blocks of L/2 coefficients, block spectra are accumulated per output
    offset, and each offset costs one inverse transform."""
    f = plan.field
    half = L // 2
    size = a.size + b.size - 1
    na = -(-a.size // half)
    nb = -(-b.size // half)

    def spectra(v, nblocks):
        out = []
        for i in range(nblocks):
            blk = v[i * half : (i + 1) * half]
            out.append(plan.transform(np.concatenate((blk, f.zeros(L - blk.size))), False, counter))
        return out

    A, B = spectra(a, na), spectra(b, nb)
    out = f.zeros(size + L)
    for s_ in range(na + nb - 1):
        acc = None
        for i in range(max(0, s_ - nb + 1), min(na, s_ + 1)):
            term = f.vmul(A[i], B[s_ - i])
            acc = term if acc is None else f.vadd(acc, term)
            if counter is not None:
                counter.mults(L)
                if i > max(0, s_ - nb + 1):
                    counter.adds(L)
        blk = plan.transform(acc, True, counter)
        lo = s_ * half
        out[lo : lo + L] = f.vadd(out[lo : lo + L], blk)
        if counter is not None and s_:
            counter.adds(half)
    return out[:size]


def _ntt_tiled_estimate(la: int, lb: int, L: int) -> float:
    half = L // 2
    na, nb = -(-la // half), -(-lb // half)
    transforms = na + nb + na + nb - 1
    return transforms * half * (L.bit_length() - 1) + na * nb * L


def mul_arrays(field, a, b, backend: MulBackend, counter=None) -> np.ndarray:
    if a.size == 0 or b.size == 0:
        return field.zeros(0)
    if backend.kind == "schoolbook" or min(a.size, b.size) == 1:
        return _schoolbook(field, a, b, counter)
    if backend.kind == "karatsuba":
        return _karatsuba(field, a, b, backend.karatsuba_cutoff, counter)
    if min(a.size, b.size) < backend.ntt_cutoff:
        return _schoolbook(field, a, b, counter)
    if backend.fixed_length is not None:
        L = backend.fixed_length
        if _karatsuba_estimate(a.size, b.size, backend.karatsuba_cutoff) <= _ntt_tiled_estimate(a.size, b.size, L):
            return _karatsuba(field, a, b, backend.karatsuba_cutoff, counter)
        return _ntt_tiled(plan_for(field), a, b, L, counter)
    try:
        return _ntt_product(plan_for(field), a, b, counter)
    except UnsupportedLength:
        if not backend.fallback:
            raise
        return _karatsuba(field, a, b, backend.karatsuba_cutoff, counter)


def mul(P: Poly, Q: Poly, backend: MulBackend | None = None, counter=None) -> Poly:
    """Exact product ``P * Q``."""
    f = P.field
    if backend is None:
        backend = default_backend(f)
    return Poly(f, mul_arrays(f, P.c, Q.c, backend, counter), trusted=True)


# -- middle product ----------------------------------------------------------------------


def middle_product_direct(P: Poly, d: int, R: Poly, n: int, counter=None) -> Poly:
    """``sum_i [sum_{k=0}^{d} P_k R_{d+i-k}] x^i`` for ``0 <= i < n - d``, term by term.

    Accepts ``deg P <= d``; the public :func:`middle_product` insists on equality.
    """
    f = P.field
    width = n - d
    if width <= 0 or P.is_zero() or R.is_zero():
        return Poly.zero(f)
    r = R.padded(n + d)
    acc = f.zeros(width)
    for k in range(P.length):
        pk = P.c[k]
        if pk == 0:
            continue
        acc = f.vadd(acc, f.vscale(pk, r[d - k : d - k + width]))
    if counter is not None:
        counter.mults(P.length * width)
        counter.adds(P.length * width)
    return Poly(f, acc, trusted=True)


def middle_product_ntt(plan: TransformPlan, P: Poly, d: int, R: Poly, n: int, counter=None) -> Poly:
    """``DFT^-1(DFT(P) DFT(R)) quo x^d``, restricted to the first ``n - d`` terms."""
    f = P.field
    width = n - d
    if width <= 0 or P.is_zero() or R.is_zero():
        return Poly.zero(f)
    N = next_power_of_two(n)
    prod = f.vmul(dft(plan, P, N, counter), dft(plan, R, N, counter))
    if counter is not None:
        counter.mults(N)
    full = inverse_dft(plan, prod, counter)
    return full.slice(d, n)


def middle_product(P: Poly, d: int, R: Poly, n: int, backend: MulBackend | None = None, counter=None) -> Poly:
    """Middle product ``P ⋊_d R`` for ``deg P = d < n`` and ``deg R < n``.

    Equals coefficients ``d .. n-1`` of ``P * R``.  The schoolbook backend
    evaluates the double sum directly, Karatsuba slices a full product and
    the NTT backend uses a single cyclic convolution of length >= n.
    """
    if P.deg != d:
        raise DegreeMismatch(f"deg P = {P.deg}, expected {d}")
    if R.length > n:
        raise LengthOverflow(f"deg R = {R.deg} must be < n = {n}")
    if not d < n:
        raise LengthOverflow(f"need d < n, got d={d}, n={n}")
    return _middle(P, d, R, n, backend, counter)


def _middle(P, d, R, n, backend, counter):
    f = P.field
    if backend is None:
        backend = default_backend(f)
    if backend.kind == "schoolbook" or P.length == 1:
        return middle_product_direct(P, d, R, n, counter)
    if backend.kind == "ntt" and min(P.length, n - d) >= backend.ntt_cutoff:
        try:
            return middle_product_ntt(plan_for(f), P, d, R, n, counter)
        except UnsupportedLength:
            if not backend.fallback:
                raise
    prod = mul_arrays(f, P.c, R.c[:n], MulBackend("karatsuba", backend.karatsuba_cutoff) if backend.kind == "ntt" else backend, counter)
    return Poly(f, prod, trusted=True).slice(d, n)


# -- division ----------------------------------------------------------------------------


def _long_division(P: Poly, Q: Poly, counter, remainder: bool = True):
    """Schoolbook division.  Without ``remainder`` only the coefficients that
    feed later quotient terms are updated, and the remainder returned is None."""
    f = P.field
    dq = Q.length - 1
    e = P.length - Q.length
    r = P.c.copy()
    q = f.zeros(e + 1)
    inv_lc = f.inv(Q.lc)
    low = Q.c[:dq]
    mults = adds = 0
    for i in range(e, -1, -1):
        top = r[dq + i]
        mults += 1
        if top == 0:
            continue
        coef = f.mul(int(top) if f.dtype is not object else top, inv_lc)
        q[i] = f.scalar(coef)
        # only positions >= dq influence later quotient coefficients
        lo = i if remainder else max(i, dq)
        if lo < i + dq:
            r[lo : i + dq] = f.vsub(r[lo : i + dq], f.vscale(coef, low[lo - i :]))
            mults += i + dq - lo
            adds += i + dq - lo
    if counter is not None:
        counter.divs(1)
        counter.mults(mults)
        counter.adds(adds)
    return Poly(f, q, trusted=True), (Poly(f, r[:dq], trusted=True) if remainder else None)


def reverse(P: Poly, n: int) -> Poly:
    """``x^(n-1) P(1/x)`` for ``deg P < n``."""
    return Poly(P.field, P.padded(n)[::-1].copy(), trusted=True) if P.length else P


def series_inv(Q: Poly, m: int, counter=None, backend: MulBackend | None = None) -> Poly:
    """Power series inverse of Q modulo ``x^m`` by Newton iteration.

    Each step doubles the precision with ``g <- g - g * ((Q g - 1) quo x^k)``.
    """
    f = Q.field
    if m < 1:
        raise ValueError("precision must be at least 1")
    if Q[0] == 0:
        raise NotInvertible("constant term is zero")
    if backend is None:
        backend = default_backend(f)
    g = Poly(f, [f.inv(Q[0])])
    if counter is not None:
        counter.divs(1)
    k = 1
    while k < m:
        k2 = min(2 * k, m)
        # (Q mod x^k2) * g = 1 + x^k * err  (mod x^k2)
        e = mul(Q.slice(0, k2), g, backend, counter).slice(k, k2)
        corr = mul(g, e, backend, counter).slice(0, k2 - k)
        g = sub(g, corr.shift(k), counter)
        k = k2
    return g.slice(0, m)


def quo_rem(P: Poly, Q: Poly, counter=None, backend: MulBackend | None = None) -> tuple[Poly, Poly]:
    """Euclidean division: ``P = quo * Q + rem`` with ``deg rem < deg Q``.

    Quotients of degree below :data:`NEWTON_DIVISION_THRESHOLD` use long
    division; larger ones go through reversed-series Newton inversion.
    """
    f = P.field
    if Q.is_zero():
        raise DivisionByZero("polynomial division by zero")
    if P.length < Q.length:
        return Poly.zero(f), P
    if Q.length == 1:
        c = f.inv(Q.lc)
        if counter is not None:
            counter.divs(1)
        return scale(c, P, counter), Poly.zero(f)
    e = P.length - Q.length
    if e < NEWTON_DIVISION_THRESHOLD:
        return _long_division(P, Q, counter)
    if backend is None:
        backend = default_backend(f)
    # rev(P) = rev(quo) rev(Q) mod x^(e+1)
    rq = reverse(Q, Q.length).slice(0, e + 1)
    rp = reverse(P, P.length).slice(0, e + 1)
    inv = series_inv(rq, e + 1, counter, backend)
    quo = reverse(mul(rp, inv, backend, counter).slice(0, e + 1), e + 1)
    rem = sub(P, mul(quo, Q, backend, counter), counter).slice(0, Q.length - 1)
    return quo, rem


def quo(P: Poly, Q: Poly, counter=None, backend=None) -> Poly:
    """Quotient only; short quotients skip the remainder updates they don't need."""
    if not Q.is_zero() and Q.length > 1 and 0 <= P.length - Q.length < NEWTON_DIVISION_THRESHOLD:
        return _long_division(P, Q, counter, remainder=False)[0]
    return quo_rem(P, Q, counter, backend)[0]


def rem(P: Poly, Q: Poly, counter=None, backend=None) -> Poly:
    return quo_rem(P, Q, counter, backend)[1]


__all__ = [
    "MulBackend",
    "SCHOOLBOOK",
    "KARATSUBA",
    "NTT",
    "EXACT_NTT",
    "add",
    "convolve",
    "default_backend",
    "middle_product",
    "middle_product_direct",
    "middle_product_ntt",
    "mul",
    "mul_arrays",
    "plan_for",
    "quo",
    "quo_rem",
    "rem",
    "reverse",
    "series_inv",
]
