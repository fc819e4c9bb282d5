"""Quadratic reference Euclid: remainder sequences, Bezout products, re-indexation.

Everything here is the straightforward textbook computation and serves as
the ground truth against which the half-gcd algorithms are checked.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .arith import MulBackend, mul, quo_rem
from .errors import PreconditionViolated
from .mat2 import Mat2Poly, mat_mul
from .polynomial import DEG_ZERO, Poly

MAX_ORACLE_DEGREE = 2**16


@dataclass
class RemainderSequence:
    """``R_0 = P, R_1 = Q, R_{i+1} = R_{i-1} rem R_i``.

    ``quotients[i-1]`` is ``R_{i-1} quo R_i``, so ``B_i`` is
    ``[[0, 1], [1, -quotients[i-1]]]``.  When built with a stopping degree
    the tail is cut off and ``complete`` is False.
    """

    remainders: list[Poly]
    quotients: list[Poly]
    complete: bool = True

    @property
    def d(self) -> int:
        return self.remainders[0].deg

    @property
    def length(self) -> int:
        """l, with ``R_l = 0`` for a complete sequence."""
        return len(self.remainders) - 1

    def bezout(self, i: int) -> Mat2Poly:
        if not 1 <= i <= len(self.quotients):
            raise IndexError(f"B_{i} out of range")
        return Mat2Poly.elementary(self.quotients[i - 1])

    def gcd(self) -> Poly:
        """Monic last nonzero remainder."""
        if not self.complete:
            raise PreconditionViolated("sequence was truncated")
        return self.remainders[-2].monic()


def remainder_sequence(P: Poly, Q: Poly, stop_below: int | None = None, counter=None) -> RemainderSequence:
    """Full remainder sequence of (P, Q), ``deg P > deg Q``.

    With ``stop_below`` the sequence ends at the first remainder of degree
    less than that bound (that remainder is kept).
    """
    if not P.deg > Q.deg:
        raise PreconditionViolated(f"need deg P > deg Q, got {P.deg} and {Q.deg}")
    if P.deg > MAX_ORACLE_DEGREE:
        raise PreconditionViolated(f"oracle refuses degree {P.deg} > {MAX_ORACLE_DEGREE}")
    R = [P, Q]
    qs = []
    complete = True
    while not R[-1].is_zero():
        if stop_below is not None and R[-1].deg < stop_below:
            complete = False
            break
        q, r = quo_rem(R[-2], R[-1], counter, MulBackend("schoolbook"))
        qs.append(q)
        R.append(r)
    return RemainderSequence(R, qs, complete)


_LEAF = 32


def product_range(factors: list[Mat2Poly], field, backend: MulBackend | None = None) -> Mat2Poly:
    """``factors[-1] ... factors[0]`` by binary splitting.

    Short runs are multiplied out one factor at a time; an elementary factor
    ``[[0, 1], [1, -q]]`` only shifts rows and costs two products by q.
    """
    if len(factors) <= _LEAF:
        out = Mat2Poly.identity(field)
        one = Poly.constant(field, 1)
        for B in factors:
            if B.m11.is_zero() and B.m12 == one and B.m21 == one:
                out = Mat2Poly(out.m21, out.m22, out.m11 + mul(B.m22, out.m21, backend), out.m12 + mul(B.m22, out.m22, backend))
            else:
                out = mat_mul(B, out, backend)
        return out
    mid = len(factors) // 2
    return mat_mul(product_range(factors[mid:], field, backend), product_range(factors[:mid], field, backend), backend)


def bezout_product(seq: RemainderSequence, i: int, j: int, backend: MulBackend | None = None) -> Mat2Poly:
    """``B_{i;j} = B_{j-1} ... B_i`` (identity when i = j)."""
    top = len(seq.quotients) + 1
    if not 1 <= i <= j <= top:
        raise IndexError(f"B_{{{i};{j}}} out of range 1..{top}")
    return product_range([seq.bezout(m) for m in range(i, j)], seq.remainders[0].field, backend)


def is_normal(seq: RemainderSequence) -> bool:
    """Every quotient has degree exactly one (equivalently l = d + 1)."""
    if not seq.complete:
        return all(q.deg == 1 for q in seq.quotients)
    return seq.length == seq.d + 1


def kappa(seq: RemainderSequence) -> list[int]:
    """``kappa(0) = 0``, ``kappa(i) = d - deg R_i``, ``kappa(l) = d + 1``."""
    d = seq.d
    out = [0]
    for R in seq.remainders[1:]:
        out.append(d + 1 if R.is_zero() else d - R.deg)
    return out


@dataclass
class StarredSequence:
    """Re-indexed sequence with ``deg R*_k <= d - k``.

    ``R_star[k]`` for ``1 <= k <= d + 1`` and ``B_star[k]`` for
    ``1 <= k <= d`` (index 0 unused).
    """

    d: int
    kappa: list[int]
    R_star: list[Poly] = field(repr=False)
    B_star: list[Mat2Poly] = field(repr=False)

    def product(self, i: int, j: int, backend: MulBackend | None = None) -> Mat2Poly:
        """``B*_{i;j} = B*_{j-1} ... B*_i``; identity factors are skipped."""
        if not 1 <= i <= j <= self.d + 1:
            raise IndexError(f"B*_{{{i};{j}}} out of range")
        f = self.R_star[1].field
        factors = [B for B in self.B_star[i:j] if not B.is_identity()]
        return product_range(factors, f, backend)


def reindex(seq: RemainderSequence) -> StarredSequence:
    if not seq.complete:
        raise PreconditionViolated("re-indexation needs the complete sequence")
    d = seq.d
    kap = kappa(seq)
    ell = seq.length
    f = seq.remainders[0].field
    ident = Mat2Poly.identity(f)
    R_star: list[Poly] = [seq.remainders[0]] + [None] * (d + 1)  # type: ignore[list-item]
    B_star: list[Mat2Poly] = [ident] * (d + 1)
    for i in range(ell):
        lo, hi = kap[i], kap[i + 1]
        if i >= 1:
            R_star[lo] = seq.remainders[i]
            B_star[lo] = seq.bezout(i)
        for k in range(lo + 1, hi):
            R_star[k] = seq.remainders[i + 1]
    R_star[d + 1] = seq.remainders[ell]
    return StarredSequence(d, kap, R_star, B_star)


def starred_product(P: Poly, Q: Poly, k: int, backend: MulBackend | None = None) -> Mat2Poly:
    """``B*_{1;k+1}(P, Q)``: the product of every ``B_i`` with ``kappa(i) <= k``.

    Only runs Euclid as far as needed (remainders of degree >= d - k).
    """
    d = P.deg
    if Q.is_zero() or Q.deg < d - k:
        return Mat2Poly.identity(P.field)
    seq = remainder_sequence(P, Q, stop_below=d - k)
    factors = []
    for i, q in enumerate(seq.quotients, start=1):
        if seq.remainders[i].is_zero() or d - seq.remainders[i].deg > k:
            break
        factors.append(Mat2Poly.elementary(q))
    return product_range(factors, P.field, backend)


def normal_product(P: Poly, Q: Poly, k: int, backend: MulBackend | None = None) -> Mat2Poly:
    """``B_{1;k+1}(P, Q)`` for a sequence whose first k quotients exist."""
    seq = remainder_sequence(P, Q, stop_below=P.deg - k)
    if len(seq.quotients) < k:
        raise PreconditionViolated(f"sequence has only {len(seq.quotients)} steps")
    return product_range([seq.bezout(i) for i in range(1, k + 1)], P.field, backend)


def degree_or_none(P: Poly):
    return None if P.deg == DEG_ZERO else P.deg
