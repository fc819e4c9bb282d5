"""Pieces shared by the half-gcd algorithms: base cases, block assembly, tracing."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..arith import MulBackend, mul, quo, quo_rem
from ..counter import CostCounter, NodeRecord
from ..errors import AbnormalSequence, PreconditionViolated
from ..mat2 import Mat2Poly, Mat2Spectrum, _mat_middle
from ..polynomial import Poly, sub

DEFAULT_THRESHOLD = 32


@dataclass
class HalfGcdResult:
    """A half-gcd matrix, optionally with its spectrum at the algorithm's transform length."""

    matrix: Mat2Poly
    spectrum: Mat2Spectrum | None = None

    def __iter__(self):
        yield self.matrix
        yield self.spectrum


class Node:
    """Local tally for one recursion node.

    Children are handed the caller's counter directly, so the node's own
    counter only sees work issued at this level; it is merged upward (and
    recorded in ``counter.trace`` when tracing) by :meth:`close`.
    """

    __slots__ = ("parent", "local", "algorithm", "k", "length")

    def __init__(self, counter: CostCounter | None, algorithm: str, k: int, length: int = 0):
        self.parent = counter
        self.local = CostCounter() if counter is not None else None
        self.algorithm = algorithm
        self.k = k
        self.length = length

    def close(self, degeneracy: int = 0, base_case: bool = False) -> None:
        if self.parent is None:
            return
        if self.parent.trace is not None:
            self.parent.trace.append(
                NodeRecord(
                    self.algorithm,
                    self.k,
                    self.length,
                    dict(self.local.forward),
                    dict(self.local.inverse),
                    degeneracy,
                    base_case,
                )
            )
        self.parent.merge(self.local)


def check_threshold(threshold: int) -> int:
    if threshold < 1:
        raise ValueError("threshold must be at least 1")
    return threshold


def check_inputs(P: Poly, Q: Poly, k: int) -> None:
    if P.is_zero():
        raise PreconditionViolated("P must be nonzero")
    if not Q.deg < P.deg:
        raise PreconditionViolated(f"need deg Q < deg P, got {Q.deg} and {P.deg}")
    if k < 0:
        raise PreconditionViolated("k must be nonnegative")


def top_window(P: Poly, Q: Poly, k: int) -> tuple[Poly, Poly]:
    """``(P_{d-2k;}, Q_{d-2k;})``: only these coefficients matter for k steps.

    Pads with zeros (multiplication by a power of x) when d < 2k, so the
    result always has ``deg P = 2k``.
    """
    s = P.deg - 2 * k
    return P.slice(s), Q.slice(s)


def elementary_step(B: Mat2Poly | None, q: Poly, backend: MulBackend | None, counter) -> Mat2Poly:
    """``[[0, 1], [1, -q]] B``; ``B = None`` stands for the identity."""
    if B is None:
        return Mat2Poly.elementary(q)
    return Mat2Poly(
        B.m21,
        B.m22,
        sub(B.m11, mul(q, B.m21, backend, counter), counter),
        sub(B.m12, mul(q, B.m22, backend, counter), counter),
    )


def normal_base(P: Poly, Q: Poly, k: int, backend, counter) -> Mat2Poly:
    """k Euclid steps on ``deg P = 2k``, insisting on degree-one quotients."""
    B = None
    R0, R1 = P, Q
    for step in range(k):
        if R1.is_zero() or R1.deg != R0.deg - 1:
            raise AbnormalSequence(f"remainder degree {R1.deg} after degree {R0.deg}")
        if step == k - 1:
            # the last remainder is never used
            q, r = quo(R0, R1, counter, backend), None
        else:
            q, r = quo_rem(R0, R1, counter, backend)
        B = elementary_step(B, q, backend, counter)
        R0, R1 = R1, r
    return B


def general_base(P: Poly, Q: Poly, k: int, backend, counter) -> Mat2Poly:
    """Product of the Bezout factors ``B_i`` with ``kappa(i) <= k`` on ``deg P = 2k``."""
    d = P.deg
    B = None
    R0, R1 = P, Q
    while not R1.is_zero() and d - R1.deg <= k:
        q, r = quo_rem(R0, R1, counter, backend)
        B = elementary_step(B, q, backend, counter)
        R0, R1 = R1, r
    return Mat2Poly.identity(P.field) if B is None else B


def recover_top_term(M: Mat2Poly, P: Poly, Q: Poly, position: int, counter=None):
    """Coefficient of ``x^position`` in ``M11 P + M12 Q``, in O(deg M) operations."""
    f = P.field
    m = max(M.m11.length, M.m12.length)
    if m == 0:
        return f.zero
    # P_{position-m+1 .. position} reversed lines up with M_{0 .. m-1}
    p = P.slice(position - m + 1, position + 1).padded(m)[::-1]
    q = Q.slice(position - m + 1, position + 1).padded(m)[::-1]
    a = f.vmul(M.m11.padded(m), p)
    b = f.vmul(M.m12.padded(m), q)
    if counter is not None:
        # entries shorter than m contribute only their actual terms
        n = min(M.m11.length, m) + min(M.m12.length, m)
        counter.mults(n)
        counter.adds(n - 1)
    if f.dtype is object:
        return f(sum(a) + sum(b))
    # each term is < p < 2^32, so the sums cannot overflow 64 bits for m < 2^31
    return (int(a.sum()) + int(b.sum())) % f.p


def concat(field, parts: list[tuple[Poly, int]], tail=None) -> Poly:
    """Stack polynomials as fixed-width blocks, optionally followed by one coefficient."""
    arrays = [P.padded(w)[:w] for P, w in parts]
    if tail is not None:
        arrays.append(field.array([tail]))
    return Poly(field, np.concatenate(arrays) if arrays else field.zeros(0), trusted=True)


def block_rhs(P: Poly, Q: Poly, k: int, m: int) -> Mat2Poly:
    """Right-hand matrix of the blocked middle product.

    With ``deg P = 2k``, ``deg M = m`` and ``w = k - m``, column c holds the
    length-k windows ``P_{cw; cw+k}`` and ``Q_{cw; cw+k}``.
    """
    w = k - m
    return Mat2Poly(P.slice(0, k), P.slice(w, w + k), Q.slice(0, k), Q.slice(w, w + k))


def middle_step(M: Mat2Poly, P: Poly, Q: Poly, k: int, backend, counter, M_hat=None) -> tuple[Poly, Poly]:
    """``(P~_{m;}, Q~_{m;})`` for ``(P~, Q~) = M (P, Q)``, ``deg P = 2k``, ``m = deg M``.

    The 2(k - m) low coefficients of each come from one 2x2 middle product
    ``M ⋊_m RHS`` (block columns of width ``w = k - m``); the single top
    coefficient of P~ is recovered directly.  The returned P~ slice has
    degree ``2w`` when M is a genuine prefix of the remainder sequence.
    """
    f = P.field
    m = M.deg
    w = k - m
    out = _mat_middle(M, m, block_rhs(P, Q, k, m), k, backend, counter, M_hat)
    top = recover_top_term(M, P, Q, 2 * k - m, counter)
    Pt = concat(f, [(out.m11, w), (out.m12, w)], top)
    Qt = concat(f, [(out.m21, w), (out.m22, w)])
    return Pt, Qt


def full_step(M: Mat2Poly, P: Poly, Q: Poly, backend, counter) -> tuple[Poly, Poly]:
    """Same as :func:`middle_step` through two full products per row."""
    A, B = M.apply(P, Q, backend, counter)
    m = M.deg
    return A.slice(m), B.slice(m)
