"""Radix-2 number-theoretic transforms with natural-order input and output.

``dft(plan, P, n)[i] == P(w_n^i)`` where ``w_n`` is the field's principal
n-th root of unity.  Internally the transform is an iterative
decimation-in-time butterfly network over a bit-reversed copy of the input;
the permutation never leaks out of this module.

Cost accounting: one multiplication and two additions per butterfly, i.e.
``(n/2) log2 n`` multiplications per transform of length n, forward or
inverse.  The ``1/n`` normalisation of the inverse transform is charged to
the same budget (a radix-2 network has ``n - 1`` trivial twiddles).
"""

from __future__ import annotations

import numpy as np

from .errors import LengthMismatch, LengthOverflow, UnsupportedLength
from .polynomial import Poly


def is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def next_power_of_two(n: int) -> int:
    return 1 if n <= 1 else 1 << (n - 1).bit_length()


def log2(n: int) -> int:
    return n.bit_length() - 1


def butterfly_mults(n: int) -> int:
    return (n // 2) * log2(n)


class TransformPlan:
    """Root-of-unity tables for transforms of every length 2^0 .. 2^t.

    Tables are built lazily per length and cached; the plan is otherwise
    immutable and can be shared between threads and recursion levels.
    """

    def __init__(self, field):
        self.field = field
        self.max_log = field.two_adicity
        self._twiddles: dict[tuple[int, bool], np.ndarray] = {}
        self._bitrev: dict[int, np.ndarray] = {}
        self._inv_n: dict[int, int] = {}

    def __repr__(self):
        return f"TransformPlan({self.field!r})"

    @property
    def max_length(self) -> int:
        return 2**self.max_log

    def check_length(self, n: int) -> None:
        if not is_power_of_two(n):
            raise UnsupportedLength(f"transform length {n} is not a power of two")
        if log2(n) > self.max_log:
            raise UnsupportedLength(f"transform length {n} exceeds 2^{self.max_log}")

    def root(self, n: int, inverse: bool = False) -> int:
        w = self.field.root_of_unity(log2(n))
        return self.field.inv(w) if inverse else w

    def twiddles(self, m: int, inverse: bool = False) -> np.ndarray:
        """``[w_{2m}^j for j < m]`` (or the inverse powers)."""
        key = (m, inverse)
        tw = self._twiddles.get(key)
        if tw is None:
            f = self.field
            w = self.root(2 * m, inverse)
            powers = [f.one] * m
            for j in range(1, m):
                powers[j] = f.mul(powers[j - 1], w)
            tw = f.array(powers)
            tw.flags.writeable = False
            self._twiddles[key] = tw
        return tw

    def bit_reversal(self, n: int) -> np.ndarray:
        perm = self._bitrev.get(n)
        if perm is None:
            bits = log2(n)
            idx = np.arange(n)
            perm = np.zeros(n, dtype=np.int64)
            for b in range(bits):
                perm |= ((idx >> b) & 1) << (bits - 1 - b)
            self._bitrev[n] = perm
        return perm

    def inv_n(self, n: int) -> int:
        v = self._inv_n.get(n)
        if v is None:
            v = self._inv_n[n] = self.field.inv(self.field(n))
        return v

    def corrupt_twiddles(self) -> None:
        """Fault-injection hook for self-test: poison the length-4 tables."""
        f = self.field
        bad = f.array([f.one, f.add(self.root(4), f.one)])
        self._twiddles[(2, False)] = bad
        self._twiddles[(2, True)] = bad

    # -- raw vector transforms -----------------------------------------------
    def transform(self, a: np.ndarray, inverse: bool = False, counter=None) -> np.ndarray:
        """Transform a length-n coefficient (or value) vector; returns a new array."""
        n = a.size
        self.check_length(n)
        f = self.field
        a = a[self.bit_reversal(n)]
        m = 1
        while m < n:
            w = self.twiddles(m, inverse)
            blocks = a.reshape(-1, 2 * m)
            u = blocks[:, :m]
            v = f.vmul(blocks[:, m:], w)
            hi = f.vsub(u, v)
            blocks[:, :m] = f.vadd(u, v)
            blocks[:, m:] = hi
            m *= 2
        if inverse and n > 1:
            a = f.vscale(self.inv_n(n), a)
        if counter is not None:
            counter.transform(n, inverse)
            counter.mults(butterfly_mults(n))
            counter.adds(2 * butterfly_mults(n))
        return a


def dft(plan: TransformPlan, P: Poly, n: int, counter=None) -> np.ndarray:
    """Evaluations ``(P(w_n^0), ..., P(w_n^(n-1)))``."""
    plan.check_length(n)
    if P.length > n:
        raise LengthOverflow(f"deg P = {P.deg} does not fit in length {n}")
    return plan.transform(P.padded(n), False, counter)


def inverse_dft(plan: TransformPlan, V: np.ndarray, counter=None) -> Poly:
    """The unique polynomial of degree < len(V) with the given evaluations."""
    return Poly(plan.field, plan.transform(V, True, counter), trusted=True)


def fft_double(plan: TransformPlan, P: Poly, half: np.ndarray, counter=None) -> np.ndarray:
    """Extend ``half = dft(P, n/2)`` to ``dft(P, n)`` with one half-length transform.

    ``half`` may be the evaluations of a P of degree exactly n/2 (that is,
    the transform of ``P rem (x^(n/2) - 1)``); only ``deg P < n`` is needed.
    The odd-indexed values are the transform of ``P(w_n x) rem (x^(n/2) - 1)``.
    """
    m = half.size
    n = 2 * m
    plan.check_length(n)
    if P.length > n:
        raise LengthMismatch(f"deg P = {P.deg} too large to double a length-{m} spectrum")
    f = plan.field
    c = P.padded(n)
    folded = f.vsub(c[:m], c[m:])  # w_n^m = -1
    twisted = f.vmul(folded, plan.twiddles(m))
    if counter is not None:
        counter.adds(min(max(P.length - m, 0), m))
        counter.mults(max(min(P.length, m) - 1, 0))
    odd = plan.transform(twisted, False, counter)
    out = np.empty(n, dtype=half.dtype)
    out[0::2] = half
    out[1::2] = odd
    return out


def fold(P: Poly, n: int, counter=None) -> Poly:
    """``P rem (x^n - 1)``."""
    if P.length <= n:
        return P
    f = P.field
    c = P.padded(((P.length + n - 1) // n) * n).reshape(-1, n)
    acc = c[0].copy()
    for row in c[1:]:
        acc = f.vadd(acc, row)
    if counter is not None:
        counter.adds(P.length - n)
    return Poly(f, acc, trusted=True)


def evaluate_spectrum(plan: TransformPlan, P: Poly, n: int, counter=None) -> np.ndarray:
    """Evaluations of P at the n-th roots of unity for P of any degree."""
    return dft(plan, fold(P, n, counter), n, counter)
