"""Random test and benchmark instances with controlled remainder sequences.

Both generators build the remainder sequence backwards: pick the last
nonzero remainder G and the quotients, then set ``R_{i-1} = q_i R_i + R_{i+1}``.
Every (P, Q) arises from exactly one such choice, so uniformly random
quotients (nonzero leading coefficients) and a uniformly random G give
uniformly random pairs with that quotient-degree pattern.
"""

from __future__ import annotations

import numpy as np

from .arith import SCHOOLBOOK, mul
from .polynomial import Poly, add


def random_poly(field, deg: int, rng: np.random.Generator, monic: bool = False) -> Poly:
    """Uniform polynomial of exact degree ``deg`` (``deg < 0`` gives zero)."""
    if deg < 0:
        return Poly.zero(field)
    if field.dtype is object and not hasattr(field, "p"):
        vals = [int(v) for v in rng.integers(-9, 10, size=deg + 1)]
        if vals[-1] == 0:
            vals[-1] = 1
    else:
        p = field.p
        vals = [int(v) for v in rng.integers(0, p, size=deg + 1, dtype=np.uint64 if p < 2**63 else object)]
        vals[-1] = int(rng.integers(1, p))
    if monic:
        vals[-1] = 1
    return Poly(field, vals)


def from_quotients(G: Poly, quotients: list[Poly]) -> tuple[Poly, Poly]:
    """(P, Q) whose remainder sequence has the given quotients and gcd G.

    ``quotients[i]`` is ``R_i quo R_{i+1}``; the last one must have degree >= 1
    unless it is the only one.
    """
    f = G.field
    hi, lo = G, Poly.zero(f)  # (R_i, R_{i+1}) walking upward
    for q in reversed(quotients):
        hi, lo = add(mul(q, hi, SCHOOLBOOK if q.length < 4 else None), lo), hi
    return hi, lo


def normal_instance(field, d: int, rng: np.random.Generator) -> tuple[Poly, Poly]:
    """Uniform pair with ``deg P = d``, ``deg Q = d - 1`` and a normal sequence."""
    G = random_poly(field, 0, rng)
    qs = [random_poly(field, 1, rng) for _ in range(d)]
    return from_quotients(G, qs)


def quotient_degrees(d: int, rng: np.random.Generator, gcd_deg: int = 0, large_prob: float = 0.02) -> list[int]:
    """Mix of degree-1 and degree-2 quotients with the occasional large one."""
    total = d - gcd_deg
    degs = []
    while total > 0:
        r = rng.random()
        if r < large_prob:
            e = int(rng.integers(3, max(4, min(total, max(4, d // 4)) + 1)))
        elif r < 0.55:
            e = 1
        else:
            e = 2
        e = min(e, total)
        degs.append(e)
        total -= e
    return degs


def abnormal_instance(field, d: int, rng: np.random.Generator, gcd_deg: int | None = None) -> tuple[Poly, Poly]:
    """Pair with ``deg P = d`` and a planted pattern of quotient degrees."""
    if gcd_deg is None:
        gcd_deg = int(rng.integers(0, max(1, d // 8) + 1)) if rng.random() < 0.3 else 0
    gcd_deg = min(gcd_deg, d - 1)
    G = random_poly(field, gcd_deg, rng)
    qs = [random_poly(field, e, rng) for e in quotient_degrees(d, rng, gcd_deg)]
    return from_quotients(G, qs)
