"""Built-in fixture suite behind ``halfgcd selftest``.

Each fixture is a small function that raises on failure.  Fixtures carry
tags so that ``--filter`` can pick a subset (a filter matches a tag or a
substring of the fixture name).
"""

from __future__ import annotations

import traceback
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .arith import EXACT_NTT, KARATSUBA, SCHOOLBOOK, middle_product, middle_product_direct, mul, plan_for, quo_rem
from .counter import CostCounter
from .euclid import kappa, remainder_sequence, starred_product
from .field import QQ, PrimeField, prime_field
from .gcd import ALGORITHMS, GcdConfig, gcd, half_gcd, xgcd
from .generators import abnormal_instance, normal_instance, random_poly
from .mat2 import Mat2Poly, mat_dft, mat_middle_direct, mat_middle_product, mat_mul, mat_mul_wrapped
from .ntt import dft, evaluate_spectrum, fft_double, inverse_dft
from .polynomial import Poly


@dataclass(frozen=True)
class Fixture:
    name: str
    tags: tuple[str, ...]
    fn: Callable[[], None]

    def matches(self, pattern: str | None) -> bool:
        return pattern is None or pattern in self.tags or pattern in self.name


@dataclass
class Outcome:
    name: str
    ok: bool
    detail: str = ""


FIXTURES: list[Fixture] = []


def fixture(*tags):
    def register(fn):
        FIXTURES.append(Fixture(fn.__name__.removeprefix("fx_"), tags, fn))
        return fn

    return register


def _check(cond, msg="check failed"):
    if not cond:
        raise AssertionError(msg)


def _F():
    return prime_field()


# -- fields and transforms ------------------------------------------------------------------


@fixture("field")
def fx_small_field_roots():
    F = PrimeField(17, omega_max=6)
    w = F.root_of_unity(2)
    _check(w == 4 and F.mul(w, w) == 16, f"omega_4 = {w}")
    F5 = PrimeField(5)
    _check(F5.root_of_unity(1) == 4 and F5.inv(3) == 2)


@fixture("field")
def fx_bench_prime_root():
    F = _F()
    w = F.root_of_unity(30)
    _check(F.pow(w, 2**29) == F.p - 1)


@fixture("ntt")
def fx_dft_small():
    F = PrimeField(17, omega_max=6)
    V = dft(plan_for(F), Poly(F, [0, 1]), 4)
    _check(list(map(int, V)) == [1, 4, 16, 13], f"got {list(V)}")


@fixture("ntt")
def fx_dft_round_trip():
    F = _F()
    plan = plan_for(F)
    rng = np.random.default_rng(1)
    for n in (4, 16, 64):
        P = random_poly(F, n - 1, rng)
        _check(inverse_dft(plan, dft(plan, P, n)) == P, f"round trip failed at n = {n}")


@fixture("ntt")
def fx_fft_doubling():
    F = _F()
    plan = plan_for(F)
    rng = np.random.default_rng(2)
    for n in (4, 8, 32):
        P = random_poly(F, n - 1, rng)
        full = fft_double(plan, P, evaluate_spectrum(plan, P, n // 2))
        _check(np.array_equal(full, dft(plan, P, n)), f"doubling differs at n = {n}")


@fixture("ntt", "poly")
def fx_convolution_theorem():
    F = _F()
    rng = np.random.default_rng(3)
    for d in (3, 17, 60):
        P, Q = random_poly(F, d, rng), random_poly(F, d + 2, rng)
        _check(mul(P, Q, EXACT_NTT) == mul(P, Q, SCHOOLBOOK), f"NTT product differs at degree {d}")


# -- polynomial arithmetic ------------------------------------------------------------------


@fixture("poly")
def fx_karatsuba_matches_schoolbook():
    F = _F()
    rng = np.random.default_rng(4)
    P, Q = random_poly(F, 70, rng), random_poly(F, 45, rng)
    _check(mul(P, Q, KARATSUBA) == mul(P, Q, SCHOOLBOOK))


@fixture("poly")
def fx_middle_product_example():
    F = _F()
    out = middle_product(Poly(F, [1, 2]), 1, Poly(F, [3, 4, 5]), 3)
    _check(out == Poly(F, [10, 13]), f"got {out}")
    rng = np.random.default_rng(5)
    P, R = random_poly(F, 9, rng), random_poly(F, 40, rng)
    _check(middle_product(P, 9, R, 41, EXACT_NTT) == middle_product_direct(P, 9, R, 41))


@fixture("poly")
def fx_division():
    q, r = quo_rem(Poly(QQ, [0, 0, 0, 1]), Poly(QQ, [1, 0, 1]))
    _check(q == Poly(QQ, [0, 1]) and r == Poly(QQ, [0, -1]))
    F = _F()
    rng = np.random.default_rng(6)
    P, Q = random_poly(F, 150, rng), random_poly(F, 40, rng)
    q, r = quo_rem(P, Q)
    _check(q * Q + r == P and r.deg < Q.deg)


# -- matrices -------------------------------------------------------------------------------


@fixture("mat2")
def fx_bezout_product_example():
    x = Poly.x(QQ)
    M = mat_mul(Mat2Poly.elementary(-x), Mat2Poly.elementary(x))
    _check(M == Mat2Poly(Poly(QQ, [1]), Poly(QQ, [0, -1]), x, Poly(QQ, [1, 0, -1])), f"got {M}")


@fixture("mat2")
def fx_wrapped_product_example():
    F = _F()
    plan = plan_for(F)
    x = Poly.x(F)
    M = Mat2Poly(Poly.zero(F), Poly(F, [1]), Poly(F, [1]), x)
    S = mat_dft(plan, M, 2)
    out, _ = mat_mul_wrapped(plan, S, S, M.coeff(1), M.coeff(1), 2)
    _check(out == mat_mul(M, M), f"got {out}")


@fixture("mat2")
def fx_matrix_middle_product():
    F = _F()
    rng = np.random.default_rng(7)
    d, n = 12, 40
    M = Mat2Poly(*(random_poly(F, d, rng) for _ in range(4)))
    R = Mat2Poly(*(random_poly(F, n - 1, rng) for _ in range(4)))
    _check(mat_middle_product(M, d, R, n, EXACT_NTT) == mat_middle_direct(M, d, R, n))


# -- reference Euclid -----------------------------------------------------------------------


@fixture("euclid")
def fx_reindex_examples():
    x3 = Poly.monomial(QQ, 3)
    _check(kappa(remainder_sequence(x3, Poly(QQ, [1, 0, 1]))) == [0, 1, 2, 3, 4])
    _check(kappa(remainder_sequence(x3, Poly.x(QQ))) == [0, 2, 4])
    B = starred_product(x3, Poly.x(QQ), 3)
    _check(B == Mat2Poly.elementary(Poly.monomial(QQ, 2)), f"got {B}")


# -- half-gcd -------------------------------------------------------------------------------


@fixture("hgcd")
def fx_hgcd_normal_oracle():
    F = _F()
    rng = np.random.default_rng(8)
    for d in (9, 24, 50):
        P, Q = normal_instance(F, d, rng)
        for k in (1, d // 4, d // 2):
            want = starred_product(P, Q, k)
            for alg in ("normal-basic", "normal-basic-mp", "normal-any"):
                for th in (1, 3):
                    got = half_gcd(P, Q, k, alg, th)
                    _check(got == want, f"{alg} threshold {th}, d = {d}, k = {k}")
        k = 1 << ((d // 2).bit_length() - 1)
        _check(half_gcd(P, Q, k, "normal-fft", 1) == starred_product(P, Q, k), f"normal-fft, d = {d}")


@fixture("hgcd")
def fx_hgcd_general_oracle():
    F = _F()
    rng = np.random.default_rng(9)
    for d in (7, 20, 45, 64):
        P, Q = abnormal_instance(F, d, rng)
        for k in sorted({1, d // 3, d // 2, d}):
            want = starred_product(P, Q, k)
            for alg in ("general", "general-basic", "general-fft"):
                for th in (1, 4):
                    _check(half_gcd(P, Q, k, alg, th) == want, f"{alg} threshold {th}, d = {d}, k = {k}")


@fixture("hgcd", "counts")
def fx_transform_counts():
    F = _F()
    k = 64
    P, Q = normal_instance(F, 2 * k, np.random.default_rng(10))
    c = CostCounter(trace=[])
    half_gcd(P, Q, k, "normal-fft", 1, c)
    for node in c.trace:
        if node.base_case:
            continue
        _check(node.transforms_at(node.k) == 12 and node.transforms_at(node.k // 2) == 8, f"node at k = {node.k}: {node.forward} / {node.inverse}")


# -- gcd ------------------------------------------------------------------------------------


@fixture("gcd")
def fx_gcd_examples():
    F = _F()
    g = gcd(Poly(F, [-1, 0, 1]), Poly(F, [-1, 1]))
    _check(g == Poly(F, [-1, 1]), f"got {g}")
    P = Poly(F, [3, 0, 2])
    _check(gcd(P, Poly.zero(F)) == P.monic())


@fixture("gcd")
def fx_xgcd_identity():
    F = _F()
    rng = np.random.default_rng(11)
    for alg in ALGORITHMS:
        P, Q = abnormal_instance(F, 40, rng, gcd_deg=3)
        r = xgcd(P, Q, GcdConfig(alg, threshold=2))
        _check(r.u * P + r.v * Q == r.g and r.g.lc == 1 and r.g.deg >= 3, f"{alg}")


# -- runner ---------------------------------------------------------------------------------


def run(pattern: str | None = None, inject_fault: bool = False) -> list[Outcome]:
    """Run the fixtures matching ``pattern``.

    ``inject_fault`` poisons the bench field's twiddle tables first (to show
    the suite catches it); the cached plan is discarded again afterwards.
    """
    chosen = [fx for fx in FIXTURES if fx.matches(pattern)]
    if inject_fault:
        plan_for(_F()).corrupt_twiddles()
    out = []
    try:
        for fx in chosen:
            try:
                fx.fn()
                out.append(Outcome(fx.name, True))
            except Exception as exc:  # noqa: BLE001 - every failure is reported
                detail = f"{type(exc).__name__}: {exc}" if str(exc) else traceback.format_exc(limit=2).strip()
                out.append(Outcome(fx.name, False, detail))
    finally:
        if inject_fault:
            plan_for.cache_clear()
    return out
