import numpy as np
import pytest

from halfgcd.arith import quo_rem
from halfgcd.errors import AbnormalSequence, PreconditionViolated, Undefined
from halfgcd.euclid import remainder_sequence
from halfgcd.field import QQ, PrimeField
from halfgcd.gcd import ALGORITHMS, GcdConfig, gcd, half_gcd, xgcd
from halfgcd.generators import abnormal_instance, normal_instance, random_poly
from halfgcd.polynomial import Poly

x = Poly.x(QQ)


def divides(G, P):
    return P.is_zero() or quo_rem(P, G)[1].is_zero()


def test_examples():
    P = Poly(QQ, [1, 1]) * Poly(QQ, [1, 0, 1])
    Q = Poly(QQ, [1, 1]) * Poly(QQ, [2, 1])
    assert gcd(P, Q) == Poly(QQ, [1, 1])
    R = Poly(QQ, [4, 0, 2])
    assert gcd(R, Poly.zero(QQ)) == R.monic()
    r = xgcd(R, Poly.zero(QQ))
    assert (r.g, r.u, r.v) == (R.monic(), Poly.constant(QQ, QQ(1) / 2), Poly.zero(QQ))
    r = xgcd(Poly.monomial(QQ, 3), Poly(QQ, [1, 0, 1]))
    assert r.g == Poly.constant(QQ, 1)
    assert r.u == x and r.v == Poly(QQ, [1, 0, -1])


def test_prime_field_example(F):
    assert gcd(Poly(F, [-1, 0, 1]), Poly(F, [-1, 1])) == Poly(F, [-1, 1])


def test_gcd_of_zeros(F):
    with pytest.raises(Undefined):
        gcd(Poly.zero(F), Poly.zero(F))
    assert gcd(Poly.zero(F), Poly(F, [2, 4])) == Poly(F, [F.inv(2), 1])


@pytest.mark.parametrize("alg", [None, *ALGORITHMS])
def test_xgcd_identity(F, rng, alg):
    for _ in range(6):
        d = int(rng.integers(1, 150))
        P, Q = abnormal_instance(F, d, rng)
        r = xgcd(P, Q, GcdConfig(alg, threshold=int(rng.integers(1, 10))))
        assert r.u * P + r.v * Q == r.g
        assert r.g.lc == 1 and divides(r.g, P) and divides(r.g, Q)
        assert r.g == remainder_sequence(P, Q).gcd()
        a, b = r.matrix.apply(P, Q)
        assert b.is_zero()


def test_orderings(F, rng):
    for _ in range(10):
        P = random_poly(F, int(rng.integers(0, 40)), rng)
        Q = random_poly(F, int(rng.integers(0, 40)), rng)
        G = random_poly(F, 3, rng)
        P, Q = P * G, Q * G
        g1, g2 = gcd(P, Q), gcd(Q, P)
        assert g1 == g2 and divides(G, g1)
        r = xgcd(Q, P)
        assert r.u * Q + r.v * P == r.g
    P = random_poly(F, 10, rng)
    Q = random_poly(F, 10, rng)
    r = xgcd(P, Q)
    assert r.u * P + r.v * Q == r.g


def test_common_factor_survives(F, rng):
    for _ in range(10):
        A, B = random_poly(F, 30, rng), random_poly(F, 25, rng)
        G = random_poly(F, int(rng.integers(0, 12)), rng)
        assert divides(G, gcd(A * G, B * G))


def test_fallback_from_normal_algorithms(F, rng):
    P, Q = abnormal_instance(F, 60, rng, gcd_deg=5)
    want = remainder_sequence(P, Q).gcd()
    for alg in ("normal-fft", "normal-any", "normal-basic", "normal-basic-mp"):
        assert gcd(P, Q, GcdConfig(alg, threshold=1)) == want
        # normal-fft also refuses k = deg P = 60, which is not a power of two
        with pytest.raises(PreconditionViolated if alg == "normal-fft" else AbnormalSequence):
            gcd(P, Q, GcdConfig(alg, threshold=1, fallback=False))


def test_normal_algorithms_on_normal_input(F, rng):
    P, Q = normal_instance(F, 64, rng)
    want = remainder_sequence(P, Q).gcd()
    for alg in ALGORITHMS:
        assert gcd(P, Q, GcdConfig(alg, threshold=4, fallback=False)) == want


def test_rationals_and_small_fields(rng):
    P, Q = abnormal_instance(QQ, 25, rng, gcd_deg=2)
    r = xgcd(P, Q)
    assert r.u * P + r.v * Q == r.g and r.g.deg >= 2
    F = PrimeField(17)  # too few roots of unity for general-fft at this size
    P, Q = abnormal_instance(F, 80, rng, gcd_deg=1)
    r = xgcd(P, Q)
    assert r.u * P + r.v * Q == r.g
    assert r.g == remainder_sequence(P, Q).gcd()


def test_unknown_algorithm():
    with pytest.raises(ValueError):
        GcdConfig("fastest")


def test_half_gcd_dispatch(F, rng):
    P, Q = normal_instance(F, 40, rng)
    mats = {alg: half_gcd(P, Q, 16, alg, 2) for alg in ALGORITHMS}
    assert len({repr(M) for M in mats.values()}) == 1
