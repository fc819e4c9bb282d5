import numpy as np
import pytest

from halfgcd.arith import SCHOOLBOOK, mul, plan_for
from halfgcd.counter import CostCounter
from halfgcd.errors import LengthOverflow, UnsupportedLength
from halfgcd.field import PrimeField
from halfgcd.generators import random_poly
from halfgcd.ntt import TransformPlan, butterfly_mults, dft, evaluate_spectrum, fft_double, fold, inverse_dft
from halfgcd.polynomial import Poly


def naive_dft(F, P, n):
    w = F.root_of_unity(n.bit_length() - 1)
    return [P(F.pow(w, i)) for i in range(n)]


def test_small_examples():
    F5 = PrimeField(5)
    plan = TransformPlan(F5)
    V = dft(plan, Poly(F5, [1, 2]), 2)
    assert list(map(int, V)) == [3, 4]
    assert inverse_dft(plan, F5.array([3, 4])) == Poly(F5, [1, 2])
    assert list(map(int, fft_double(plan, Poly(F5, [1, 2]), F5.array([3])))) == [3, 4]

    F17 = PrimeField(17, omega_max=6)
    assert list(map(int, dft(TransformPlan(F17), Poly.x(F17), 4))) == [1, 4, 16, 13]


def test_constants(F, plan):
    c = Poly.constant(F, 7)
    assert list(map(int, dft(plan, c, 4))) == [7] * 4
    assert inverse_dft(plan, F.array([9] * 8)) == Poly.constant(F, 9)
    half = dft(plan, c, 4)
    assert list(map(int, fft_double(plan, c, half))) == [7] * 8


@pytest.mark.parametrize("n", [1, 2, 4, 8, 16])
def test_natural_order_against_direct_evaluation(F, plan, rng, n):
    P = random_poly(F, n - 1, rng)
    assert list(map(int, dft(plan, P, n))) == naive_dft(F, P, n)


def test_round_trip(F, plan, rng):
    for _ in range(40):
        n = 2 ** int(rng.integers(0, 9))
        P = random_poly(F, int(rng.integers(-1, n)), rng)
        assert inverse_dft(plan, dft(plan, P, n)) == P


@pytest.mark.parametrize("n", [2, 4, 8, 16, 64, 256])
def test_doubling_matches_direct(F, plan, rng, n):
    for deg in (n // 2 - 1, n // 2, n - 1):
        P = random_poly(F, deg, rng)
        full = fft_double(plan, P, evaluate_spectrum(plan, P, n // 2))
        assert np.array_equal(full, dft(plan, P, n))


def test_convolution_theorem(F, plan, rng):
    for _ in range(30):
        a, b = (random_poly(F, int(rng.integers(0, 64)), rng) for _ in range(2))
        n = 128
        prod = inverse_dft(plan, F.vmul(dft(plan, a, n), dft(plan, b, n)))
        assert prod == mul(a, b, SCHOOLBOOK)


def test_linearity(F, plan, rng):
    a, b = random_poly(F, 30, rng), random_poly(F, 20, rng)
    s, t = 12345, F.p - 3
    lhs = dft(plan, s * a + t * b, 32)
    rhs = F.vadd(F.vscale(s, dft(plan, a, 32)), F.vscale(t, dft(plan, b, 32)))
    assert np.array_equal(lhs, rhs)


def test_fold_and_evaluate(F, plan, rng):
    P = random_poly(F, 40, rng)
    f = fold(P, 8)
    assert f.deg < 8
    assert np.array_equal(evaluate_spectrum(plan, P, 8), np.array(naive_dft(F, P, 8), dtype=np.uint64))


def test_errors(F, plan):
    with pytest.raises(LengthOverflow):
        dft(plan, Poly.monomial(F, 4), 4)
    with pytest.raises(UnsupportedLength):
        dft(plan, Poly.x(F), 2**31)
    with pytest.raises(UnsupportedLength):
        dft(plan, Poly.x(F), 6)
    small = TransformPlan(PrimeField(17))
    with pytest.raises(UnsupportedLength):
        small.check_length(32)


def test_counter_events(F, plan, rng):
    P = random_poly(F, 15, rng)
    c = CostCounter()
    V = dft(plan, P, 16, c)
    assert c.transforms == {16: (1, 0)}
    assert c.field_mults == butterfly_mults(16) == 32
    assert c.field_adds == 64
    inverse_dft(plan, V, c)
    assert c.transforms == {16: (1, 1)}
    c = CostCounter()
    fft_double(plan, P, evaluate_spectrum(plan, P, 8), c)
    assert c.transforms == {8: (1, 0)}  # one half-length transform per doubling


def test_twiddle_tables_compatible(F, plan):
    # w_m = w_n^(n/m) across stored lengths
    for m in (2, 8, 64):
        big = plan.twiddles(2 * m)
        assert np.array_equal(big[::2], plan.twiddles(m))


def test_corrupted_plan_is_detected(rng):
    F = PrimeField(97)
    plan = TransformPlan(F)
    P = random_poly(F, 7, rng)
    good = dft(plan, P, 8)
    plan.corrupt_twiddles()
    assert not np.array_equal(dft(plan, P, 8), good)
    assert plan_for(F) is not plan
