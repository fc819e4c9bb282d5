"""Half-gcd for normal remainder sequences (every quotient of degree one).

All three entry points return ``B_{1;k+1}(P, Q)`` and raise
:class:`AbnormalSequence` as soon as a quotient of another degree shows up.
Internally every recursion level works on the top ``2k + 1`` coefficients,
so ``deg P = 2k`` on entry to each private helper.
"""

from __future__ import annotations

from ..arith import KARATSUBA, MulBackend, default_backend, plan_for
from ..errors import AbnormalSequence, PreconditionViolated
from ..mat2 import Mat2Poly, mat_double, mat_dft, mat_evaluate, mat_mul, mat_mul_wrapped
from ..ntt import TransformPlan, is_power_of_two
from ..polynomial import Poly
from .common import (
    DEFAULT_THRESHOLD,
    HalfGcdResult,
    Node,
    check_inputs,
    check_threshold,
    full_step,
    middle_step,
    normal_base,
    top_window,
)


def _require(cond: bool, what: str) -> None:
    if not cond:
        raise AbnormalSequence(what)


# -- generic multiplication ---------------------------------------------------------------


def hgcd_normal_basic(
    P: Poly,
    Q: Poly,
    k: int,
    backend: MulBackend | None = None,
    counter=None,
    *,
    middle: bool = True,
    threshold: int = DEFAULT_THRESHOLD,
) -> Mat2Poly:
    """Divide-and-conquer ``B_{1;k+1}`` with split ``h = ceil(k/2)``.

    With ``middle`` set, the residues after the first half come from a 2x2
    middle product plus one recovered top coefficient instead of full
    products.
    """
    check_inputs(P, Q, k)
    check_threshold(threshold)
    if k == 0:
        return Mat2Poly.identity(P.field)
    if backend is None:
        backend = default_backend(P.field)
    P, Q = top_window(P, Q, k)
    return _basic(P, Q, k, backend, counter, middle, threshold)


def _basic(P, Q, k, backend, counter, middle, threshold) -> Mat2Poly:
    node = Node(counter, "normal-basic-mp" if middle else "normal-basic", k)
    if k <= threshold:
        M = normal_base(P, Q, k, backend, node.local)
        node.close(base_case=True)
        return M
    h = (k + 1) // 2
    w = k - h
    M = _basic(P.slice(2 * (k - h)), Q.slice(2 * (k - h)), h, backend, counter, middle, threshold)
    _require(M.deg == h, f"first half has degree {M.deg}, expected {h}")
    if middle:
        Pt, Qt = middle_step(M, P, Q, k, backend, node.local)
    else:
        Pt, Qt = full_step(M, P, Q, backend, node.local)
    _require(Pt.deg == 2 * w, "leading coefficient vanished")
    Mt = _basic(Pt, Qt, w, backend, counter, middle, threshold)
    out = mat_mul(Mt, M, backend, node.local)
    node.close()
    return out


# -- binary FFT, power-of-two k ------------------------------------------------------------


def hgcd_normal_fft(
    P: Poly,
    Q: Poly,
    k: int,
    plan: TransformPlan | None = None,
    counter=None,
    *,
    threshold: int = DEFAULT_THRESHOLD,
) -> HalfGcdResult:
    """``B_{1;k+1}`` and its length-k spectrum, k a power of two.

    Every transform has length k or k/2: the halves come back with cached
    length-k/2 spectra that are doubled, the residue update is one matrix
    middle product of length k, and the final product is taken modulo
    ``x^k - 1`` with its wrapped leading term added back.
    """
    check_inputs(P, Q, k)
    check_threshold(threshold)
    if not is_power_of_two(k):
        raise PreconditionViolated(f"k = {k} is not a power of two")
    if plan is None:
        plan = plan_for(P.field)
    plan.check_length(k)
    P, Q = top_window(P, Q, k)
    M, S = _fft(P, Q, k, plan, counter, threshold)
    return HalfGcdResult(M, S)


def _fft(P, Q, k, plan, counter, threshold):
    node = Node(counter, "normal-fft", k, k)
    backend = KARATSUBA  # keeps every transform at length k or k/2
    if k <= threshold:
        M = normal_base(P, Q, k, backend, node.local)
        S = mat_evaluate(plan, M, k, node.local)
        node.close(base_case=True)
        return M, S
    h = k // 2
    M, S_half = _fft(P.slice(2 * h), Q.slice(2 * h), h, plan, counter, threshold)
    _require(M.deg == h, f"first half has degree {M.deg}, expected {h}")
    M_hat = mat_double(plan, M, S_half, node.local)
    Pt, Qt = middle_step(M, P, Q, k, backend, node.local, M_hat)
    _require(Pt.deg == 2 * h, "leading coefficient vanished")
    Mt, St_half = _fft(Pt, Qt, h, plan, counter, threshold)
    Mt_hat = mat_double(plan, Mt, St_half, node.local)
    out, S = mat_mul_wrapped(plan, Mt_hat, M_hat, Mt.coeff(h), M.coeff(h), k, node.local)
    node.close()
    return out, S


# -- arbitrary k -----------------------------------------------------------------------------


def hgcd_normal_any(
    P: Poly,
    Q: Poly,
    k: int,
    plan: TransformPlan | None = None,
    counter=None,
    *,
    threshold: int = DEFAULT_THRESHOLD,
) -> Mat2Poly:
    """``B_{1;k+1}`` for any k, peeling off the largest power of two each time."""
    check_inputs(P, Q, k)
    check_threshold(threshold)
    if k == 0:
        return Mat2Poly.identity(P.field)
    if plan is None:
        plan = plan_for(P.field)
    plan.check_length(1 << (k.bit_length() - 1))
    P, Q = top_window(P, Q, k)
    return _any(P, Q, k, plan, counter, threshold)


def _any(P, Q, k, plan, counter, threshold) -> Mat2Poly:
    node = Node(counter, "normal-any", k)
    h = 1 << (k.bit_length() - 1)
    w = k - h
    M, S_half = _fft(P.slice(2 * w), Q.slice(2 * w), h, plan, counter, threshold)
    if w == 0:
        node.close()
        return M
    _require(M.deg == h, f"first block has degree {M.deg}, expected {h}")
    # k < 2h, so length 2h fits both the middle product and the final product
    n = 2 * h
    plan.check_length(n)
    M_hat = mat_double(plan, M, S_half, node.local)
    Pt, Qt = middle_step(M, P, Q, k, default_backend(P.field), node.local, M_hat)
    _require(Pt.deg == 2 * w, "leading coefficient vanished")
    Mt = _any(Pt, Qt, w, plan, counter, threshold)
    Mt_hat = mat_dft(plan, Mt, n, node.local)
    out, _ = mat_mul_wrapped(plan, Mt_hat, M_hat, Mt.coeff(n - h), M.coeff(h), n, node.local)
    node.close()
    return out
