"""Half-gcd for arbitrary remainder sequences.

Both entry points return the starred product ``B*_{1;k+1}(P, Q)``: the
product of every Bezout factor ``B_i`` whose index ``kappa(i) = d - deg R_i``
is at most k.  As in the normal case, each recursion level only looks at
the top ``2k + 1`` coefficients, so ``deg P = 2k`` inside the helpers.

Notation inside a node: ``M`` is the first-half matrix, ``m = deg M`` and
``delta = h - m`` its degeneracy.  The residues ``(P~, Q~) = M (P, Q)`` are
kept as the slices starting at ``x^m``; ``Pt`` then has degree ``2(k - m)``.
"""

from __future__ import annotations

import numpy as np

from ..arith import KARATSUBA, MulBackend, _middle, default_backend, mul, plan_for, quo_rem
from ..errors import PreconditionViolated
from ..mat2 import Mat2Poly, Mat2Spectrum, mat_double, mat_evaluate, mat_mul, mat_mul_wrapped
from ..ntt import TransformPlan, evaluate_spectrum, inverse_dft, is_power_of_two, next_power_of_two
from ..polynomial import Poly, sub
from .common import (
    DEFAULT_THRESHOLD,
    HalfGcdResult,
    Node,
    check_inputs,
    check_threshold,
    elementary_step,
    full_step,
    general_base,
    middle_step,
    top_window,
)


def _check_k(P: Poly, k: int) -> None:
    if k > P.deg:
        raise PreconditionViolated(f"k = {k} exceeds deg P = {P.deg}")


# -- generic multiplication ---------------------------------------------------------------


def hgcd_general(
    P: Poly,
    Q: Poly,
    k: int,
    backend: MulBackend | None = None,
    counter=None,
    *,
    middle: bool = True,
    threshold: int = DEFAULT_THRESHOLD,
) -> Mat2Poly:
    """``B*_{1;k+1}(P, Q)`` with split ``h = ceil(k/2)``.

    After the first half, a degenerate matrix (``deg M < h``) is completed by
    one extra quotient ``D = P~ quo Q~`` before the second recursive call.
    """
    check_inputs(P, Q, k)
    _check_k(P, k)
    check_threshold(threshold)
    if k == 0:
        return Mat2Poly.identity(P.field)
    if backend is None:
        backend = default_backend(P.field)
    P, Q = top_window(P, Q, k)
    return _general(P, Q, k, backend, counter, middle, threshold)


def _general(P, Q, k, backend, counter, middle, threshold) -> Mat2Poly:
    node = Node(counter, "general-mp" if middle else "general", k)
    f = P.field
    if Q.deg < k:
        node.close(base_case=True)
        return Mat2Poly.identity(f)
    if k <= threshold:
        M = general_base(P, Q, k, backend, node.local)
        node.close(base_case=True)
        return M
    h = (k + 1) // 2
    M = _general(P.slice(2 * (k - h)), Q.slice(2 * (k - h)), h, backend, counter, middle, threshold)
    m = M.deg
    delta = h - m
    w = k - m
    if middle:
        Pt, Qt = middle_step(M, P, Q, k, backend, node.local)
    else:
        Pt, Qt = full_step(M, P, Q, backend, node.local)
    if Qt.deg < w:
        node.close(delta)
        return M
    if delta > 0:
        D, _ = quo_rem(Pt, Qt, node.local, backend)
        e = D.deg
        M = elementary_step(M, D, backend, node.local)
        hp = k - M.deg
        if middle:
            low = _middle(D, e, Qt.slice(0, e + 2 * hp), e + 2 * hp, backend, node.local)
        else:
            low = mul(D, Qt.slice(0, e + 2 * hp), backend, node.local).slice(e, e + 2 * hp)
        Pt, Qt = Qt.slice(e), sub(Pt.slice(e, e + 2 * hp), low, node.local)
    else:
        hp = w
    if hp == 0:
        node.close(delta)
        return M
    Mt = _general(Pt, Qt, hp, backend, counter, middle, threshold)
    out = mat_mul(Mt, M, backend, node.local)
    node.close(delta)
    return out


# -- binary FFT ------------------------------------------------------------------------------


def hgcd_general_fft(
    P: Poly,
    Q: Poly,
    k: int,
    ell: int | None = None,
    plan: TransformPlan | None = None,
    counter=None,
    *,
    threshold: int = DEFAULT_THRESHOLD,
) -> HalfGcdResult:
    """``B*_{1;k+1}(P, Q)`` and its length-``ell`` spectrum.

    ``ell`` defaults to the smallest power of two >= k.  Every transform
    issued by one recursion node has length ``ell``, except the half-length
    transforms inside FFT doubling of cached child spectra.
    """
    check_inputs(P, Q, k)
    _check_k(P, k)
    check_threshold(threshold)
    if ell is None:
        ell = next_power_of_two(k)
    if not is_power_of_two(ell) or ell < k:
        raise PreconditionViolated(f"ell = {ell} must be a power of two >= k = {k}")
    if plan is None:
        plan = plan_for(P.field)
    plan.check_length(ell)
    if k == 0:
        return HalfGcdResult(Mat2Poly.identity(P.field), Mat2Spectrum.identity(P.field, ell))
    P, Q = top_window(P, Q, k)
    M, S = _gfft(P, Q, k, ell, plan, counter, threshold)
    return HalfGcdResult(M, S)


def _jm_spectrum(f, D_hat: np.ndarray, S: Mat2Spectrum, counter) -> Mat2Spectrum:
    """Spectrum of ``[[0, 1], [1, -D]] M`` from those of D and M."""
    if counter is not None:
        counter.mults(2 * S.n)
        counter.adds(2 * S.n)
    return Mat2Spectrum(
        S.n,
        S.s21,
        S.s22,
        f.vsub(S.s11, f.vmul(D_hat, S.s21)),
        f.vsub(S.s12, f.vmul(D_hat, S.s22)),
    )


def _middle_cached(plan, D_hat: np.ndarray, e: int, R: Poly, width: int, counter) -> Poly:
    """``D ⋊_e R`` (``width`` outputs) reusing the length-ell spectrum of D.

    A cyclic product of length ell yields ``ell - e`` uncorrupted outputs, so
    the result is assembled from chunks of that many coefficients.
    """
    f = plan.field
    ell = D_hat.size
    chunk = ell - e
    parts = []
    for start in range(0, width, chunk):
        cnt = min(chunk, width - start)
        spec = plan.transform(R.slice(start, start + e + cnt).padded(ell), False, counter)
        prod = f.vmul(D_hat, spec)
        if counter is not None:
            counter.mults(ell)
        full = inverse_dft(plan, prod, counter)
        parts.append(full.slice(e, e + cnt).padded(cnt))
    return Poly(f, np.concatenate(parts), trusted=True)


def _gfft(P, Q, k, ell, plan, counter, threshold):
    node = Node(counter, "general-fft", k, ell)
    f = P.field
    if Q.deg < k:
        node.close(base_case=True)
        return Mat2Poly.identity(f), Mat2Spectrum.identity(f, ell)
    # scalar work (quotients, base cases) stays transform-free so that every
    # transform at this level has length ell, or ell/2 inside doubling
    backend = MulBackend("ntt", fixed_length=ell) if ell >= 2 else KARATSUBA
    if k <= threshold:
        M = general_base(P, Q, k, backend, node.local)
        S = mat_evaluate(plan, M, ell, node.local)
        node.close(base_case=True)
        return M, S
    if 2 * k <= ell:
        M, S_half = _gfft(P, Q, k, ell // 2, plan, counter, threshold)
        S = mat_double(plan, M, S_half, node.local)
        node.close()
        return M, S
    h = ell // 2
    M, S_half = _gfft(P.slice(2 * (k - h)), Q.slice(2 * (k - h)), h, h, plan, counter, threshold)
    M_hat = mat_double(plan, M, S_half, node.local)
    m = M.deg
    delta = h - m
    w = k - m
    Pt, Qt = middle_step(M, P, Q, k, backend, node.local, M_hat)
    if Qt.deg < w:
        node.close(delta)
        return M, M_hat
    lead = M.coeff(m)
    deg_M = m
    if delta > 0:
        D, _ = quo_rem(Pt, Qt, node.local, backend)
        e = D.deg
        D_hat = evaluate_spectrum(plan, D, ell, node.local)
        M_hat = _jm_spectrum(f, D_hat, M_hat, node.local)
        # leading matrix of J M is J_e M_m = [[0, 0], [0, -lc D]] M_m
        c = f.neg(D.lc)
        lead = (f.zero, f.zero, f.mul(c, lead[2]), f.mul(c, lead[3]))
        if node.local is not None:
            node.local.mults(2)
        deg_M = m + e
        hp = k - deg_M
        if hp > 0:
            low = _middle_cached(plan, D_hat, e, Qt, 2 * hp, node.local)
            Pt, Qt = Qt.slice(e), sub(Pt.slice(e, e + 2 * hp), low, node.local)
        M = None  # only the spectrum and the leading matrix are kept up to date
    else:
        hp = w
    if hp == 0:
        Mt = Mat2Poly.identity(f)
        Mt_hat = Mat2Spectrum.identity(f, ell)
    else:
        Mt, St_half = _gfft(Pt, Qt, hp, h, plan, counter, threshold)
        Mt_hat = mat_double(plan, Mt, St_half, node.local)
    out, S = mat_mul_wrapped(plan, Mt_hat, M_hat, Mt.coeff(ell - deg_M), lead, ell, node.local)
    node.close(delta)
    return out, S
