"""gcd and extended gcd through a single half-gcd call with k = deg P."""

from __future__ import annotations

from dataclasses import dataclass

from .arith import default_backend, plan_for, quo
from .errors import AbnormalSequence, PreconditionViolated, Undefined, UnsupportedLength
from .field import PrimeField
from .hgcd import (
    DEFAULT_THRESHOLD,
    hgcd_general,
    hgcd_general_fft,
    hgcd_normal_any,
    hgcd_normal_basic,
    hgcd_normal_fft,
)
from .mat2 import Mat2Poly, mat_mul
from .ntt import is_power_of_two, next_power_of_two
from .polynomial import Poly, sub

ALGORITHMS = ("general-fft", "general", "general-basic", "normal-fft", "normal-any", "normal-basic", "normal-basic-mp")
NORMAL_ALGORITHMS = ("normal-fft", "normal-any", "normal-basic", "normal-basic-mp")


@dataclass(frozen=True)
class GcdConfig:
    """``algorithm=None`` picks general-fft when the field has the transform
    lengths, otherwise the generic general algorithm.  Normal-only algorithms
    fall back to the general one on abnormal input unless ``fallback`` is off."""

    algorithm: str | None = None
    threshold: int = DEFAULT_THRESHOLD
    fallback: bool = True

    def __post_init__(self):
        if self.algorithm is not None and self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}; choose from {', '.join(ALGORITHMS)}")


@dataclass
class XgcdResult:
    """``u P + v Q = g`` with g monic; ``matrix`` is ``B*_{1;d+1}`` including any leading step."""

    g: Poly
    u: Poly
    v: Poly
    matrix: Mat2Poly | None = None


def _auto(field, k: int) -> str:
    if isinstance(field, PrimeField) and next_power_of_two(max(k, 1)) <= field.max_transform_length:
        return "general-fft"
    return "general"


def half_gcd(P: Poly, Q: Poly, k: int, algorithm: str | None = None, threshold: int = DEFAULT_THRESHOLD, counter=None) -> Mat2Poly:
    """Dispatch to one of the half-gcd algorithms by name."""
    f = P.field
    alg = algorithm or _auto(f, k)
    if alg == "general-fft":
        return hgcd_general_fft(P, Q, k, counter=counter, threshold=threshold).matrix
    if alg in ("general", "general-basic"):
        return hgcd_general(P, Q, k, default_backend(f), counter, middle=alg == "general", threshold=threshold)
    if alg == "normal-fft":
        if not is_power_of_two(k):
            raise PreconditionViolated(f"normal-fft needs k a power of two, got {k}; use normal-any")
        return hgcd_normal_fft(P, Q, k, counter=counter, threshold=threshold).matrix
    if alg == "normal-any":
        return hgcd_normal_any(P, Q, k, counter=counter, threshold=threshold)
    if alg in ("normal-basic", "normal-basic-mp"):
        return hgcd_normal_basic(P, Q, k, default_backend(f), counter, middle=alg == "normal-basic-mp", threshold=threshold)
    raise ValueError(f"unknown algorithm {alg!r}")


def _full_matrix(P: Poly, Q: Poly, config: GcdConfig, counter=None) -> tuple[Mat2Poly, Poly, Poly]:
    """Matrix B with ``B (P, Q)^T = (c g, 0)^T``, plus the ordered pair it acts on."""
    f = P.field
    if P.is_zero() and Q.is_zero():
        raise Undefined("gcd(0, 0) is undefined")
    lead = None
    if Q.deg >= P.deg:
        # one division restores deg Q < deg P
        q = quo(P, Q)
        lead = Mat2Poly.elementary(q)
        P, Q = Q, sub(P, q * Q)
    if Q.is_zero():
        B = Mat2Poly.identity(f)
    else:
        k = P.deg
        alg = config.algorithm or _auto(f, k)
        try:
            B = half_gcd(P, Q, k, alg, config.threshold, counter)
        except (AbnormalSequence, PreconditionViolated, UnsupportedLength):
            if alg not in NORMAL_ALGORITHMS or not config.fallback:
                raise
            B = half_gcd(P, Q, k, _auto(f, k), config.threshold, counter)
    if lead is not None:
        B = mat_mul(B, lead)
    return B, P, Q


def xgcd(P: Poly, Q: Poly, config: GcdConfig | None = None, counter=None) -> XgcdResult:
    """Monic gcd g with cofactors: ``u P + v Q = g``."""
    config = config or GcdConfig()
    f = P.field
    B, _, _ = _full_matrix(P, Q, config, counter)
    r = B.m11 * P + B.m12 * Q
    c = f.inv(r.lc)
    return XgcdResult(r.monic(), B.m11 * c, B.m12 * c, B)


def gcd(P: Poly, Q: Poly, config: GcdConfig | None = None, counter=None) -> Poly:
    return xgcd(P, Q, config, counter).g
