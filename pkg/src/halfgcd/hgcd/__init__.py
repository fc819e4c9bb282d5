"""Half-gcd algorithms: normal-case and general-case, generic and binary-FFT."""

from .common import DEFAULT_THRESHOLD, HalfGcdResult, recover_top_term
from .general import hgcd_general, hgcd_general_fft
from .normal import hgcd_normal_any, hgcd_normal_basic, hgcd_normal_fft

__all__ = [
    "DEFAULT_THRESHOLD",
    "HalfGcdResult",
    "recover_top_term",
    "hgcd_general",
    "hgcd_general_fft",
    "hgcd_normal_any",
    "hgcd_normal_basic",
    "hgcd_normal_fft",
]
