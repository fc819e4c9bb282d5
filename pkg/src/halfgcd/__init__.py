"""Fast polynomial gcd over prime fields (and Q) by the half-gcd method, with
binary-FFT variants that reuse transforms across recursion levels."""

from .counter import CostCounter
from .errors import (
    AbnormalSequence,
    DivisionByZero,
    HalfGcdError,
    PreconditionViolated,
    Undefined,
    UnsupportedLength,
)
from .field import BENCH_PRIME, QQ, PrimeField, RationalField, prime_field
from .gcd import ALGORITHMS, GcdConfig, XgcdResult, gcd, half_gcd, xgcd
from .hgcd import (
    HalfGcdResult,
    hgcd_general,
    hgcd_general_fft,
    hgcd_normal_any,
    hgcd_normal_basic,
    hgcd_normal_fft,
)
from .mat2 import Mat2Poly
from .polynomial import Poly

__version__ = "0.1.0"
