"""Coefficient fields.

Two fields are provided:

* :class:`PrimeField` -- ``F_p`` for a prime ``p = s*2^t + 1``.  Elements are
  plain Python ints in ``[0, p)``; coefficient vectors are numpy arrays of
  dtype ``uint64`` when ``p < 2^32`` (products then fit in 64 bits) and of
  dtype ``object`` otherwise.
* :class:`RationalField` -- exact rationals backed by :class:`fractions.Fraction`,
  used for hand-checkable fixtures and as an oracle at small degree.

Both expose the same scalar and vector interface so the polynomial layer
never needs to know which one it is working over.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DivisionByZero, HalfGcdError, UnsupportedLength

BENCH_PRIME = 3 * 2**30 + 1

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Miller-Rabin with fixed bases; deterministic for n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


class PrimeField:
    """The prime field F_p together with its power-of-two roots of unity.

    Primality and the two-adic decomposition ``p - 1 = s * 2^t`` are verified
    at construction; ``omega_max`` is ``g^s`` for the smallest generator ``g``
    of the multiplicative group, so it has order exactly ``2^t``.  A different
    ``omega_max`` may be supplied; its order is checked.
    """

    is_exact_rational = False

    def __init__(self, p: int, omega_max: int | None = None):
        p = int(p)
        if p <= 2 or not is_prime(p):
            raise HalfGcdError(f"{p} is not an odd prime")
        self.p = p
        t, s = 0, p - 1
        while s % 2 == 0:
            s //= 2
            t += 1
        self.two_adicity = t
        self.cofactor = s
        self.dtype = np.uint64 if p < 2**32 else object
        self.generator = self._find_generator()
        self.omega_max = pow(self.generator, s, p) if omega_max is None else int(omega_max) % p
        if pow(self.omega_max, 2 ** (t - 1), p) != p - 1:
            raise HalfGcdError(f"omega_max = {self.omega_max} does not have order 2^{t}")
        self._roots: dict[int, int] = {}

    def _find_generator(self) -> int:
        p = self.p
        factors = _prime_factors(self.cofactor)
        if 2 not in factors:
            factors.append(2)
        for g in range(2, p):
            if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
                return g
        raise HalfGcdError("no generator found")  # pragma: no cover

    # -- identity -----------------------------------------------------------
    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p and other.omega_max == self.omega_max

    def __hash__(self):
        return hash(("F", self.p, self.omega_max))

    @property
    def spec(self) -> str:
        return f"p={self.p}"

    # -- scalars -------------------------------------------------------------
    zero = 0
    one = 1

    def __call__(self, x) -> int:
        if isinstance(x, Fraction):
            return self.div(x.numerator, x.denominator)
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def pow(self, a, e: int):
        return pow(a, e, self.p)

    def to_str(self, a) -> str:
        return str(int(a))

    # -- vectors -------------------------------------------------------------
    def array(self, values) -> np.ndarray:
        if self.dtype is object:
            return np.array([int(v) % self.p for v in values], dtype=object)
        values = list(values)
        if values and isinstance(values[0], Fraction):
            values = [self(v) for v in values]
        return np.array([int(v) % self.p for v in values], dtype=np.uint64)

    def zeros(self, n: int) -> np.ndarray:
        if self.dtype is object:
            return np.array([0] * n, dtype=object)
        return np.zeros(n, dtype=np.uint64)

    def scalar(self, c):
        """Coerce a canonical element for broadcasting against vectors."""
        return np.uint64(c) if self.dtype is not object else int(c)

    def vadd(self, a, b):
        return (a + b) % self.p

    def vsub(self, a, b):
        return (a + (self.p - b)) % self.p

    def vneg(self, a):
        return (self.p - a) % self.p

    def vmul(self, a, b):
        return (a * b) % self.p

    def vscale(self, c, a):
        return (a * self.scalar(c)) % self.p

    # -- roots of unity --------------------------------------------------------
    def root_of_unity(self, k: int) -> int:
        """Principal 2^k-th root of unity, ``omega_max^(2^(t-k))``.

        Roots for different k are compatible: ``root(k-1) == root(k)^2``.
        """
        if k < 0 or k > self.two_adicity:
            raise UnsupportedLength(f"2^{k} exceeds two-adicity {self.two_adicity} of F_{self.p}")
        w = self._roots.get(k)
        if w is None:
            w = pow(self.omega_max, 2 ** (self.two_adicity - k), self.p)
            self._roots[k] = w
        return w

    @property
    def max_transform_length(self) -> int:
        return 2**self.two_adicity


class RationalField:
    """Exact rationals.  Only the square roots of unity exist, so transforms stop at length 2."""

    is_exact_rational = True
    dtype = object
    two_adicity = 1
    zero = Fraction(0)
    one = Fraction(1)

    def __repr__(self):
        return "RationalField()"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    @property
    def spec(self) -> str:
        return "Q"

    def __call__(self, x) -> Fraction:
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return 1 / Fraction(a)

    def div(self, a, b):
        return Fraction(a) * self.inv(b)

    def pow(self, a, e: int):
        return Fraction(a) ** e

    def to_str(self, a) -> str:
        a = Fraction(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def array(self, values) -> np.ndarray:
        return np.array([Fraction(v) for v in values] or [], dtype=object)

    def zeros(self, n: int) -> np.ndarray:
        return np.array([Fraction(0)] * n, dtype=object)

    def scalar(self, c):
        return Fraction(c)

    def vadd(self, a, b):
        return a + b

    def vsub(self, a, b):
        return a - b

    def vneg(self, a):
        return -a

    def vmul(self, a, b):
        return a * b

    def vscale(self, c, a):
        return a * Fraction(c)

    def root_of_unity(self, k: int):
        if k == 0:
            return self.one
        if k == 1:
            return Fraction(-1)
        raise UnsupportedLength("the rationals only contain square roots of unity")

    @property
    def max_transform_length(self) -> int:
        return 2


QQ = RationalField()


@lru_cache(maxsize=None)
def prime_field(p: int = BENCH_PRIME) -> PrimeField:
    """Shared, cached field instance (construction verifies primality)."""
    return PrimeField(p)


def parse_field(spec: str):
    """Field from its textual spec: ``"Q"`` or ``"p=<prime>"``."""
    spec = spec.strip()
    if spec == "Q":
        return QQ
    if spec.startswith("p="):
        return prime_field(int(spec[2:]))
    raise ValueError(f"unknown field spec {spec!r}")
