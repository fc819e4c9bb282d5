"""Plain-text polynomial files.

Layout::

    p=3221225473        <- field: "p=<prime>" or "Q"
    1                   <- coefficients, low degree first
    0
    1
                        <- blank line ends a polynomial
    5
    2

Prime-field coefficients are decimal integers (reduced mod p on input);
rational ones are integers or ``a/b``.  The zero polynomial is written as a
single ``0`` line.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import HalfGcdError
from .field import QQ, is_prime, prime_field
from .polynomial import Poly

_INT = re.compile(r"[+-]?\d+")
_FRAC = re.compile(r"[+-]?\d+(/\d+)?")


class PolyFileError(HalfGcdError, ValueError):
    """Malformed polynomial file."""


class UnsupportedField(HalfGcdError, ValueError):
    """The field line names something other than Q or F_p for an odd prime p."""


def parse_field_line(line: str):
    line = line.strip()
    if line == "Q":
        return QQ
    m = re.fullmatch(r"p\s*=\s*(\d+)", line)
    if m is None:
        raise UnsupportedField(f"unsupported field spec {line!r} (expected 'p=<prime>' or 'Q')")
    p = int(m.group(1))
    if p <= 2 or not is_prime(p):
        raise UnsupportedField(f"p = {p} is not an odd prime")
    return prime_field(p)


def _coefficient(field, token: str, lineno: int):
    pattern = _FRAC if field is QQ else _INT
    if not pattern.fullmatch(token):
        raise PolyFileError(f"line {lineno}: bad coefficient {token!r}")
    if field is QQ:
        try:
            return Fraction(token)
        except ZeroDivisionError:
            raise PolyFileError(f"line {lineno}: zero denominator in {token!r}") from None
    return field(int(token))


def parse(text: str):
    """``(field, [Poly, ...])`` from file contents."""
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise PolyFileError("empty file: the first line must give the field")
    field = parse_field_line(lines[0])
    polys, block = [], []
    for lineno, raw in enumerate(lines[1:], start=2):
        tok = raw.strip()
        if not tok:
            if block:
                polys.append(Poly(field, block))
                block = []
            continue
        block.append(_coefficient(field, tok, lineno))
    if block:
        polys.append(Poly(field, block))
    return field, polys


def read(path: str):
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def emit(field, polys) -> str:
    """Inverse of :func:`parse` for canonical (trimmed, reduced) polynomials."""
    out = [field.spec]
    for i, P in enumerate(polys):
        if i:
            out.append("")
        if P.is_zero():
            out.append("0")
        else:
            out.extend(field.to_str(c) for c in P.coeffs())
    return "\n".join(out) + "\n"
