"""Exact rational helpers: parsing, formatting, rising factorials."""
from __future__ import annotations

import re
from fractions import Fraction
from math import comb, factorial

_RATIONAL = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (optional sign); decimals are rejected."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    m = _RATIONAL.match(str(text))
    if not m:
        raise ValueError(f"not an exact rational: {text!r} (expected p or p/q)")
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(m.group(1)), den)


def format_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def pochhammer(x, m: int) -> Fraction:
    """Rising factorial x(x+1)...(x+m-1); equals 1 for m = 0."""
    if m < 0:
        raise ValueError("pochhammer needs m >= 0")
    x = Fraction(x)
    out = Fraction(1)
    for j in range(m):
        out *= x + j
        if not out:
            break
    return out


def multinomial(k: int, s: int, t: int) -> int:
    """k! / ((k-s-t)! s! t!)."""
    if s < 0 or t < 0 or s + t > k:
        return 0
    return factorial(k) // (factorial(k - s - t) * factorial(s) * factorial(t))


def binomial(k: int, s: int) -> int:
    return comb(k, s)


def is_nonneg_integer(x) -> bool:
    x = Fraction(x)
    return x.denominator == 1 and x >= 0
