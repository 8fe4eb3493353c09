"""Angle literals of the form ``5pi/16``, ``-pi/2``, ``2*pi`` or plain radians."""

from __future__ import annotations

import math
import re
from fractions import Fraction

__all__ = ["parse_angle", "format_angle", "pi_fraction"]

_PI_LITERAL = re.compile(
    r"^\s*(?P<sign>[+-]?)\s*(?P<num>\d+)?\s*\*?\s*pi\s*(?:/\s*(?P<den>\d+))?\s*$"
)
_MAX_DENOMINATOR = 4096


def pi_fraction(frac: Fraction) -> float:
    """Radians for ``frac * pi``, computed from the reduced fraction so equal
    fractions always give bit-identical floats."""
    frac = Fraction(frac)
    return math.pi * frac.numerator / frac.denominator


def parse_angle(text: str) -> float:
    """Parse an angle literal into radians.

    Accepts rational multiples of pi (``pi``, ``3pi/4``, ``-5*pi/16``) and
    decimal radians (``0.25``). Raises ``ValueError`` on anything else.
    """
    if not isinstance(text, str):
        raise ValueError(f"angle literal must be a string, got {type(text).__name__}")
    m = _PI_LITERAL.match(text.lower())
    if m:
        num = int(m.group("num")) if m.group("num") else 1
        den = int(m.group("den")) if m.group("den") else 1
        if den == 0:
            raise ValueError(f"zero denominator in angle {text!r}")
        frac = Fraction(num, den)
        if m.group("sign") == "-":
            frac = -frac
        return pi_fraction(frac)
    try:
        value = float(text)
    except ValueError:
        raise ValueError(f"cannot parse angle {text!r}") from None
    if not math.isfinite(value):
        raise ValueError(f"angle must be finite, got {text!r}")
    return value


def format_angle(value: float) -> str:
    """Format radians, preferring an exact ``Npi/D`` literal when one exists."""
    frac = Fraction(value / math.pi).limit_denominator(_MAX_DENOMINATOR)
    if pi_fraction(frac) == value:
        if frac == 0:
            return "0"
        sign = "-" if frac < 0 else ""
        num, den = abs(frac.numerator), frac.denominator
        head = "pi" if num == 1 else f"{num}pi"
        return f"{sign}{head}" if den == 1 else f"{sign}{head}/{den}"
    return format(value, ".17g")
