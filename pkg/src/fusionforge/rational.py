"""Small helpers for exact rationals and roots of unity."""
from __future__ import annotations

import cmath
import math
from fractions import Fraction

_QUARTER = {
    Fraction(0): 1 + 0j,
    Fraction(1, 4): 1j,
    Fraction(1, 2): -1 + 0j,
    Fraction(3, 4): -1j,
}


def to_fraction(x) -> Fraction:
    """Accept int, Fraction or a 'p/q' string."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot read {x!r} as an exact rational")


def frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def mod1(x: Fraction) -> Fraction:
    return x - math.floor(x)


def root_of_unity(x: Fraction) -> complex:
    """exp(2*pi*i*x), exact for quarter turns."""
    r = mod1(Fraction(x))
    if r in _QUARTER:
        return _QUARTER[r]
    return cmath.exp(2j * math.pi * float(r))
