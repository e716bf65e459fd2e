"""Bit-exact rational <-> JSON conversion used by every file format.

A rational is serialized as a plain integer when its denominator is 1 and
as the string "p/q" (lowest terms, sign on p) otherwise.
"""

from fractions import Fraction

from .errors import ParseError


def rat_to_json(x: Fraction):
    if x.denominator == 1:
        return int(x)
    return f"{x.numerator}/{x.denominator}"


def rat_from_json(obj) -> Fraction:
    if isinstance(obj, bool):
        raise ParseError(f"not a rational: {obj!r}")
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, str):
        try:
            return Fraction(obj)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational string {obj!r}") from exc
    raise ParseError(f"not a rational: {obj!r}")
