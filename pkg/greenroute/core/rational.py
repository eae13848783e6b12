"""Exact rational helpers shared by ingestion, reports and the LP writer."""
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Union

SIGNIFICANT_DIGITS = 12

RationalLike = Union[Fraction, Decimal, int, str]


def to_fraction(value: RationalLike) -> Fraction:
    """Convert a decimal string, Decimal or int to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Decimal):
        return Fraction(value)
    return Fraction(str(value).strip())


def is_terminating(value: Fraction) -> bool:
    """True when the decimal expansion of ``value`` is finite."""
    denominator = value.denominator
    for factor in (2, 5):
        while denominator % factor == 0:
            denominator //= factor
    return denominator == 1


def format_decimal(value: Fraction) -> str:
    """Render ``value`` as an exact decimal.

    Non-terminating values fall back to a rounded decimal with
    ``SIGNIFICANT_DIGITS`` significant digits; callers that need exactness
    must check ``is_terminating`` first.
    """
    if not is_terminating(value):
        with localcontext() as ctx:
            ctx.prec = SIGNIFICANT_DIGITS
            rounded = Decimal(value.numerator) / Decimal(value.denominator)
        return _strip(format(rounded, "f"))

    scale = 0
    denominator = value.denominator
    while denominator != 1:
        if denominator % 10 == 0:
            denominator //= 10
        elif denominator % 2 == 0:
            denominator //= 2
        else:
            denominator //= 5
        scale += 1
    scaled = value * 10**scale
    digits = str(abs(scaled.numerator))
    sign = "-" if value < 0 else ""
    if scale == 0:
        return sign + digits
    digits = digits.rjust(scale + 1, "0")
    return _strip(f"{sign}{digits[:-scale]}.{digits[-scale:]}")


def format_rational(value: Fraction) -> str:
    """Exact text form: a decimal when terminating, ``p/q`` otherwise."""
    if is_terminating(value):
        return format_decimal(value)
    return f"{value.numerator}/{value.denominator}"


def _strip(text: str) -> str:
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text
