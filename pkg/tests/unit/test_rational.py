from decimal import Decimal
from fractions import Fraction

import pytest

from greenroute.core.rational import format_decimal, format_rational, is_terminating, to_fraction


class TestRational:

    @pytest.mark.parametrize("value, expected", [
        ("5", Fraction(5)),
        (" 0.25 ", Fraction(1, 4)),
        (Decimal("1.5"), Fraction(3, 2)),
        (7, Fraction(7)),
        (Fraction(2, 3), Fraction(2, 3)),
    ])
    def test_to_fraction(self, value, expected):
        assert to_fraction(value) == expected

    def test_terminating_detection(self):
        assert is_terminating(Fraction(1, 8))
        assert is_terminating(Fraction(3, 20))
        assert not is_terminating(Fraction(1, 3))
        assert not is_terminating(Fraction(7, 30))

    @pytest.mark.parametrize("value, expected", [
        (Fraction(0), "0"),
        (Fraction(100), "100"),
        (Fraction(-1), "-1"),
        (Fraction(1, 4), "0.25"),
        (Fraction(-3, 20), "-0.15"),
        (Fraction(201, 2), "100.5"),
    ])
    def test_exact_decimal(self, value, expected):
        assert format_decimal(value) == expected
        assert Fraction(expected) == value

    def test_non_terminating_rounds_to_twelve_digits(self):
        assert format_decimal(Fraction(1, 3)) == "0.333333333333"
        assert format_decimal(Fraction(20, 3)) == "6.66666666667"

    def test_format_rational(self):
        assert format_rational(Fraction(5, 2)) == "2.5"
        assert format_rational(Fraction(-7, 3)) == "-7/3"
