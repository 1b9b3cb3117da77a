import random
from fractions import Fraction

import pytest

from wallcross.rationals import format_rational, parse_rational


def test_parse_basic():
    assert parse_rational("0") == 0
    assert parse_rational("7/4") == Fraction(7, 4)
    assert parse_rational("-3/2") == Fraction(-3, 2)
    assert parse_rational("12") == 12


def test_parse_rejects_noncanonical():
    for bad in ["2/4", "4/2", "1/-2", "-0", "+1", "1/1", " 1", "1.5", "", "a/b", "0/3"]:
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_format_canonical():
    assert format_rational(Fraction(0)) == "0"
    assert format_rational(Fraction(6, 4)) == "3/2"
    assert format_rational(Fraction(-8, 2)) == "-4"
    assert format_rational(Fraction(5)) == "5"


def test_round_trip_random():
    rng = random.Random(7)
    for _ in range(300):
        q = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**6))
        assert parse_rational(format_rational(q)) == q
