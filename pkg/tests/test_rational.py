from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from commontorsion.algebra.rational import (INF, format_rational, is_prime, parse_rational,
                                            primes_in_range, valuation_p)
from commontorsion.errors import InvalidPrime, SpecError


def test_valuation_examples():
    assert valuation_p(Fraction(50, 3), 5) == 2
    assert valuation_p(0, 7) == INF
    assert valuation_p(48, 2) == 4
    assert valuation_p(Fraction(1, 49), 7) == -2


def test_valuation_rejects_composite():
    with pytest.raises(InvalidPrime):
        valuation_p(12, 4)


nonzero = st.fractions().filter(lambda r: r != 0)


@settings(max_examples=500, deadline=None)
@given(nonzero, nonzero, st.sampled_from([2, 3, 5, 7, 11]))
def test_valuation_additive(a, b, p):
    assert valuation_p(a * b, p) == valuation_p(a, p) + valuation_p(b, p)


def test_primality_matches_sympy():
    assert [n for n in range(2000) if is_prime(n)] == list(sympy.primerange(0, 2000))
    big = 2 ** 61 - 1
    assert is_prime(big) and not is_prime(big * 3)
    assert primes_in_range(5, 13) == [5, 7, 11, 13]


@pytest.mark.parametrize("text,value", [("3/4", Fraction(3, 4)), ("-2", Fraction(-2)),
                                        ("0.125", Fraction(1, 8)), ("6/-4", Fraction(-3, 2))])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["1/0", "abc", "1/2/3", ""])
def test_parse_rational_errors(text):
    with pytest.raises(SpecError):
        parse_rational(text)


@given(st.fractions())
def test_format_parse_round_trip(r):
    assert parse_rational(format_rational(r)) == r
