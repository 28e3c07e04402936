"""Exact coefficient arithmetic."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xctangle.errors import DomainError, ParseError, VariantMismatchError
from xctangle.ring import Coefficient, format_laurent, parse_laurent

laurents = st.dictionaries(
    st.integers(-6, 6), st.integers(-9, 9), max_size=5
).map(Coefficient.laurent)


def test_basic_construction():
    assert Coefficient.integer(3) + Coefficient.integer(4) == Coefficient.integer(7)
    assert Coefficient.rational(1, 2) * Coefficient.rational(2, 3) == \
        Coefficient.rational(1, 3)
    q = Coefficient.q_power(1)
    assert q * q == Coefficient.q_power(2)
    assert (q - q).is_zero()
    assert Coefficient.one().is_one()


def test_variant_mismatch():
    with pytest.raises(VariantMismatchError):
        Coefficient.integer(1) + Coefficient.q_power(0)


def test_laurent_inverse_monomial():
    q2 = Coefficient.q_power(2, -1)
    assert (q2 * q2.inverse()).is_one()
    with pytest.raises(DomainError):
        (Coefficient.q_power(1) + Coefficient.one()).inverse()
    with pytest.raises(DomainError):
        Coefficient.q_power(2, 3).inverse()  # non-unit coefficient


def test_power():
    q = Coefficient.q_power(1)
    assert q ** 5 == Coefficient.q_power(5)
    assert q ** 0 == Coefficient.one()
    assert q ** -3 == Coefficient.q_power(-3)


def test_rational_exact():
    third = Coefficient.rational(1, 3)
    assert third.as_fraction() == Fraction(1, 3)
    assert (third + third + third).is_one()


@settings(max_examples=200, deadline=None)
@given(laurents, laurents, laurents)
def test_ring_axioms_hypothesis(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c


def test_ring_axioms_bulk():
    rng = random.Random(11)

    def rand():
        return Coefficient.laurent(
            {rng.randrange(-6, 7): rng.randrange(-9, 10)
             for _ in range(rng.randrange(4))}
        )

    for _ in range(10_000):
        a, b, c = rand(), rand(), rand()
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_format_parse_round_trip():
    rng = random.Random(5)
    for _ in range(1000):
        c = Coefficient.laurent(
            {rng.randrange(-8, 9): rng.randrange(-99, 100)
             for _ in range(rng.randrange(5))}
        )
        assert parse_laurent(format_laurent(c.terms)) == c


def test_parse_errors_carry_position():
    with pytest.raises(ParseError):
        parse_laurent("q^")
    with pytest.raises(ParseError):
        parse_laurent("3 +")
