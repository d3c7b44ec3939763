"""Element and scalar grammar: parsing, distribution, formatter round trips."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from wittkit import (
    AlgebraVariant,
    ParseError,
    WittAlgebra,
    bracket,
    parse_element,
    parse_scalar,
)

W2 = WittAlgebra(AlgebraVariant.wn(2))
WMU = WittAlgebra(AlgebraVariant.wnmu(2))


def test_basic_monomials():
    assert parse_element("d1", W2) == W2.d(1)
    assert parse_element("t1*d1", W2) == W2.monomial((1, 0), 1)
    assert parse_element("t1^-1*d1", W2) == W2.monomial((-1, 0), 1)
    assert parse_element("3*t1^2*t2*d2", W2) == W2.monomial(
        (2, 1), 2, W2.field.from_int(3))
    assert parse_element("0", W2) == W2.zero()


def test_signs_and_sums():
    x = parse_element("-d1 + 2*d2 - t1*d1", W2)
    assert x == -W2.d(1) + W2.d(2).scale(W2.field.from_int(2)) - W2.monomial((1, 0), 1)
    assert parse_element("d1 - d1", W2) == W2.zero()


def test_rational_and_symbolic_coefficients():
    x = parse_element("1/2*t1*d1", W2)
    assert x == W2.monomial((1, 0), 1, W2.field.from_fraction(Fraction(1, 2)))
    y = parse_element("mu2*d1", W2)
    assert y == W2.d(1).scale(W2.field.mu(2))
    z = parse_element("(mu1/(mu1 + mu2))*t1*d1", W2)
    assert z == W2.monomial((1, 0), 1, W2.field.mu(1) / (W2.field.mu(1) + W2.field.mu(2)))


def test_dmu_direction():
    assert parse_element("dmu", WMU) == WMU.dmu()
    assert parse_element("t1*dmu + t2*dmu", WMU) == WMU.power_sum_dmu(1)
    assert parse_element("t1^3*dmu", WMU) == WMU.dmu().translate((3, 0))


def test_parenthesized_sums_distribute():
    assert parse_element("(t1 + t2)*dmu", WMU) == WMU.power_sum_dmu(1)
    assert parse_element("(t1^2 + t2^2)*dmu", WMU) == WMU.power_sum_dmu(2)
    x = parse_element("(1 + t1)*(1 - t1)*d2", W2)
    expect = W2.monomial((0, 0), 2) - W2.monomial((2, 0), 2)
    assert x == expect
    # scalar groups mix with t factors inside one term
    y = parse_element("(2 + mu1)*t2*d1", W2)
    assert y == W2.monomial((0, 1), 1, W2.field.from_int(2) + W2.field.mu(1))


def test_division_must_be_scalar():
    assert parse_element("t1/2*d1", W2) == W2.monomial(
        (1, 0), 1, W2.field.from_fraction(Fraction(1, 2)))
    with pytest.raises(ParseError):
        parse_element("d1/t1", W2)
    with pytest.raises(ParseError):
        parse_element("d1/(t1 + 1)", W2)
    with pytest.raises(ParseError):
        parse_element("d1/0", W2)


def test_parse_errors():
    for bad in ("t1*d3", "d0", "t3*d1", "t1", "t1*", "(t1+t2", "d1 +", "q*w",
                "", "t1^x*d1", "2*2", "mu3*d1"):
        with pytest.raises(ParseError):
            parse_element(bad, W2)


def test_error_position_reported():
    try:
        parse_element("d1 + t9*d1", W2)
    except ParseError as err:
        assert "position" in str(err) or err.pos >= 4
    else:  # pragma: no cover
        raise AssertionError("expected ParseError")


def test_parse_scalar():
    field = W2.field
    assert parse_scalar("mu1 + mu2", field) == field.mu(1) + field.mu(2)
    assert parse_scalar("-3/4", field) == field.from_fraction(Fraction(-3, 4))
    assert parse_scalar("mu1^2 - mu2^2", field) == (
        field.mu(1) * field.mu(1) - field.mu(2) * field.mu(2))
    assert parse_scalar("(mu1 + 1)/(mu2 - 1)", field) == (
        (field.mu(1) + 1) / (field.mu(2) - 1))
    with pytest.raises(ParseError):
        parse_scalar("t1", field)


def test_format_parse_round_trip_random():
    rng = random.Random(63)
    for algebra in (W2, WMU, WittAlgebra(AlgebraVariant.wn(3))):
        for _ in range(60):
            x = algebra.random_element(rng, box=3)
            assert parse_element(algebra.format(x), algebra) == x


def test_format_parse_round_trip_symbolic():
    x = W2.dmu().translate((1, -2)).scale(W2.field.mu(1) / (W2.field.mu(2) + 1))
    assert parse_element(W2.format(x), W2) == x
    z = W2.zero()
    assert parse_element(W2.format(z), W2) == z


def test_parse_then_bracket_matches_constructed():
    x = parse_element("t1^2*t2^-1*d1 - 1/3*d2", W2)
    y = parse_element("t2*d2", W2)
    built = bracket(
        W2.monomial((2, -1), 1) - W2.d(2).scale(W2.field.from_fraction(Fraction(1, 3))),
        W2.monomial((0, 1), 2),
    )
    assert bracket(x, y) == built
