import random
from fractions import Fraction

import pytest
from hypothesis import assume, given

from circlesig.ratfunc import (
    G,
    PolyG,
    RatFuncG,
    format_poly,
    format_rational,
    parse_rational,
    poly_gcd,
    ratfunc_canonicalize,
)

from .conftest import polys, ratfuncs


def P(*cs):
    return PolyG(cs)


def test_polyg_strips_zeros_and_degree_of_zero():
    assert P(1, 2, 0, 0).coeffs == (1, 2)
    assert PolyG().degree == float("-inf")
    assert P(0, 0).is_zero()
    assert P(3).degree == 0


def test_divmod_reconstructs():
    a = P(1, -3, 0, 2, 5)
    b = P(2, 0, 1)
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.degree < b.degree


def test_gcd_is_monic_common_factor():
    a = P(-1, 0, 1)  # g^2 - 1
    b = P(1, 2, 1)  # (1 + g)^2
    assert poly_gcd(a, b) == P(1, 1)


@pytest.mark.parametrize(
    "num, den, expected",
    [
        (P(-1, 0, 1), P(-1, 1), RatFuncG(P(1, 1))),
        (P(0, 2), P(2), G),
        # (1+g)^2 - 4g over (1-g)^2 collapses to 1.
        (P(1, 1) * P(1, 1) - P(0, 4), P(1, -1) * P(1, -1), RatFuncG.const(1)),
    ],
)
def test_canonicalize_examples(num, den, expected):
    r = RatFuncG(num, den)
    assert r == expected
    assert ratfunc_canonicalize(r) == r
    assert r.den.lead() == 1


def test_zero_denominator_rejected():
    with pytest.raises(ZeroDivisionError):
        RatFuncG(P(1), P())


def test_constancy_and_mixing_with_fractions():
    r = RatFuncG(P(2, 2), P(1, 1))
    assert r.is_constant() and r.constant_value() == 2
    assert r == 2 and r == Fraction(2)
    assert not G.is_constant()
    assert (G + Fraction(1, 2)) - G == Fraction(1, 2)
    assert Fraction(1, 3) * RatFuncG.const(3) == 1


def test_negative_powers():
    assert RatFuncG.g_power(-2) * RatFuncG.g_power(2) == 1
    assert RatFuncG.g_power(-1) == 1 / G


def test_string_format_ascending():
    r = RatFuncG(P(0, -4), P(1, -2, 1))
    assert str(r) == "(-4*g)/(1 - 2*g + g^2)"
    assert format_poly(P(Fraction(1, 2), 0, -3)) == "1/2 - 3*g^2"
    assert str(RatFuncG.const(Fraction(-3, 4))) == "-3/4"


@pytest.mark.parametrize("text, value", [("3", 3), ("-7/2", Fraction(-7, 2)), ("4/6", Fraction(2, 3))])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["1/0", "1.5", " 1", "1/-2", "", "a/b", "--1"])
def test_parse_rational_rejects(text):
    with pytest.raises(ValueError):
        parse_rational(text)


def test_format_rational():
    assert format_rational(Fraction(3)) == "3"
    assert format_rational(Fraction(-1, 2)) == "-1/2"


@given(ratfuncs(), ratfuncs())
def test_field_laws_against_float_evaluation(a, b):
    # Cross-validation oracle: exact arithmetic vs. evaluation at sample points.
    rng = random.Random(0)
    points = []
    while len(points) < 10:
        x = rng.uniform(0.05, 0.95)
        if all(abs(r.den.evaluate(x)) > 1e-6 for r in (a, b)) and (not b or abs(b.num.evaluate(x)) > 1e-6):
            points.append(x)
    ops = [(a + b, lambda u, v: u + v), (a - b, lambda u, v: u - v), (a * b, lambda u, v: u * v)]
    if b:
        ops.append((a / b, lambda u, v: u / v))
    for exact, op in ops:
        for x in points:
            want = op(a.evaluate(x), b.evaluate(x))
            got = exact.evaluate(x)
            assert abs(got - want) <= 1e-9 * max(1.0, abs(want))


@given(ratfuncs())
def test_canonical_form_idempotent_and_unique(r):
    assert ratfunc_canonicalize(r) == r
    # Multiplying numerator and denominator by a common factor changes nothing.
    f = P(3, -1, 2)
    assert RatFuncG(r.num * f, r.den * f) == r


@given(polys(), polys())
def test_gcd_divides_both(a, b):
    assume(not (a.is_zero() and b.is_zero()))
    g = poly_gcd(a, b)
    assert a.divmod(g)[1].is_zero()
    assert b.divmod(g)[1].is_zero()
