from fractions import Fraction
from math import gcd

import mpmath
import pytest
from hypothesis import given, strategies as st

from zaremba_spectrum.rational_core import (
    Chain,
    Mat2,
    QuadraticSurd,
    cf_from_rat,
    exact_string,
    fixed_point,
    matrix_of_chain,
    mobius_apply,
    periodic_cf_value,
    rat_from_cf,
    surd_cmp,
    to_decimal,
)

mpmath.mp.dps = 60

terms = st.lists(st.integers(1, 6), min_size=1, max_size=12)
fractions01 = st.integers(2, 10**6).flatmap(
    lambda b: st.integers(1, b - 1).map(lambda a: Fraction(a, b))
)


def nested(ts):
    """[0; t1, ..., tn] evaluated from the inside out."""
    x = Fraction(0)
    for t in reversed(ts):
        x = 1 / (t + x)
    return x


def mp_value(x):
    if isinstance(x, QuadraticSurd):
        return (x.p + x.q * mpmath.sqrt(x.D)) / x.r
    return mpmath.mpf(x.numerator) / x.denominator


@given(terms)
def test_rat_from_cf_matches_nested_evaluation(ts):
    assert rat_from_cf(ts) == nested(ts)


@given(fractions01, st.sampled_from(["canonical", "even", "odd"]))
def test_cf_round_trip(x, parity):
    chain = cf_from_rat(x, parity)
    assert rat_from_cf(chain) == x
    if parity == "canonical":
        assert len(chain) == 1 or chain.terms[-1] >= 2
    else:
        assert len(chain) % 2 == (0 if parity == "even" else 1)


@pytest.mark.parametrize("bad", [Fraction(0), Fraction(1), Fraction(3, 2), Fraction(-1, 3)])
def test_cf_from_rat_domain(bad):
    with pytest.raises(ValueError):
        cf_from_rat(bad)


def test_chain_parse_and_render():
    c = Chain.parse("[0;1,1,2]")
    assert c.terms == (1, 1, 2)
    assert str(c) == "[0;1,1,2]"
    assert c.reversed().terms == (2, 1, 1)
    assert rat_from_cf(c) == Fraction(3, 5)
    assert Chain.parse("1,1,2") == Chain.parse("[1,1,2]") == c
    for bad in ("[0;1,x]", "[0;]", "[0;1,0]"):
        with pytest.raises(ValueError):
            Chain.parse(bad)


@given(terms)
def test_matrix_of_chain_is_unimodular_and_holds_convergents(ts):
    m = matrix_of_chain(ts)
    assert m.det == (-1) ** len(ts)
    # [[q_n, q_{n-1}], [p_n, p_{n-1}]] for [0; t1, ..., tn]
    assert Fraction(m.c, m.a) == nested(ts)
    if len(ts) > 1:
        assert Fraction(m.d, m.b) == nested(ts[:-1])


def test_mat2_product():
    a, b = Mat2(1, 2, 3, 4), Mat2(0, 1, 1, 0)
    assert (a @ b).rows() == [[2, 1], [4, 3]]
    assert (a @ Mat2.identity()) == a
    assert a.det == -2 and a.trace == 5


# quadratic surds ------------------------------------------------------------


def test_surd_canonical_form():
    x = QuadraticSurd(12, -2, 32, 2)  # (12 - 2*sqrt(32))/2 = 6 - 4*sqrt(2)
    assert x.key() == (6, -4, 2, 1)
    assert str(x) == "6-4√2"
    assert str(QuadraticSurd(9, 1, 221, 10)) == "(9+√221)/10"
    with pytest.raises(ValueError):
        QuadraticSurd(1, 1, 9, 1)
    assert QuadraticSurd.make(1, 0, 5, 3) == Fraction(1, 3)


surds = st.tuples(
    st.integers(-50, 50), st.integers(-20, 20).filter(bool), st.sampled_from([2, 3, 5, 6, 7, 221]), st.integers(1, 30)
).map(lambda t: QuadraticSurd(*t))


@given(surds, surds)
def test_surd_order_agrees_with_high_precision(x, y):
    diff = mp_value(x) - mp_value(y)
    expected = 0 if abs(diff) < mpmath.mpf(10) ** -40 else (1 if diff > 0 else -1)
    assert surd_cmp(x, y) == expected


@given(surds, fractions01)
def test_surd_field_operations(x, f):
    assert (x + f) - f == x
    assert (x * f) / f == x
    assert x * x.reciprocal() == 1
    assert abs(mp_value(x / f) - mp_value(x) / mp_value(f)) < mpmath.mpf(10) ** -40


def test_mixed_radicands_refuse_arithmetic_but_compare():
    a, b = QuadraticSurd(0, 1, 2), QuadraticSurd(0, 1, 3)
    with pytest.raises(ValueError):
        a + b
    assert a < b and surd_cmp(b, a) == 1


@given(st.integers(-10**6, 10**6), st.integers(-10**3, 10**3).filter(bool), st.integers(2, 10**4), st.integers(1, 10**4))
def test_float_conversion(p, q, d, r):
    try:
        x = QuadraticSurd(p, q, d, r)
    except ValueError:
        return  # square radicand
    assert float(x) == pytest.approx(float(mp_value(x)), rel=1e-12, abs=1e-300)


def test_float_conversion_survives_cancellation():
    x = QuadraticSurd(10**40, -1, 10**80 - 1, 1)  # 10^40 - sqrt(10^80 - 1) ~ 5e-41
    assert float(x) == pytest.approx(float(mp_value(x)), rel=1e-12)


@given(surds, st.integers(1, 40))
def test_to_decimal_is_correctly_rounded(x, digits):
    with mpmath.workdps(digits + 40):
        scaled = mp_value(x) * mpmath.mpf(10) ** digits + mpmath.mpf(1) / 2
        n = int(mpmath.floor(scaled))
    sign = "-" if n < 0 else ""
    whole, frac = divmod(abs(n), 10**digits)
    assert to_decimal(x, digits) == f"{sign}{whole}.{frac:0{digits}d}"


def test_to_decimal_rationals():
    assert to_decimal(Fraction(1, 3), 5) == "0.33333"
    assert to_decimal(Fraction(2, 3), 5) == "0.66667"
    assert to_decimal(Fraction(1, 8), 2) == "0.13"
    assert to_decimal(Fraction(-1, 8), 2) == "-0.12"  # halves round toward +infinity
    with pytest.raises(ValueError):
        to_decimal(Fraction(1, 2), 0)


def test_exact_string():
    assert exact_string(Fraction(10, 29)) == "10/29"
    assert exact_string(Fraction(2)) == "2/1"
    assert exact_string(QuadraticSurd(3, -1, 5, 2)) == "(3-√5)/2"


# periodic continued fractions -------------------------------------------------


def test_golden_ratio_fixed_point():
    phi = fixed_point(matrix_of_chain([1]))
    assert phi == QuadraticSurd(1, 1, 5, 2)
    assert mobius_apply(matrix_of_chain([1]), phi) == phi


@given(st.lists(st.integers(1, 4), max_size=4), st.lists(st.integers(1, 4), min_size=1, max_size=4))
def test_periodic_cf_value_matches_long_truncation(pre, period):
    x = periodic_cf_value(pre, period)
    truncated = nested(pre + period * 200)
    assert abs(mp_value(x) - mp_value(truncated)) < mpmath.mpf(10) ** -30
    assert 0 < x < 1


def test_periodic_cf_value_all_twos():
    # [0; 2, 2, 2, ...] = sqrt(2) - 1
    assert periodic_cf_value([], [2]) == QuadraticSurd(-1, 1, 2, 1)


def test_gcd_normalisation_of_surds():
    x = QuadraticSurd(4, 6, 5, 8)
    assert gcd(gcd(x.p, x.q), x.r) == 1 and x.r > 0
