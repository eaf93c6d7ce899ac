"""Unit and property tests for exact quadratic-surd arithmetic and CFs."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from acflab.surds import (
    GOLDEN_MEAN,
    EventuallyPeriodicCF,
    Surd,
    cf_of_surd,
    exact_floor,
    format_cf_literal,
    parse_cf_literal,
    surd_compare,
    surd_floor,
    surd_from_periodic,
    surd_recip_shift,
    sqrt_surd,
)

digits = st.integers(min_value=1, max_value=6)
short_strings = st.lists(digits, min_size=1, max_size=4).map(tuple)


def test_normalization():
    assert Surd(2, 0, 4, 7) == Surd(1, 0, 2, 1)  # b=0 forces d=1
    assert Surd(0, 2, 2, 8) == Surd(0, 2, 1, 2)  # sqrt(8) = 2*sqrt(2)
    assert Surd(1, 1, -1, 2) == Surd(-1, -1, 1, 2)
    s = Surd(6, 9, 3, 5)
    assert (s.a, s.b, s.c, s.d) == (2, 3, 1, 5)
    with pytest.raises(ZeroDivisionError):
        Surd(1, 1, 0, 2)
    with pytest.raises(ValueError):
        Surd(1, 1, 1, -3)


def test_golden_mean():
    g = GOLDEN_MEAN
    assert abs(float(g) - (math.sqrt(5) - 1) / 2) < 1e-15
    assert g * g + g == 1  # g is the positive root of x^2 + x - 1
    assert surd_recip_shift(g, 1) == g  # 1/g - 1 = g
    assert cf_of_surd(g) == EventuallyPeriodicCF((), (1,))


def test_field_arithmetic():
    r2 = sqrt_surd(2)
    assert r2 * r2 == 2
    assert (1 + r2) * (r2 - 1) == 1
    assert (r2 / 2) + (r2 / 2) == r2
    assert 1 / r2 == r2 / 2
    assert Fraction(1, 3) + Surd(0, 1, 3, 2) == Surd(1, 1, 3, 2)
    with pytest.raises(TypeError):
        sqrt_surd(2) + sqrt_surd(3)


def test_sign_and_compare():
    assert Surd(-1, 1, 1, 2).sign() == 1  # sqrt(2) > 1
    assert Surd(3, -2, 1, 2).sign() == 1  # 3 > 2*sqrt(2)
    assert Surd(2, -2, 1, 2).sign() == -1  # 2 < 2*sqrt(2)
    assert Surd(5, 0, 7, 1).sign() == 1
    assert surd_compare(GOLDEN_MEAN, Fraction(1, 2)) == 1
    assert surd_compare(Fraction(2, 3), GOLDEN_MEAN) == 1
    assert surd_compare(Fraction(2, 3), Fraction(2, 3)) == 0
    # cross-field: (sqrt(3)-1)/2 = 0.366... < golden mean
    assert surd_compare(Surd(-1, 1, 2, 3), GOLDEN_MEAN) == -1
    assert surd_compare(sqrt_surd(2), sqrt_surd(3)) == -1
    assert not sqrt_surd(2) == sqrt_surd(3)


def test_floor():
    assert surd_floor(sqrt_surd(2)) == 1
    assert surd_floor(-sqrt_surd(2)) == -2
    assert surd_floor(Surd(0, 1, 1, 99)) == 9  # sqrt(99) = 9.949...
    assert surd_floor(Surd(0, 1, 1, 100)) == 10
    assert exact_floor(Fraction(-7, 2)) == -4
    assert exact_floor(5) == 5


def test_periodic_values():
    assert surd_from_periodic((), (1,)) == GOLDEN_MEAN
    assert surd_from_periodic((2,), (1,)) == GOLDEN_MEAN * GOLDEN_MEAN
    assert surd_from_periodic((), (2,)) == sqrt_surd(2) - 1
    assert surd_from_periodic((), (2, 1)) == Surd(-1, 1, 2, 3)
    # rational (empty period)
    assert surd_from_periodic((3, 3), ()).as_fraction() == Fraction(3, 10)


def test_cf_of_surd_examples():
    assert cf_of_surd(sqrt_surd(2) - 1) == EventuallyPeriodicCF((), (2,))
    assert cf_of_surd(Surd(-1, 1, 2, 3)) == EventuallyPeriodicCF((), (2, 1))
    w = Surd(5, -1, 11, 3)  # (5 - sqrt(3))/11
    assert cf_of_surd(w) == EventuallyPeriodicCF((3,), (2, 1))
    with pytest.raises(ValueError):
        cf_of_surd(Surd.from_rational(Fraction(1, 2)))
    with pytest.raises(ValueError):
        cf_of_surd(sqrt_surd(2))  # not in (0, 1)


@given(short_strings, short_strings)
def test_cf_round_trip(pre, per):
    x = surd_from_periodic(pre, per)
    assert cf_of_surd(x) == EventuallyPeriodicCF(pre, per)


@given(short_strings, short_strings)
def test_canonical_form_is_value_faithful(pre, per):
    """Syntactically distinct canonical forms have distinct values; the
    canonicalizer maps every spelling of the same stream to one form."""
    e = EventuallyPeriodicCF(pre, per)
    # re-spell with the period unrolled once more and the boundary moved
    e2 = EventuallyPeriodicCF(pre + per, per)
    assert e == e2
    assert surd_from_periodic(pre, per) == surd_from_periodic(e.preperiod, e.period)


@given(short_strings)
def test_purely_periodic_fixed_point(per):
    """y = [0; (per)] is fixed by the Moebius map of its period."""
    from acflab.cfstrings import mobius_apply

    y = surd_from_periodic((), per)
    assert mobius_apply(per, y) == y


def test_bounds_bracket_value():
    for s in (GOLDEN_MEAN, sqrt_surd(2) - 1, Surd(5, -1, 11, 3), Surd(-3, 2, 7, 13)):
        lo, hi = s.bounds(64)
        assert s >= lo and s <= hi  # exact bracketing
        assert hi - lo < Fraction(1, 2**60)


def test_literal_parse_format():
    e = parse_cf_literal("[0;3,2,1,(2,1)]")
    # canonical form slides the periodic window left through matching digits
    assert (e.preperiod, e.period) == ((3,), (2, 1))
    assert parse_cf_literal("[0;2,(1,2)]") == EventuallyPeriodicCF((), (2, 1))
    assert parse_cf_literal("[0;(1)]").value() == GOLDEN_MEAN
    assert parse_cf_literal("[0;3,3]").value() == Fraction(3, 10)
    assert format_cf_literal((3,), (2, 1)) == "[0;3,(2,1)]"
    assert format_cf_literal((3, 3)) == "[0;3,3]"
    assert str(EventuallyPeriodicCF((), (2, 1, 2, 1))) == "[0;(2,1)]"
    with pytest.raises(ValueError):
        parse_cf_literal("0.75")
    with pytest.raises(ValueError):
        parse_cf_literal("[1;2,3]")


def test_digit_stream():
    x = EventuallyPeriodicCF((3,), (2, 1))
    assert [x.digit(i) for i in range(6)] == [3, 2, 1, 2, 1, 2]
    it = x.digit_stream()
    assert [next(it) for _ in range(5)] == [3, 2, 1, 2, 1]
    r = EventuallyPeriodicCF((3, 3), ())
    assert list(r.digit_stream()) == [3, 3]
    with pytest.raises(IndexError):
        r.digit(2)


def test_hash_consistency():
    assert hash(Surd.from_rational(Fraction(3, 10))) == hash(Fraction(3, 10))
    assert Surd.from_rational(Fraction(3, 10)) == Fraction(3, 10)
    d = {GOLDEN_MEAN: "g"}
    assert d[surd_from_periodic((), (1,))] == "g"
