"""Tests for critical-orbit matching and the entropy estimator."""

import io
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from acflab.cfstrings import expansions_of_rational, value_of
from acflab.dynamics import (
    HAVE_COMPILED_KERNEL,
    MatchOutcome,
    _entropy_core,
    entropy_estimate,
    entropy_scan,
    nm_exponents,
    orbit,
    run_matching_survey,
    t_alpha_step,
    verify_matching,
    write_scan_csv,
)
from acflab.intervals import build_interval, enumerate_QE
from acflab.surds import GOLDEN_MEAN, sqrt_surd

from oracles import gauss_entropy


@st.composite
def rationals(draw, q_max=60):
    q = draw(st.integers(min_value=2, max_value=q_max))
    p = draw(st.integers(min_value=1, max_value=q - 1))
    return Fraction(p, q)


rationals = rationals()


# ---------------------------------------------------------------------------
# the map and exact orbits


def test_step_examples():
    alpha = Fraction(9, 20)
    assert t_alpha_step(Fraction(9, 20), alpha) == (Fraction(2, 9), 2)
    assert t_alpha_step(Fraction(2, 9), alpha) == (Fraction(-1, 2), 5)
    assert t_alpha_step(Fraction(-11, 20), alpha) == (Fraction(-2, 11), 2)
    assert t_alpha_step(Fraction(-2, 11), alpha) == (Fraction(-1, 2), 6)


def test_zero_is_absorbing():
    x, digit = t_alpha_step(Fraction(0), Fraction(1, 2))
    assert x == 0 and digit is None


def test_step_stays_exact_on_surds():
    image, digit = t_alpha_step(GOLDEN_MEAN, GOLDEN_MEAN)
    assert digit == 2
    assert image == GOLDEN_MEAN - 1


def test_orbit_records_steps_and_digits():
    points = orbit(Fraction(9, 20), Fraction(9, 20), 2)
    assert [p.step for p in points] == [0, 1, 2]
    assert [p.digit for p in points] == [None, 2, 5]
    assert points[-1].value == Fraction(-1, 2)


def test_orbit_domain_errors():
    with pytest.raises(ValueError):
        orbit(Fraction(0), Fraction(0), 1)
    with pytest.raises(ValueError):
        orbit(Fraction(6, 5), Fraction(1, 2), 1)
    with pytest.raises(ValueError):
        orbit(Fraction(1, 2), Fraction(3, 4), 1)


@given(rationals)
def test_unit_parameter_digits_recover_expansion(r):
    # at alpha = 1 the branch digits of the orbit of r spell out the
    # expansion of r whose final digit is at least 2
    S0, S1 = expansions_of_rational(r)
    canonical = S0 if S0[-1] >= 2 else S1
    digits = []
    x = r
    while x != 0:
        x, c = t_alpha_step(x, Fraction(1))
        digits.append(c)
    assert tuple(digits) == canonical


# ---------------------------------------------------------------------------
# matching exponents and the orbit collision


def test_nm_exponents_examples():
    assert nm_exponents(Fraction(1, 2)) == (1, 1)
    assert nm_exponents(Fraction(1, 3)) == (1, 2)
    assert nm_exponents(Fraction(3, 10)) == (3, 3)


@pytest.mark.parametrize("n", range(3, 9))
def test_nm_exponents_families(n):
    s_n = Fraction(1, n + 1)
    t_n = Fraction(n, n * n + 1)
    u_n = value_of((n + 1, n, 1, n))
    assert nm_exponents(s_n) == (1, n)
    assert nm_exponents(t_n) == (n, n)
    assert nm_exponents(u_n) == (2 * n, n + 2)


def test_verify_matching_examples():
    assert verify_matching(Fraction(1, 2), Fraction(9, 20)) is MatchOutcome.VERIFIED
    # the orbit of 1/2 drops into the absorber one step early
    assert verify_matching(Fraction(1, 2), Fraction(1, 2)) is MatchOutcome.ORBIT_HIT_ZERO
    with pytest.raises(ValueError):
        verify_matching(Fraction(1, 2), Fraction(1, 5))


def test_verify_matching_at_surd_points():
    interval = build_interval(Fraction(1, 2))
    for point in (sqrt_surd(2) / 3, (1 + sqrt_surd(2)) / 5):
        assert interval.contains(point)
        assert verify_matching(Fraction(1, 2), point) is MatchOutcome.VERIFIED


def test_matching_survey_small():
    survey = run_matching_survey(12)
    assert survey.intervals == len(enumerate_QE(12))
    assert survey.points_verified == 3 * survey.intervals
    assert survey.mismatches == 0
    assert survey.unresolved == ()
    assert survey.all_verified


# ---------------------------------------------------------------------------
# entropy estimation


def test_entropy_validation():
    with pytest.raises(ValueError):
        entropy_estimate(0.0, 100)
    with pytest.raises(ValueError):
        entropy_estimate(1.1, 100)
    with pytest.raises(ValueError):
        entropy_estimate(0.5, 0)
    with pytest.raises(ValueError):
        entropy_estimate(0.5, 100, burn_in=-1)
    with pytest.raises(ValueError):
        entropy_estimate(0.5, 100, replicas=7)


def test_entropy_deterministic():
    a = entropy_estimate(0.7, 10_000, seed=42)
    b = entropy_estimate(0.7, 10_000, seed=42)
    assert a == b
    c = entropy_estimate(0.7, 10_000, seed=43)
    assert c.value != a.value


@pytest.mark.parametrize("alpha", [1.0, 0.8, 0.5, 0.45])
def test_entropy_matches_closed_form(alpha):
    est = entropy_estimate(alpha, 200_000, seed=20260816)
    assert est.restarts == 0
    assert est.range_violations == 0
    assert est.stderr > 0
    assert abs(est.value - gauss_entropy(alpha)) < 1.5e-2


@pytest.mark.skipif(not HAVE_COMPILED_KERNEL, reason="compiled kernel unavailable")
def test_kernel_paths_agree():
    fast = entropy_estimate(0.7, 10_000, seed=9, use_compiled=True)
    slow = entropy_estimate(0.7, 10_000, seed=9, use_compiled=False)
    assert fast.replica_values == pytest.approx(slow.replica_values, rel=1e-12, abs=0)


def test_restart_pool_is_used_near_zero():
    pool = np.array([0.3, -0.4, 0.2, 0.25])
    _, restarts, violations = _entropy_core(0.5, 10, 0, 1e-20, pool)
    assert restarts >= 1
    assert violations == 0


def test_entropy_scan_sorted_and_schedule_independent():
    rows = entropy_scan([0.9, 0.5, 0.7], 5_000, seed=3)
    assert [r.alpha for r in rows] == [0.5, 0.7, 0.9]
    again = entropy_scan([0.5, 0.7, 0.9], 5_000, seed=3)
    assert rows == again
    assert len({r.seed for r in rows}) == 3


def test_scan_csv_deterministic_format():
    rows = entropy_scan([0.6, 0.8], 2_000, seed=11)
    out = io.StringIO()
    write_scan_csv(rows, out, config={"points": 2, "iters": 2000})
    text = out.getvalue()
    lines = text.splitlines()
    assert lines[0] == "# iters=2000"
    assert lines[1] == "# points=2"
    assert lines[2].startswith("# total_range_violations=")
    assert lines[3] == "alpha,h,stderr,iterations,restarts,seed"
    assert len(lines) == 6
    for line in lines[4:]:
        alpha, h, stderr, iters, restarts, seed = line.split(",")
        assert float(h) > 0 and float(stderr) >= 0
        assert iters == "2000"
    # byte-identical on rewrite; timestamp is opt-in
    out2 = io.StringIO()
    write_scan_csv(rows, out2, config={"points": 2, "iters": 2000})
    assert out2.getvalue() == text
    stamped = io.StringIO()
    write_scan_csv(rows, stamped, timestamp="2026-01-01T00:00:00")
    assert stamped.getvalue().splitlines()[0] == "# generated=2026-01-01T00:00:00"
