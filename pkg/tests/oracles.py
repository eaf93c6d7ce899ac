"""Independent oracles used by the test suite.

Nothing here is imported by the package itself.  The oracles deliberately
recompute target quantities by *different* routes than the library:

* high-precision numerics via mpmath for values and orderings,
* geometric maximality via endpoint stabbing: an interval I_r fails to be
  maximal exactly when one of its endpoints lies strictly inside some
  other quadratic interval I_s (endpoints of maximal intervals belong to
  the bifurcation set, which meets no interval interior).  Candidate
  stabbing indices s are enumerated along the Stern-Brocot path of the
  endpoint, which is exhaustive because e in I_s forces |e - s| < 1/q(s)^2.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

import mpmath as mp

from acflab.cfstrings import expansions_of_rational
from acflab.intervals import build_interval
from acflab.surds import Surd, cf_of_surd


def mp_cf_value(digits: Iterable[int], prec: int = 120) -> mp.mpf:
    """[0; digits] evaluated bottom-up at high precision."""
    with mp.workdps(prec):
        x = mp.mpf(0)
        for a in reversed(list(digits)):
            x = 1 / (a + x)
        return +x


def mp_surd(s: Surd, prec: int = 120) -> mp.mpf:
    with mp.workdps(prec):
        return (s.a + s.b * mp.sqrt(s.d)) / s.c


def gauss_entropy(alpha: float) -> float:
    """Closed-form entropy: pi^2 / (6 log(1 + alpha)) above the plateau,
    frozen at the golden-mean value on [1/2, g]."""
    import math

    g = (math.sqrt(5) - 1) / 2
    a = max(float(alpha), g)
    return math.pi**2 / (6 * math.log(1 + a))


def _sb_nodes_toward(e: Surd, q_cap: int):
    """(p, q) Stern-Brocot path nodes toward the surd e, q <= q_cap."""
    digits = cf_of_surd(e).digit_stream()
    p_prev, q_prev, p, q = 1, 0, 0, 1
    for a in digits:
        for j in range(1, a + 1):
            pj, qj = j * p + p_prev, j * q + q_prev
            if qj > q_cap:
                return
            if pj < qj:
                yield pj, qj
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev


def stab_maximality_oracle(r: Fraction, q_cap: int | None = None) -> bool:
    """True iff I_r is maximal: no endpoint lies inside another interval.

    Any interval I_s whose interior contains the endpoint e satisfies
    |e - s| < 1/q(s)^2, so s lies on the Stern-Brocot path toward e; the
    walk up to q_cap (default 2*q(r)^2, ample for every stab that can
    swallow an endpoint of I_r) therefore sees every candidate.
    """
    ivl = build_interval(r)
    if q_cap is None:
        q_cap = max(2 * r.denominator**2, 64)
    for e in (ivl.alpha1, ivl.alpha0):
        ef = float(e)
        for p, q in _sb_nodes_toward(e, q_cap):
            if abs(ef - p / q) > 1.0 / (q * q) + 1e-12:
                continue
            s = Fraction(p, q)
            if s == r:
                continue
            other = build_interval(s)
            if other.contains(e):
                return False
    return True
