"""Quadratic intervals, the bifurcation set, and maximal-interval lookup.

Every rational r in (0, 1) owns an open interval I_r = (alpha1, alpha0)
whose endpoints are the quadratic surds obtained by periodizing r's two
CF expansions: alpha0 = [0; (S0)] (even-length string), alpha1 =
[0; (S1)] (odd-length string), and alpha1 < r < alpha0.  Inside I_r the
orbits of alpha-1 and alpha under the alpha-CF map collide after N+1 and
M+1 steps, where M and N are the digit sums of S0 at odd and even
1-based positions; the integer index M - N controls how entropy moves
through the interval.

The *bifurcation set* E = {x : G^k(x) >= x for all k >= 0} (G the Gauss
map) is exactly the set of parameters belonging to no I_r.  An interval
is *maximal* when it is not inside any other; maximal intervals are
recognized combinatorially by :func:`is_extremal`, which checks every
cyclic splitting of S0 against the alternating string order.

:func:`maximal_interval_containing` locates the maximal interval around
a parameter by walking the Stern-Brocot path toward it; only nodes
within 1/q^2 of the parameter can index a containing interval (r is a
convergent of both of its endpoints), which keeps the walk cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Iterator, List, Optional, Tuple, Union

from .cfstrings import (
    CFString,
    expansions_of_rational,
    lt_same_length,
    matching_index,
    value_of,
)
from .surds import (
    GOLDEN_MEAN,
    EventuallyPeriodicCF,
    Surd,
    cf_of_surd,
    exact_floor,
    surd_compare,
    surd_from_periodic,
)

__all__ = [
    "QuadraticInterval",
    "UndecidedError",
    "build_interval",
    "enumerate_QE",
    "in_B_t",
    "in_bifurcation_set",
    "is_extremal",
    "maximal_interval_containing",
    "pseudocenter",
]

Exact = Union[int, Fraction, Surd]


class UndecidedError(RuntimeError):
    """Raised when a search hits its resource cap before deciding."""


@dataclass(frozen=True)
class QuadraticInterval:
    """The open interval I_r = (alpha1, alpha0) attached to a rational r."""

    r: Fraction
    S0: CFString
    S1: CFString
    alpha1: Surd
    alpha0: Surd
    index: int  # M - N, the alternating digit sum of S0
    N: int  # digits of S0 at even 1-based positions
    M: int  # digits of S0 at odd 1-based positions

    def contains(self, x: Exact) -> bool:
        """Exact strict membership alpha1 < x < alpha0."""
        return surd_compare(self.alpha1, x) < 0 and surd_compare(x, self.alpha0) < 0

    def sample_points(self, count: int = 3) -> List[Fraction]:
        """Rationals spread through the interval: the simplest ones between
        each endpoint and r, plus deeper pseudocenters as count grows."""
        left = pseudocenter(self.alpha1, self.r)
        right = pseudocenter(self.r, self.alpha0)
        pts = [left, right, pseudocenter(left, self.r)]
        while len(pts) < count:
            pts.append(pseudocenter(pts[-1], self.r))
        return pts[:count]

    def to_json_dict(self) -> dict:
        return {
            "r": f"{self.r.numerator}/{self.r.denominator}",
            "S0": list(self.S0),
            "S1": list(self.S1),
            "alpha1": str(cf_of_surd(self.alpha1)),
            "alpha0": str(cf_of_surd(self.alpha0)),
            "alpha1_float": float(self.alpha1),
            "alpha0_float": float(self.alpha0),
            "index": self.index,
            "N": self.N,
            "M": self.M,
        }


@lru_cache(maxsize=None)
def build_interval(r: Fraction) -> QuadraticInterval:
    """Construct I_r with exact endpoints from the two expansions of r."""
    r = Fraction(r)
    S0, S1 = expansions_of_rational(r)
    alpha0 = surd_from_periodic((), S0)
    alpha1 = surd_from_periodic((), S1)
    M = sum(S0[0::2])
    N = sum(S0[1::2])
    assert M - N == matching_index(S0)
    ivl = QuadraticInterval(r, S0, S1, alpha1, alpha0, M - N, N, M)
    assert surd_compare(alpha1, r) < 0 < surd_compare(alpha0, r)
    return ivl


@lru_cache(maxsize=None)
def is_extremal(r: Fraction) -> bool:
    """Whether I_r is a maximal quadratic interval.

    Combinatorial criterion on the even expansion S0 of r: for every
    splitting S0 = A + B into nonempty halves, either the rotation B + A
    is strictly larger in the same-length alternating order, or the two
    halves are the same odd-length word.  Fails for every r > (sqrt(5)-1)/2.
    """
    r = Fraction(r)
    S0, _ = expansions_of_rational(r)
    for k in range(1, len(S0)):
        A, B = S0[:k], S0[k:]
        if A == B and len(A) % 2 == 1:
            continue
        if lt_same_length(S0, B + A):
            continue
        return False
    return True


def enumerate_QE(q_max: int) -> List[QuadraticInterval]:
    """All maximal intervals with pseudocenter denominator at most q_max,
    sorted by pseudocenter."""
    if q_max < 2:
        return []
    out = []
    for q in range(2, q_max + 1):
        for p in range(1, q):
            if gcd(p, q) == 1 and is_extremal(Fraction(p, q)):
                out.append(Fraction(p, q))
    out.sort()
    return [build_interval(r) for r in out]


# -- simplest rational in an open interval ----------------------------


def pseudocenter(a: Exact, b: Exact, max_steps: int = 100_000) -> Fraction:
    """The unique rational of smallest denominator strictly inside (a, b).

    Endpoints may be Fractions or quadratic surds (mixed freely); all
    comparisons are exact.  The Stern-Brocot descent is run-accelerated:
    a whole monotone run of mediant steps is taken at once by solving the
    crossing inequality with an exact floor.
    """
    if not isinstance(a, Surd):
        a = Fraction(a)
    if not isinstance(b, Surd):
        b = Fraction(b)
    if surd_compare(a, b) >= 0:
        raise ValueError("pseudocenter needs a < b")
    if surd_compare(a, 0) < 0 or surd_compare(b, 1) > 0:
        raise ValueError("pseudocenter is restricted to subintervals of [0, 1]")
    lp, lq, rp, rq = 0, 1, 1, 1
    for _ in range(max_steps):
        mp, mq = lp + rp, lq + rq
        m = Fraction(mp, mq)
        below = surd_compare(m, a) <= 0
        if not below and surd_compare(m, b) < 0:
            return m
        if below:
            # largest k with (lp + k*rp)/(lq + k*rq) <= a
            k = exact_floor((a * lq - lp) / (rp - a * rq))
            k = max(k, 1)
            lp, lq = lp + k * rp, lq + k * rq
        else:
            # largest k with (k*lp + rp)/(k*lq + rq) >= b
            k = exact_floor((rp - b * rq) / (b * lq - lp))
            k = max(k, 1)
            rp, rq = rp + k * lp, rq + k * lq
    raise UndecidedError(f"pseudocenter of ({a!r}, {b!r}) not found in {max_steps} runs")


# -- bifurcation set ---------------------------------------------------


def _canonical_expansion(r: Fraction) -> CFString:
    """The Euclidean expansion of r (final digit >= 2): its suffix values
    are exactly the Gauss-map orbit of r before it lands on 0."""
    S0, S1 = expansions_of_rational(r)
    return S0 if len(S0) < len(S1) else S1


def _tail_values(x: Surd) -> Iterator[Surd]:
    """Values of all distinct Gauss-map iterates G^k(x), k >= 0, of a surd."""
    cf = cf_of_surd(x)
    pre, per = cf.preperiod, cf.period
    for k in range(len(pre)):
        yield surd_from_periodic(pre[k:], per)
    for j in range(len(per)):
        yield surd_from_periodic((), per[j:] + per[:j])


def in_B_t(x: Exact, t: Exact) -> bool:
    """Membership in B(t) = {x in [0, 1] : G^k(x) >= t for all k >= 0}."""
    if isinstance(x, float):
        x = Fraction(x)
    if surd_compare(x, 0) < 0 or surd_compare(x, 1) > 0:
        raise ValueError("in_B_t needs x in [0, 1]")
    if isinstance(x, Surd) and not x.is_rational:
        return all(surd_compare(tail, t) >= 0 for tail in _tail_values(x))
    # rational orbit: the CF digits run out and the orbit sticks at 0
    x = x.as_fraction() if isinstance(x, Surd) else Fraction(x)
    if surd_compare(t, 0) <= 0:
        return True
    if x == 0 or x == 1:  # the orbit is already at 0 (or reaches it in a step)
        return False
    S = _canonical_expansion(x)
    for k in range(len(S)):
        if surd_compare(value_of(S[k:]), t) < 0:
            return False
    return False  # the final iterate 0 always falls below t > 0


def in_bifurcation_set(x: Exact) -> bool:
    """Whether x lies in E = {x : G^k(x) >= x for all k >= 0}.

    Rationals are never in E (their orbit reaches 0); for quadratic surds
    the finitely many orbit tails decide membership exactly.
    """
    if surd_compare(x, 0) < 0 or surd_compare(x, 1) > 0:
        raise ValueError("in_bifurcation_set needs x in [0, 1]")
    if isinstance(x, Surd) and not x.is_rational:
        return all(surd_compare(tail, x) >= 0 for tail in _tail_values(x))
    return surd_compare(x, 0) == 0  # 0 is fixed; positive rationals drop to 0


# -- locating the maximal interval around a parameter ------------------


def _sb_path_nodes(digits: Iterable[int], q_cap: int) -> Iterator[Tuple[int, int]]:
    """Stern-Brocot path nodes toward [0; digits]: every [0; a1..a_{k-1}, j]
    with 1 <= j <= a_k, as (p, q) pairs, until q exceeds q_cap."""
    p_prev, q_prev, p, q = 1, 0, 0, 1
    for a in digits:
        for j in range(1, a + 1):
            pj, qj = j * p + p_prev, j * q + q_prev
            yield pj, qj
            if qj > q_cap:
                return
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev


def _digits_of(alpha: Exact) -> Iterable[int]:
    if isinstance(alpha, Surd) and not alpha.is_rational:
        return cf_of_surd(alpha).digit_stream()
    r = alpha.as_fraction() if isinstance(alpha, Surd) else Fraction(alpha)
    # either expansion traces the same Stern-Brocot node set; use the shorter
    return _canonical_expansion(r)


def maximal_interval_containing(
    alpha: Exact, q_cap: int = 1_000_000
) -> Optional[QuadraticInterval]:
    """The maximal quadratic interval whose interior contains alpha, if any.

    Returns None when alpha is in the bifurcation set E.  Parameters at or
    above (sqrt(5)-1)/2 are out of domain: no maximal interval lives there
    (entropy is globally monotone) so asking for one is a caller error.
    Floats are taken at face value as exact binary rationals.

    Every interval containing alpha satisfies |alpha - r| < 1/q(r)^2, so
    its index r is a Stern-Brocot ancestor of alpha; the walk tests only
    those nodes, confirming candidates exactly before returning.
    """
    if isinstance(alpha, float):
        alpha = Fraction(alpha)
    if surd_compare(alpha, 0) <= 0 or surd_compare(alpha, GOLDEN_MEAN) >= 0:
        raise ValueError("parameter must lie in (0, (sqrt(5)-1)/2)")
    if isinstance(alpha, Surd) and not alpha.is_rational and in_bifurcation_set(alpha):
        return None
    af = float(alpha)
    for p, q in _sb_path_nodes(_digits_of(alpha), q_cap):
        if p >= q:  # the tree root 1/1 indexes no interval
            continue
        if abs(af - p / q) > 1.0 / (q * q) + 1e-12:
            continue
        m = Fraction(p, q)
        if not is_extremal(m):
            continue
        ivl = build_interval(m)
        if ivl.contains(alpha):
            return ivl
    raise UndecidedError(f"no maximal interval found for {alpha!r} within q <= {q_cap}")
