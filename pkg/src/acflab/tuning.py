"""Tuning (renormalization) operators on strings, rationals, and surds.

The tuning map of a rational r replaces each digit a of a CF string by
the block S1 S0^(a-1) built from r's two expansions.  It sends the
parameter 0 to the window's left endpoint omega = [0; S1, (S0)], sends 1
to r, and maps (0, 1] homeomorphically onto a sliver of r's quadratic
interval.
The half-open *tuning window* W_r = [omega, alpha0) is where the
renormalized dynamics of the parameter family repeats itself in
miniature; windows indexed by maximal-interval rationals are pairwise
nested or disjoint, never partially overlapping.

Tuned rationals factor uniquely: peeling the outermost generator off the
even expansion (greedy parse into S1 S0^k blocks, candidates tried in
increasing digit-sum) and recursing yields the *untuned factorization*
r = tau_{r_m} o ... o tau_{r_1} (r_0) with every factor untuned.

A note on the left endpoint of W_1/3: omega(1/3) = [0; 3, (2, 1)], which
evaluates to (5 - sqrt(3))/11 ~ 0.29707 = 1/(3 + (sqrt(3)-1)/2).  (The
value (5 - sqrt(3))/22 sometimes quoted for this window is half of it
and inconsistent with the defining continued fraction; we keep the CF.)
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple, Union

from .cfstrings import (
    CFString,
    as_cfstring,
    expansions_of_rational,
    norm1,
    value_of,
)
from .intervals import build_interval, is_extremal
from .surds import EventuallyPeriodicCF, Surd, cf_of_surd, surd_compare, surd_from_periodic

__all__ = [
    "NestingRelation",
    "NestingResult",
    "TuningWindow",
    "is_untuned",
    "tau_string",
    "tau_value",
    "tuning_window",
    "untuned_factorization",
    "window_nesting",
]

ParameterLike = Union[int, Fraction, Surd, EventuallyPeriodicCF]


def _blocks(r: Fraction) -> Tuple[CFString, CFString]:
    S0, S1 = expansions_of_rational(r)
    return S0, S1


def tau_string(r: Fraction, A: Sequence[int]) -> CFString:
    """Digitwise substitution a -> S1 S0^(a-1) along the string A."""
    r = Fraction(r)
    A = as_cfstring(A)
    if not A:
        raise ValueError("tau_string requires a non-empty string")
    if not is_extremal(r):
        warnings.warn(
            f"tau_string generator {r} does not index a maximal interval; "
            "the substitution is syntactic only",
            stacklevel=2,
        )
    S0, S1 = _blocks(r)
    out: List[int] = []
    for a in A:
        out.extend(S1)
        out.extend(S0 * (a - 1))
    return tuple(out)


def tau_value(r: Fraction, x: ParameterLike):
    """The tuning map on parameter values.

    tau_r(0) = omega (the window's left endpoint, a surd), tau_r(1) = r,
    rationals in
    (0, 1) go to rationals via the even expansion, and eventually periodic
    irrationals go digitwise (preperiod and period separately).  Strictly
    increasing on [0, 1], with image inside [omega, r].
    """
    r = Fraction(r)
    S0, S1 = _blocks(r)
    if isinstance(x, EventuallyPeriodicCF):
        x = x.value()
    if isinstance(x, Surd) and x.is_rational:
        x = x.as_fraction()
    if not isinstance(x, Surd):
        x = Fraction(x)
        if x == 0:
            return surd_from_periodic(S1, S0)  # omega = [0; S1, (S0)]
        if x == 1:
            return r
        if not 0 < x < 1:
            raise ValueError(f"tau_value needs x in [0, 1], got {x}")
        return value_of(tau_string(r, expansions_of_rational(x)[0]))
    if surd_compare(x, 0) <= 0 or surd_compare(x, 1) >= 0:
        raise ValueError(f"tau_value needs x in [0, 1], got {x!r}")
    cf = cf_of_surd(x)
    pre = tau_string(r, cf.preperiod) if cf.preperiod else ()
    per = tau_string(r, cf.period)
    return surd_from_periodic(pre, per)


@dataclass(frozen=True)
class TuningWindow:
    """The half-open window W_r = [omega, alpha0) of a generator r."""

    r: Fraction
    omega: Surd
    alpha0: Surd
    neutral: bool  # matching index of r vanishes

    def contains(self, x) -> bool:
        """Half-open membership omega <= x < alpha0, exact."""
        return surd_compare(self.omega, x) <= 0 and surd_compare(x, self.alpha0) < 0

    def to_json_dict(self) -> dict:
        return {
            "r": f"{self.r.numerator}/{self.r.denominator}",
            "omega": str(cf_of_surd(self.omega)),
            "alpha0": str(cf_of_surd(self.alpha0)),
            "omega_float": float(self.omega),
            "alpha0_float": float(self.alpha0),
            "neutral": self.neutral,
        }


@lru_cache(maxsize=None)
def tuning_window(r: Fraction) -> TuningWindow:
    """Window of a maximal-interval rational: [tau_r(0), alpha0(r))."""
    r = Fraction(r)
    if not is_extremal(r):
        raise ValueError(f"{r} does not index a maximal interval; no tuning window")
    ivl = build_interval(r)
    omega = tau_value(r, 0)
    assert surd_compare(omega, r) < 0 < surd_compare(ivl.alpha0, r)
    return TuningWindow(r, omega, ivl.alpha0, ivl.index == 0)


class NestingRelation(Enum):
    DISJOINT = "Disjoint"
    R_INSIDE_S = "RInsideS"
    S_INSIDE_R = "SInsideR"
    EQUAL = "Equal"


@dataclass(frozen=True)
class NestingResult:
    relation: NestingRelation
    witness: Optional[Fraction]  # p with inner = tau_outer(p), when nested


def window_nesting(r: Fraction, s: Fraction) -> NestingResult:
    """Trichotomy for two tuning windows: equal, nested (with the tuning
    witness p exhibiting the inner generator as tau of the outer), or
    disjoint closures.  Partial overlap never occurs for maximal-interval
    generators and raises if the exact comparisons ever suggest it."""
    r, s = Fraction(r), Fraction(s)
    if r == s:
        return NestingResult(NestingRelation.EQUAL, None)
    p = _detune(s, r)
    if p is not None:
        return NestingResult(NestingRelation.R_INSIDE_S, p)
    p = _detune(r, s)
    if p is not None:
        return NestingResult(NestingRelation.S_INSIDE_R, p)
    wr, ws = tuning_window(r), tuning_window(s)
    disjoint = (
        surd_compare(wr.alpha0, ws.omega) <= 0 or surd_compare(ws.alpha0, wr.omega) <= 0
    )
    if not disjoint:
        raise AssertionError(f"windows of {r} and {s} overlap without nesting")
    return NestingResult(NestingRelation.DISJOINT, None)


# -- untuned factorization ---------------------------------------------


def _parse_tau_image(S: CFString, S0: CFString, S1: CFString) -> Optional[CFString]:
    """Invert the substitution: read S as S1 S0^{k_1} S1 S0^{k_2} ... and
    return the digit string (k_1+1, k_2+1, ...), or None if S is not such
    a concatenation.  {S0, S1} is a prefix code (neither prefixes the
    other), so the parse is deterministic with no backtracking."""
    n0, n1 = len(S0), len(S1)
    i = 0
    digits: List[int] = []
    while i < len(S):
        if S[i : i + n1] == S1:
            digits.append(1)
            i += n1
        elif S[i : i + n0] == S0 and digits:
            digits[-1] += 1
            i += n0
        else:
            return None
    return tuple(digits) if digits else None


@lru_cache(maxsize=None)
def _detune(r: Fraction, t: Fraction) -> Optional[Fraction]:
    """The p with t = tau_r(p), or None when t is not tuned by r."""
    if r == t:
        return None
    S0r, S1r = _blocks(r)
    A = _parse_tau_image(_blocks(t)[0], S0r, S1r)
    if A is None or len(A) % 2:  # image of an even expansion has even length
        return None
    p = value_of(A)
    assert tau_value(r, p) == t
    return p


@lru_cache(maxsize=None)
def untuned_factorization(r: Fraction) -> Tuple[Fraction, ...]:
    """Factor r as tau_{r_m} o ... o tau_{r_1}(r_0), outermost first.

    Candidate outer generators are the values of odd-length proper
    prefixes of r's even expansion (every tau image starts with the
    generator's odd expansion), tried in increasing digit-sum; the first
    that parses is automatically untuned, and the quotient recurses.
    Returns (r,) when r is untuned.
    """
    r = Fraction(r)
    if not is_extremal(r):
        raise ValueError(f"{r} does not index a maximal interval; no factorization")
    S0, _ = _blocks(r)
    total = norm1(S0)
    for ell in range(1, len(S0), 2):
        prefix = S0[:ell]
        if total % norm1(prefix):
            continue
        s = value_of(prefix)
        if s >= 1 or s == r or not is_extremal(s):
            continue
        p = _detune(s, r)
        if p is not None:
            return (s,) + untuned_factorization(p)
    return (r,)


def is_untuned(r: Fraction) -> bool:
    """True when r is not the tuning image of any smaller generator."""
    return untuned_factorization(Fraction(r)) == (Fraction(r),)
