"""Local behaviour of the entropy as a function of the parameter.

The monotonicity of the entropy near a parameter alpha is decided by
exact arithmetic alone.  Away from the bifurcation set E, alpha sits
inside a maximal quadratic interval I_r and the sign of the matching
index of r settles everything (positive: increasing, negative:
decreasing, zero: constant on I_r).  Inside E the decision runs a
*renormalization chain*: the CF digit stream of alpha is parsed over the
two-block alphabet {S0(r), S1(r)} of successive untuned window
generators, pulling alpha back one tuning level at a time.  The chain
ends in one of four ways: at the golden mean (a phase-transition point,
alpha = tau_r(g) with r the composed chain), at a neutral window with the
parameter interior to it (locally constant), at a window's left endpoint
(mixed: constancy on the right, both slopes on the left), or at a
parameter in no window at all (mixed: non-neutral maximal intervals
accumulate it from both sides).

The same machinery answers the plateau question for a neutral window
(is it a *maximal* interval of constancy, or nested inside a bigger
one?), produces three families of witness intervals with prescribed
slope signs, recognizes *dominant* strings (an easily-generated
combinatorial source of maximal intervals), and brackets the Hausdorff
dimension of the attractor of a finite alphabet of inverse CF branches
through its extreme contraction factors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .cfstrings import CFString, as_cfstring, expansions_of_rational, ll, q_of, value_of
from .intervals import (
    QuadraticInterval,
    UndecidedError,
    build_interval,
    in_bifurcation_set,
    is_extremal,
    maximal_interval_containing,
)
from .surds import (
    GOLDEN_MEAN,
    EventuallyPeriodicCF,
    Surd,
    cf_of_surd,
    surd_compare,
    surd_from_periodic,
)
from .tuning import TuningWindow, is_untuned, tau_value, tuning_window, untuned_factorization

__all__ = [
    "DimensionBounds",
    "Monotonicity",
    "MonotonicityClass",
    "PlateauKind",
    "PlateauVerdict",
    "WitnessFamilies",
    "classify_parameter",
    "dimension_bounds",
    "extend_dominant",
    "is_dominant",
    "plateau_verdict",
    "witness_families",
]

ParameterLike = Union[int, float, Fraction, Surd, EventuallyPeriodicCF]

_CHAIN_CAP = 64  # renormalization depth; eventually periodic inputs stay far below


def _frac_str(r: Fraction) -> str:
    return f"{r.numerator}/{r.denominator}"


def _exact_str(x) -> str:
    if isinstance(x, Fraction):
        return _frac_str(x)
    return str(cf_of_surd(x))


def _as_parameter(alpha: ParameterLike):
    """Normalize to Fraction (rational) or irrational Surd."""
    if isinstance(alpha, EventuallyPeriodicCF):
        alpha = alpha.value()
    if isinstance(alpha, Surd):
        return alpha.as_fraction() if alpha.is_rational else alpha
    return Fraction(alpha)


# -- the classification verdict ----------------------------------------


class Monotonicity(Enum):
    INCREASING = "MonotoneIncreasing"
    DECREASING = "MonotoneDecreasing"
    CONSTANT_ON_INTERVAL = "MonotoneConstantOnInterval"
    PHASE_TRANSITION = "PhaseTransition"
    LOCALLY_CONSTANT = "LocallyConstant"
    MIXED = "Mixed"
    UNDECIDED = "Undecided"


@dataclass(frozen=True)
class MonotonicityClass:
    """A classification verdict together with its checkable witnesses.

    Exactly one witness family is populated per tag: ``interval`` for the
    three monotone tags (it contains alpha), ``window`` for locally
    constant (a neutral window containing alpha), ``transition`` for a
    phase transition (the rational r with alpha = tau_r(g); None only for
    the golden mean itself, the unique untuned transition).  ``chain``
    records the untuned window generators traversed, outermost first.
    """

    tag: Monotonicity
    alpha: Union[Fraction, Surd]
    interval: Optional[QuadraticInterval] = None
    window: Optional[TuningWindow] = None
    transition: Optional[Fraction] = None
    chain: Tuple[Fraction, ...] = ()
    note: str = ""

    def to_json_dict(self) -> dict:
        witnesses: dict = {}
        if self.interval is not None:
            witnesses["interval"] = self.interval.to_json_dict()
        if self.window is not None:
            witnesses["window"] = self.window.to_json_dict()
        if self.tag is Monotonicity.PHASE_TRANSITION:
            witnesses["r"] = None if self.transition is None else _frac_str(self.transition)
            witnesses["untuned"] = self.transition is None
        if self.tag is Monotonicity.DECREASING and self.interval is None:
            # the terminal segment above the golden mean, not a quadratic interval
            witnesses["region"] = {"lo": "[0;(1)]", "hi": "1"}
            witnesses["index"] = -1
            witnesses["N"] = 1
            witnesses["M"] = 0
        if self.chain:
            witnesses["chain"] = [_frac_str(r) for r in self.chain]
        if self.note:
            witnesses["note"] = self.note
        return {
            "alpha": _exact_str(self.alpha),
            "class": self.tag.value,
            "witnesses": witnesses,
        }


# -- parsing a digit stream over a window alphabet ----------------------


def _parse_window_pullback(cf: EventuallyPeriodicCF, S0: CFString, S1: CFString):
    """Parse the infinite stream of ``cf`` as S1 S0^{k1} S1 S0^{k2} ...

    Returns ``("digits", pre, per)`` with the pullback's digit stream
    (k_i + 1 per block, eventually periodic), ``("omega",)`` when the
    stream is exactly S1 (S0)^inf (the window's left endpoint), or None
    when the stream is not a concatenation over {S0, S1} starting with S1.

    {S0, S1} is a prefix code, so the greedy parse is the only possible
    one; cycles are detected on the stream phase (position minus
    preperiod, mod period) at token starts, which bounds the walk.
    """
    pre, per = cf.preperiod, cf.period
    p, m = len(pre), len(per)
    if m == 0:
        return None  # finite stream: rational, never a window member here

    def match(S: CFString, pos: int) -> bool:
        return all(cf.digit(pos + j) == S[j] for j in range(len(S)))

    if not match(S1, 0):
        return None
    pos = len(S1)
    digits: List[int] = []
    current = 1
    seen = {}  # stream phase at an S1 start -> completed digit count
    run_states: set = set()  # stream phases of S0 starts since the last S1
    for _ in range(100_000):
        if match(S1, pos):
            digits.append(current)
            if pos >= p:
                state = (pos - p) % m
                if state in seen:
                    cut = seen[state]
                    return "digits", tuple(digits[:cut]), tuple(digits[cut:])
                seen[state] = len(digits)
            current = 1
            run_states = set()
            pos += len(S1)
        elif match(S0, pos):
            if pos >= p:
                state = (pos - p) % m
                if state in run_states:
                    # the stream ends in (S0)^inf: the left endpoint, or no parse
                    return ("omega",) if not digits else None
                run_states.add(state)
            current += 1
            pos += len(S0)
        else:
            return None
    raise AssertionError("window parse failed to cycle")  # pragma: no cover


def _window_candidates(cf: EventuallyPeriodicCF):
    """Untuned maximal-interval rationals whose odd expansion prefixes the
    stream, shortest first.  An odd-length digit prefix IS the odd
    expansion of its own value, so these are the only possible generators."""
    cap = max(81, 2 * (len(cf.preperiod) + 2 * len(cf.period)) + 1)
    for ell in range(1, cap + 1, 2):
        prefix = tuple(cf.digit(i) for i in range(ell))
        r = value_of(prefix)
        if not 0 < r < 1:
            continue
        if is_extremal(r) and is_untuned(r):
            yield r


def _compose_chain(chain: Sequence[Fraction]) -> Fraction:
    """tau_{r1} o ... o tau_{r_{k-1}} applied to r_k, as a single rational."""
    value = chain[-1]
    for r in reversed(chain[:-1]):
        value = tau_value(r, value)
    return Fraction(value)


def _renormalization_chain(alpha: Surd) -> Tuple[List[Fraction], str]:
    """Pull alpha back through untuned tuning windows until it resolves.

    Outcomes: "golden" (pullback reached the golden mean), "neutral"
    (entered a neutral window, interior), "left_endpoint" (alpha is the
    left endpoint of the last window), "untunable" (in no window), "cap".
    """
    chain: List[Fraction] = []
    x = alpha
    for _ in range(_CHAIN_CAP):
        if surd_compare(x, GOLDEN_MEAN) == 0:
            return chain, "golden"
        cf = cf_of_surd(x)
        parsed = None
        for r in _window_candidates(cf):
            # expansions only: building the interval would take square roots
            # of needlessly huge discriminants for long candidate prefixes
            parsed = _parse_window_pullback(cf, *expansions_of_rational(r))
            if parsed is not None:
                break
        if parsed is None:
            return chain, "untunable"
        window = tuning_window(r)
        assert window.contains(x)
        chain.append(r)
        if parsed[0] == "omega":
            return chain, "left_endpoint"
        if window.neutral:
            return chain, "neutral"
        x = surd_from_periodic(parsed[1], parsed[2])
        assert surd_compare(0, x) < 0 <= surd_compare(GOLDEN_MEAN, x)
    return chain, "cap"


def _classify_in_bifurcation_set(a: Surd) -> MonotonicityClass:
    chain, outcome = _renormalization_chain(a)
    if outcome == "golden":
        if not chain:
            return MonotonicityClass(
                Monotonicity.PHASE_TRANSITION, a, note="the unique untuned transition"
            )
        r = _compose_chain(chain)
        assert build_interval(r).index != 0
        assert surd_compare(tau_value(r, GOLDEN_MEAN), a) == 0
        return MonotonicityClass(
            Monotonicity.PHASE_TRANSITION, a, transition=r, chain=tuple(chain)
        )
    if outcome == "neutral":
        r = _compose_chain(chain)
        window = tuning_window(r)
        assert window.neutral and window.contains(a)
        return MonotonicityClass(
            Monotonicity.LOCALLY_CONSTANT, a, window=window, chain=tuple(chain)
        )
    if outcome == "left_endpoint":
        r = _compose_chain(chain)
        assert surd_compare(tau_value(r, 0), a) == 0
        return MonotonicityClass(
            Monotonicity.MIXED,
            a,
            chain=tuple(chain),
            note=f"left endpoint of the tuning window of {_frac_str(r)}",
        )
    if outcome == "untunable":
        return MonotonicityClass(
            Monotonicity.MIXED,
            a,
            chain=tuple(chain),
            note="in the bifurcation set but in no tuning window",
        )
    return MonotonicityClass(
        Monotonicity.UNDECIDED,
        a,
        chain=tuple(chain),
        note=f"renormalization chain exceeded {_CHAIN_CAP} levels",
    )


def classify_parameter(alpha: ParameterLike) -> MonotonicityClass:
    """How the entropy moves in a neighbourhood of alpha in (0, 1].

    Rationals and parameters outside the bifurcation set get an interval
    verdict; bifurcation-set members are resolved by the renormalization
    chain.  Everything above the golden mean is plain decrease.
    """
    a = _as_parameter(alpha)
    if surd_compare(a, 0) <= 0 or surd_compare(a, 1) > 0:
        raise ValueError(f"classification needs alpha in (0, 1], got {alpha!r}")
    if surd_compare(a, GOLDEN_MEAN) > 0:
        return MonotonicityClass(
            Monotonicity.DECREASING,
            a,
            note="strict decrease on the whole segment ((sqrt(5)-1)/2, 1]",
        )
    if isinstance(a, Surd) and in_bifurcation_set(a):
        return _classify_in_bifurcation_set(a)
    try:
        ivl = maximal_interval_containing(a)
    except UndecidedError as exc:
        return MonotonicityClass(Monotonicity.UNDECIDED, a, note=str(exc))
    assert ivl is not None  # only bifurcation-set members lack an interval
    if ivl.index > 0:
        return MonotonicityClass(Monotonicity.INCREASING, a, interval=ivl)
    if ivl.index < 0:
        return MonotonicityClass(Monotonicity.DECREASING, a, interval=ivl)
    return MonotonicityClass(Monotonicity.CONSTANT_ON_INTERVAL, a, interval=ivl)


# -- plateaux ------------------------------------------------------------


class PlateauKind(Enum):
    NON_RENORMALIZABLE = "PlateauNR"
    FINITELY_RENORMALIZABLE = "PlateauFR"
    NOT_PLATEAU = "NotPlateau"


@dataclass(frozen=True)
class PlateauVerdict:
    """Whether the window of r is a maximal interval of entropy constancy.

    ``PlateauNR``: r is untuned and neutral.  ``PlateauFR``: r factors as
    tau_{r1}(r0) with r0 untuned neutral and the composed outer generator
    r1 non-neutral.  Anything else is not a plateau: either the window is
    not neutral at all, or it nests strictly inside a bigger plateau.
    """

    kind: PlateauKind
    r: Fraction
    window: TuningWindow
    r0: Optional[Fraction] = None
    r1: Optional[Fraction] = None
    reason: str = ""

    def to_json_dict(self) -> dict:
        out = {
            "kind": self.kind.value,
            "r": _frac_str(self.r),
            "window": self.window.to_json_dict(),
        }
        if self.r0 is not None:
            out["r0"] = _frac_str(self.r0)
        if self.r1 is not None:
            out["r1"] = _frac_str(self.r1)
        if self.reason:
            out["reason"] = self.reason
        return out


def plateau_verdict(r: Fraction) -> PlateauVerdict:
    """Decide the plateau question for a maximal-interval rational."""
    r = Fraction(r)
    if not is_extremal(r):
        raise ValueError(f"{r} does not index a maximal interval")
    window = tuning_window(r)
    index = build_interval(r).index
    if index != 0:
        return PlateauVerdict(
            PlateauKind.NOT_PLATEAU,
            r,
            window,
            reason=f"matching index {index} != 0: the window is not neutral",
        )
    factors = untuned_factorization(r)
    if len(factors) == 1:
        return PlateauVerdict(PlateauKind.NON_RENORMALIZABLE, r, window, r0=r)
    r0 = factors[-1]
    r1 = _compose_chain(factors[:-1])
    assert tau_value(r1, r0) == r
    if build_interval(r0).index != 0:
        return PlateauVerdict(
            PlateauKind.NOT_PLATEAU,
            r,
            window,
            r0=r0,
            r1=r1,
            reason=f"innermost untuned factor {_frac_str(r0)} is not neutral",
        )
    if build_interval(r1).index == 0:
        return PlateauVerdict(
            PlateauKind.NOT_PLATEAU,
            r,
            window,
            r0=r0,
            r1=r1,
            reason=(
                f"outer generator {_frac_str(r1)} is itself neutral: "
                "the window nests inside a larger plateau"
            ),
        )
    return PlateauVerdict(PlateauKind.FINITELY_RENORMALIZABLE, r, window, r0=r0, r1=r1)


# -- witness families of prescribed slope --------------------------------


@dataclass(frozen=True)
class WitnessFamilies:
    """Three maximal intervals with increasing / constant / decreasing
    entropy, drawn from the one-parameter families [0;n,1], [0;n,n] and
    [0;n+1,n,1,n]."""

    n: int
    increasing: QuadraticInterval
    constant: QuadraticInterval
    decreasing: QuadraticInterval


def witness_families(n: int) -> WitnessFamilies:
    """The slope-sign witness intervals at family index n > 2."""
    if n <= 2:
        raise ValueError(f"witness families need n > 2, got {n}")
    s = Fraction(1, n + 1)  # [0; n, 1]
    t = Fraction(n, n * n + 1)  # [0; n, n]
    u = value_of((n + 1, n, 1, n))
    triple = []
    for generator, want in ((s, n - 1), (t, 0), (u, 2 - n)):
        assert is_extremal(generator), generator
        ivl = build_interval(generator)
        assert ivl.index == want, (generator, ivl.index, want)
        triple.append(ivl)
    return WitnessFamilies(n, *triple)


# -- dominant strings ----------------------------------------------------


def is_dominant(S: Sequence[int]) -> bool:
    """Even-length strings strictly below every proper suffix in the
    alternating order; such strings always index maximal intervals."""
    S = as_cfstring(S)
    if not S:
        raise ValueError("is_dominant requires a non-empty string")
    if len(S) % 2:
        return False
    return all(ll(S, S[k:]) for k in range(1, len(S)))


def extend_dominant(S0: Sequence[int], B: Sequence[int], m: int) -> CFString:
    """Graft a proper even-length suffix B back onto m copies of a
    dominant string: S0^m B, again dominant (asserted)."""
    S0 = as_cfstring(S0)
    B = as_cfstring(B)
    if not is_dominant(S0):
        raise ValueError(f"{S0} is not dominant")
    if m < 1:
        raise ValueError(f"repetition count must be >= 1, got {m}")
    if not B or len(B) % 2 or len(B) >= len(S0) or S0[len(S0) - len(B):] != B:
        raise ValueError(f"{B} is not a proper even-length suffix of {S0}")
    out = S0 * m + B
    assert is_dominant(out), out
    return out


# -- dimension bounds ----------------------------------------------------


@dataclass(frozen=True)
class DimensionBounds:
    """Bracket for the Hausdorff dimension of the attractor of the inverse
    branches indexed by a finite, prefix-free alphabet of CF strings.
    Both bounds are log N over the log of an extreme contraction factor:
    every branch of string W contracts by between 1/(4 q(W)^2) and
    1/q(W)^2 on the unit interval."""

    lower: float
    upper: float
    alphabet: Tuple[CFString, ...]
    N: int
    m1: float  # smallest contraction factor over the alphabet
    m2: float  # largest contraction factor over the alphabet


def dimension_bounds(alphabet: Sequence[Sequence[int]]) -> DimensionBounds:
    """Dimension bracket from the extreme contraction factors."""
    words = tuple(as_cfstring(W) for W in alphabet)
    if not words or any(not W for W in words):
        raise ValueError("alphabet must be a non-empty list of non-empty strings")
    for i, A in enumerate(words):
        for j, B in enumerate(words):
            if i != j and len(A) <= len(B) and B[: len(A)] == A:
                raise ValueError(f"redundant alphabet: {A} is a prefix of {B}")
    qs = [q_of(W) for W in words]
    m1 = 1.0 / (4.0 * max(qs) ** 2)
    m2 = 1.0 / min(qs) ** 2
    if len(words) == 1:
        return DimensionBounds(0.0, 0.0, words, 1, m1, m2)
    if min(qs) == 1:
        raise ValueError("alphabet contains a unit-denominator string; its branch does not contract")
    lower = math.log(len(words)) / -math.log(m1)
    upper = math.log(len(words)) / -math.log(m2)
    assert 0.0 < lower <= upper
    return DimensionBounds(lower, upper, words, len(words), m1, m2)
