"""Exact combinatorics of finite continued-fraction strings.

A *CF string* is a finite sequence of positive integer partial quotients,
represented throughout as a plain ``tuple[int, ...]``.  ``[0; S]`` denotes
the value of the continued fraction ``1/(a1 + 1/(a2 + ...))`` built from
``S = (a1, ..., an)``.

This module provides:

* the value and denominator of a string (standard convergent recurrence),
* the same-length alternating order ``lt_same_length`` and the
  any-length order ``ll`` (incomparable when one string prefixes the other),
* the Moebius action ``mobius_apply`` of a string on the unit interval,
* the alternating digit sum ``matching_index``,
* the two CF expansions (even- and odd-length) of a rational in (0, 1).

All arithmetic is arbitrary precision; denominators grow exponentially in
the string length and silently overflow in fixed-width integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Tuple, Union

CFString = Tuple[int, ...]

Number = Union[int, float, Fraction]

__all__ = [
    "CFString",
    "ConvergentPair",
    "as_cfstring",
    "convergent_pair",
    "expansions_of_rational",
    "ll",
    "lt_same_length",
    "matching_index",
    "matching_index_rational",
    "mobius_apply",
    "mobius_derivative",
    "norm1",
    "q_of",
    "value_of",
]


def as_cfstring(digits: Iterable[int]) -> CFString:
    """Validate and freeze a digit sequence into a CF string."""
    S = tuple(int(a) for a in digits)
    if any(a < 1 for a in S):
        raise ValueError(f"CF string digits must be positive integers, got {S}")
    return S


@dataclass(frozen=True)
class ConvergentPair:
    """The last two convergents p_{n-1}/q_{n-1}, p_n/q_n of a CF string.

    Encodes the Moebius map of the string as an integer matrix; the
    determinant identity q_n*p_{n-1} - p_n*q_{n-1} = (-1)^n holds by
    construction and is asserted.
    """

    p_prev: int
    q_prev: int
    p: int
    q: int
    n: int  # number of digits consumed

    def __post_init__(self) -> None:
        det = self.q * self.p_prev - self.p * self.q_prev
        if det != (-1) ** self.n:
            raise AssertionError(f"convergent determinant {det} != (-1)^{self.n}")

    @property
    def determinant(self) -> int:
        return self.q * self.p_prev - self.p * self.q_prev


@lru_cache(maxsize=None)
def convergent_pair(S: CFString) -> ConvergentPair:
    """Convergent pair of ``[0; S]``; the empty string gives the identity map."""
    p_prev, q_prev, p, q = 1, 0, 0, 1
    for a in S:
        if a < 1:
            raise ValueError(f"CF string digits must be positive integers, got {S}")
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
    return ConvergentPair(p_prev, q_prev, p, q, len(S))


def value_of(S: Sequence[int]) -> Fraction:
    """Exact value of ``[0; S]`` in lowest terms."""
    S = as_cfstring(S)
    if not S:
        raise ValueError("value_of requires a non-empty string")
    cp = convergent_pair(S)
    return Fraction(cp.p, cp.q)


def q_of(S: Sequence[int]) -> int:
    """Denominator of the rational ``[0; S]`` (in lowest terms)."""
    S = as_cfstring(S)
    if not S:
        raise ValueError("q_of requires a non-empty string")
    return convergent_pair(S).q


def norm1(S: Sequence[int]) -> int:
    """Digit sum of the string (the substitution-multiplicative norm)."""
    return sum(as_cfstring(S))


def _first_difference(S: CFString, T: CFString) -> int:
    """Index of the first differing digit, or min(len) if one prefixes the other."""
    n = min(len(S), len(T))
    for k in range(n):
        if S[k] != T[k]:
            return k
    return n


def lt_same_length(S: Sequence[int], T: Sequence[int]) -> bool:
    """The total alternating order ``S < T`` on strings of equal length.

    At the first differing index k (0-based) the comparison flips with the
    parity of k: digits at even k compare reversed, digits at odd k compare
    plainly.  Agrees with the value order of [0; S X] vs [0; T X] for every
    common infinite tail X; irreflexive.
    """
    S, T = as_cfstring(S), as_cfstring(T)
    if len(S) != len(T):
        raise ValueError(f"lt_same_length needs equal lengths, got {len(S)} and {len(T)}")
    k = _first_difference(S, T)
    if k == len(S):
        return False
    if k % 2 == 0:
        return S[k] > T[k]
    return S[k] < T[k]


def ll(S: Sequence[int], T: Sequence[int]) -> bool:
    """The any-length order ``S << T``.

    True iff the strings differ at some index before either ends and the
    alternating comparison of ``lt_same_length`` holds there.  When one
    string is a prefix of the other the two are incomparable and the
    function returns False.  ``S << T`` implies [0; S X] < [0; T Y] for all
    infinite tails X, Y.
    """
    S, T = as_cfstring(S), as_cfstring(T)
    if not S or not T:
        raise ValueError("ll requires non-empty strings")
    k = _first_difference(S, T)
    if k >= min(len(S), len(T)):
        return False
    if k % 2 == 0:
        return S[k] > T[k]
    return S[k] < T[k]


def matching_index(S: Sequence[int]) -> int:
    """Alternating digit sum a1 - a2 + a3 - ... of the string.

    Behaves under concatenation as ``matching_index(A + B) ==
    matching_index(A) + (-1)**len(A) * matching_index(B)``.
    """
    S = as_cfstring(S)
    return sum(a if j % 2 == 0 else -a for j, a in enumerate(S))


def matching_index_rational(r: Fraction) -> int:
    """Alternating digit sum of the even-length expansion of r in (0, 1)."""
    S0, _ = expansions_of_rational(r)
    return matching_index(S0)


@lru_cache(maxsize=None)
def _expansions_cached(num: int, den: int) -> Tuple[CFString, CFString]:
    digits = []
    a, b = num, den
    while a:
        q, rem = divmod(b, a)
        digits.append(q)
        a, b = rem, a
    canonical = tuple(digits)
    # The Euclidean expansion of a rational in (0, 1) always ends with a
    # digit >= 2; the twin expansion splits that digit into (a-1, 1).
    if canonical[-1] < 2:
        raise AssertionError(f"canonical expansion of {num}/{den} ends in 1")
    twin = canonical[:-1] + (canonical[-1] - 1, 1)
    if len(canonical) % 2 == 0:
        return canonical, twin
    return twin, canonical


def expansions_of_rational(r: Fraction) -> Tuple[CFString, CFString]:
    """The even-length and odd-length CF expansions (S0, S1) of r in (0, 1).

    Both strings have value r; they differ only in the tail, one ending
    ``(..., a)`` with a >= 2 and the other ``(..., a-1, 1)``.  Returned as
    (S0, S1) with len(S0) even and len(S1) odd.
    """
    r = Fraction(r)
    if not (0 < r < 1):
        raise ValueError(f"expansions are defined for rationals in (0, 1), got {r}")
    return _expansions_cached(r.numerator, r.denominator)


def mobius_apply(S: Sequence[int], x):
    """Apply the Moebius map of the string: x -> (p_prev*x + p)/(q_prev*x + q).

    Sends y to the value [0; S, (CF of y)]; the empty string is the identity.
    Works for Fraction/int (exact), float, and any value supporting the
    arithmetic (e.g. quadratic surds).  Monotone increasing iff len(S) is
    even.
    """
    S = as_cfstring(S)
    cp = convergent_pair(S)
    if isinstance(x, int):
        x = Fraction(x)
    num = cp.p_prev * x + cp.p
    den = cp.q_prev * x + cp.q
    return num / den


def mobius_derivative(S: Sequence[int], x):
    """Magnitude of the derivative of the Moebius map at x: 1/(q_prev*x + q)^2.

    For x in [0, 1] this lies in [1/(4*q_of(S)**2), 1/q_of(S)**2].
    """
    S = as_cfstring(S)
    cp = convergent_pair(S)
    if isinstance(x, int):
        x = Fraction(x)
    den = cp.q_prev * x + cp.q
    return 1 / (den * den)
