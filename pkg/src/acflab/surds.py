"""Exact arithmetic in real quadratic fields.

A :class:`Surd` is a number (a + b*sqrt(d))/c held in a canonical integer
form, supporting field arithmetic, exact sign/comparison/floor, and the
two directions of the classical correspondence with eventually periodic
continued fractions:

* :func:`surd_from_periodic` -- value of ``[0; preperiod, (period)]``,
* :func:`cf_of_surd` -- minimal preperiod + primitive period of a surd.

Comparisons between surds from *different* quadratic fields fall back to
interval refinement with integer square roots; they always terminate
because two irrationals from distinct fields are never equal.

The CF literal syntax ``[0;a1,a2,(p1,...,pk)]`` used across the package is
parsed and formatted here.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Tuple, Union

from .cfstrings import CFString, as_cfstring, convergent_pair, value_of

__all__ = [
    "GOLDEN_MEAN",
    "EventuallyPeriodicCF",
    "Surd",
    "cf_of_surd",
    "exact_floor",
    "format_cf_literal",
    "parse_cf_literal",
    "surd_compare",
    "surd_floor",
    "surd_from_periodic",
    "surd_recip_shift",
    "sqrt_surd",
]

Real = Union[int, Fraction, "Surd"]


@lru_cache(maxsize=None)
def _squarefree_split(n: int) -> Tuple[int, int]:
    """n = m**2 * s with s squarefree; returns (m, s).  n must be positive."""
    if n <= 0:
        raise ValueError(f"need a positive radicand, got {n}")
    if n == 1:
        return 1, 1
    from sympy import factorint  # deferred: heavy import, only needed here

    m, s = 1, 1
    for prime, exp in factorint(n).items():
        m *= prime ** (exp // 2)
        if exp % 2:
            s *= prime
    # factorint may hand back gmpy2/sympy integers for large inputs; those
    # would leak into Surd fields and break float conversion downstream
    return int(m), int(s)


class Surd:
    """Canonical (a + b*sqrt(d))/c with integer a, b, c and squarefree d.

    Invariants after construction: c > 0, gcd(a, b, c) == 1, d squarefree,
    and d == 1 exactly when b == 0 (the rational case).  Two Surds are
    equal iff their normalized tuples coincide, so instances can be used
    as dict keys for cycle detection.
    """

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: int, b: int, c: int, d: int):
        a, b, c, d = int(a), int(b), int(c), int(d)
        if c == 0:
            raise ZeroDivisionError("surd with zero denominator")
        if d <= 0:
            raise ValueError(f"radicand must be positive, got {d}")
        m, s = _squarefree_split(d)
        b, d = b * m, s
        if d == 1:
            a, b = a + b, 0
            d = 1
        if b == 0:
            d = 1
        if c < 0:
            a, b, c = -a, -b, -c
        g = gcd(gcd(abs(a), abs(b)), c)
        object.__setattr__(self, "a", a // g)
        object.__setattr__(self, "b", b // g)
        object.__setattr__(self, "c", c // g)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("Surd is immutable")

    @classmethod
    def from_rational(cls, r: Union[int, Fraction]) -> "Surd":
        r = Fraction(r)
        return cls(r.numerator, 0, r.denominator, 1)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self!r} is irrational")
        return Fraction(self.a, self.c)

    def conjugate(self) -> "Surd":
        return Surd(self.a, -self.b, self.c, self.d)

    # -- arithmetic ---------------------------------------------------

    @staticmethod
    def _coerce(x) -> "Surd":
        if isinstance(x, Surd):
            return x
        if isinstance(x, (int, Fraction)):
            return Surd.from_rational(x)
        return NotImplemented  # type: ignore[return-value]

    def _common_d(self, other: "Surd") -> int:
        if self.b and other.b and self.d != other.d:
            raise TypeError(
                f"arithmetic across quadratic fields: sqrt({self.d}) vs sqrt({other.d})"
            )
        return self.d if self.b else other.d

    def __add__(self, other) -> "Surd":
        other = Surd._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = self._common_d(other)
        return Surd(
            self.a * other.c + other.a * self.c,
            self.b * other.c + other.b * self.c,
            self.c * other.c,
            d,
        )

    __radd__ = __add__

    def __neg__(self) -> "Surd":
        return Surd(-self.a, -self.b, self.c, self.d)

    def __sub__(self, other) -> "Surd":
        other = Surd._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Surd":
        return (-self) + other

    def __mul__(self, other) -> "Surd":
        other = Surd._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = self._common_d(other)
        return Surd(
            self.a * other.a + self.b * other.b * d,
            self.a * other.b + self.b * other.a,
            self.c * other.c,
            d,
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Surd":
        other = Surd._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = self._common_d(other)
        # multiply by the conjugate of the divisor
        norm = other.a * other.a - other.b * other.b * d
        if norm == 0:
            raise ZeroDivisionError("division by zero surd")
        num = self * Surd(other.a, -other.b, 1, d)
        return Surd(num.a * other.c, num.b * other.c, num.c * norm, d)

    def __rtruediv__(self, other) -> "Surd":
        other = Surd._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    # -- order --------------------------------------------------------

    def sign(self) -> int:
        """Exact sign via integer arithmetic only (c > 0 already)."""
        u, v = self.a, self.b
        if u == 0 and v == 0:
            return 0
        if u >= 0 and v >= 0:
            return 1
        if u <= 0 and v <= 0:
            return -1
        # opposite signs: compare u^2 against v^2 d
        lhs, rhs = u * u, v * v * self.d
        if lhs == rhs:
            return 0  # cannot happen for irrational self, kept for safety
        bigger_is_u = lhs > rhs
        return (1 if u > 0 else -1) if bigger_is_u else (1 if v > 0 else -1)

    def _cmp(self, other) -> int:
        other = Surd._coerce(other)
        if other is NotImplemented:
            return NotImplemented  # type: ignore[return-value]
        if self.b == 0 or other.b == 0 or self.d == other.d:
            return (self - other).sign()
        return _cmp_cross_field(self, other)

    def __eq__(self, other) -> bool:
        if isinstance(other, float):
            return False
        c = self._cmp(other)
        return False if c is NotImplemented else c == 0

    def __lt__(self, other) -> bool:
        c = self._cmp(other)
        if c is NotImplemented:
            return NotImplemented
        return c < 0

    def __le__(self, other) -> bool:
        c = self._cmp(other)
        if c is NotImplemented:
            return NotImplemented
        return c <= 0

    def __gt__(self, other) -> bool:
        c = self._cmp(other)
        if c is NotImplemented:
            return NotImplemented
        return c > 0

    def __ge__(self, other) -> bool:
        c = self._cmp(other)
        if c is NotImplemented:
            return NotImplemented
        return c >= 0

    def __hash__(self) -> int:
        if self.is_rational:
            return hash(Fraction(self.a, self.c))
        return hash((self.a, self.b, self.c, self.d))

    # -- conversions ---------------------------------------------------

    def __float__(self) -> float:
        return (self.a + self.b * math.sqrt(self.d)) / self.c

    def __repr__(self) -> str:
        if self.is_rational:
            return f"Surd({self.a}/{self.c})"
        return f"Surd(({self.a}{self.b:+d}*sqrt({self.d}))/{self.c})"

    def bounds(self, prec: int = 32) -> Tuple[Fraction, Fraction]:
        """Rational lower/upper bounds with gap at most |b|/(c*2^prec)."""
        # isqrt gives floor(sqrt(d)*2^prec) exactly
        s = isqrt(self.d << (2 * prec))
        lo_root, hi_root = Fraction(s, 1 << prec), Fraction(s + 1, 1 << prec)
        if self.b >= 0:
            lo = (self.a + self.b * lo_root) / self.c
            hi = (self.a + self.b * hi_root) / self.c
        else:
            lo = (self.a + self.b * hi_root) / self.c
            hi = (self.a + self.b * lo_root) / self.c
        return lo, hi


def _cmp_cross_field(x: Surd, y: Surd) -> int:
    """Compare surds from distinct fields; they are never equal, so the
    refinement below always separates them."""
    for prec in (32, 64, 128, 256, 512, 1024):
        xlo, xhi = x.bounds(prec)
        ylo, yhi = y.bounds(prec)
        if xhi < ylo:
            return -1
        if yhi < xlo:
            return 1
    raise AssertionError(f"could not separate {x!r} and {y!r}; equal cross-field surds?")


def exact_floor(x: Real) -> int:
    """Floor of an exact number (int, Fraction, or Surd)."""
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator // x.denominator
    if isinstance(x, Surd):
        if x.is_rational:
            return x.a // x.c
        n = math.floor(float(x))
        # the float candidate can be off by one near integers; fix exactly
        while x < n:
            n -= 1
        while x >= n + 1:
            n += 1
        return n
    raise TypeError(f"exact_floor: unsupported type {type(x).__name__}")


def surd_floor(x: Real) -> int:
    """Exact floor; alias of :func:`exact_floor` for the public API."""
    return exact_floor(x)


def surd_compare(x: Real, y: Real) -> int:
    """Three-way exact comparison of ints/Fractions/Surds; -1, 0, or 1."""
    if not isinstance(x, Surd) and not isinstance(y, Surd):
        x, y = Fraction(x), Fraction(y)
        return (x > y) - (x < y)
    sx = x if isinstance(x, Surd) else Surd.from_rational(x)
    return sx._cmp(y)


def surd_recip_shift(x: Real, a: int) -> Real:
    """One digit-extraction step of the continued fraction map: 1/x - a."""
    if isinstance(x, Surd):
        return _surd_recip(x) - a
    x = Fraction(x)
    if x == 0:
        raise ZeroDivisionError("reciprocal of zero")
    return 1 / x - a


def _surd_recip(x: Surd) -> Surd:
    norm = x.a * x.a - x.b * x.b * x.d
    if norm == 0:
        raise ZeroDivisionError("reciprocal of zero surd")
    return Surd(x.a * x.c, -x.b * x.c, norm, x.d)


def sqrt_surd(n: int) -> Surd:
    """sqrt(n) as a Surd (n a positive integer)."""
    return Surd(0, 1, 1, n)


GOLDEN_MEAN = Surd(-1, 1, 2, 5)  # (sqrt(5) - 1)/2 = [0; (1)]


# -- eventually periodic continued fractions --------------------------


@dataclass(frozen=True)
class EventuallyPeriodicCF:
    """A CF ``[0; preperiod, (period)]`` in canonical form.

    Canonical means: the period is primitive (not a power of a shorter
    word) and the preperiod is minimal (its trailing digit never matches
    the period's trailing digit, else the boundary would be slid left).
    An empty period encodes a *finite* CF, i.e. a rational.  Canonical
    form makes syntactic equality coincide with value equality.
    """

    preperiod: CFString
    period: CFString

    def __post_init__(self):
        pre = as_cfstring(self.preperiod)
        per = as_cfstring(self.period)
        if not pre and not per:
            raise ValueError("empty continued fraction")
        if per:
            # primitive period
            n = len(per)
            for m in range(1, n):
                if n % m == 0 and per == per[: m] * (n // m):
                    per = per[:m]
                    n = m
                    break
            # minimal preperiod: slide the period window left over matching digits
            while pre and pre[-1] == per[-1]:
                per = (per[-1],) + per[:-1]
                pre = pre[:-1]
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    @property
    def is_rational(self) -> bool:
        return not self.period

    def value(self) -> Real:
        """Exact value: a Fraction when finite, a Surd otherwise."""
        if self.is_rational:
            return value_of(self.preperiod)
        return surd_from_periodic(self.preperiod, self.period)

    def digit_stream(self):
        """Infinite (or finite, if rational) generator of partial quotients."""
        yield from self.preperiod
        while self.period:
            yield from self.period

    def digit(self, i: int) -> int:
        """0-based i-th partial quotient."""
        if i < len(self.preperiod):
            return self.preperiod[i]
        if not self.period:
            raise IndexError(f"finite CF has only {len(self.preperiod)} digits")
        return self.period[(i - len(self.preperiod)) % len(self.period)]

    def __str__(self) -> str:
        return format_cf_literal(self.preperiod, self.period)


@lru_cache(maxsize=None)
def surd_from_periodic(preperiod: CFString, period: CFString) -> Surd:
    """Exact value of ``[0; preperiod, (period)]`` as a Surd.

    The purely periodic tail y = [0; (period)] satisfies the fixed-point
    quadratic q_prev*y^2 + (q - p_prev)*y - p = 0 of its Moebius matrix;
    the preperiod then acts as a Moebius map on y.  An empty period gives
    a rational-valued Surd.
    """
    preperiod = as_cfstring(preperiod)
    period = as_cfstring(period)
    if not period:
        return Surd.from_rational(value_of(preperiod))
    cp = convergent_pair(period)
    disc = (cp.q - cp.p_prev) ** 2 + 4 * cp.q_prev * cp.p
    y = Surd(cp.p_prev - cp.q, 1, 2 * cp.q_prev, disc)
    if not preperiod:
        return y
    head = convergent_pair(preperiod)
    num = head.p_prev * y + head.p
    den = head.q_prev * y + head.q
    return num / den


def cf_of_surd(x: Surd, max_digits: int = 10_000) -> EventuallyPeriodicCF:
    """Continued fraction ``[0; ...]`` of an irrational surd in (0, 1).

    Iterates the digit-extraction map 1/x - floor(1/x), detecting the
    cycle by first repetition of the normalized surd state; the first
    repeat yields the minimal preperiod and the primitive period directly.
    """
    if x.is_rational:
        raise ValueError("cf_of_surd expects an irrational surd; use expansions_of_rational")
    if not (x.sign() > 0 and (x - 1).sign() < 0):
        raise ValueError(f"cf_of_surd expects x in (0, 1), got {x!r}")
    seen = {}
    digits = []
    state = x
    for _ in range(max_digits):
        key = (state.a, state.b, state.c, state.d)
        if key in seen:
            start = seen[key]
            return EventuallyPeriodicCF(tuple(digits[:start]), tuple(digits[start:]))
        seen[key] = len(digits)
        recip = _surd_recip(state)
        a = exact_floor(recip)
        if a < 1:
            raise AssertionError(f"digit {a} < 1 while expanding {x!r}")
        digits.append(a)
        state = recip - a
    raise RuntimeError(f"no period within {max_digits} digits for {x!r}")


# -- CF literal syntax -------------------------------------------------

_CF_RE = re.compile(r"^\[0;([0-9,]*)(?:\(([0-9,]+)\))?\]$")


def parse_cf_literal(text: str) -> EventuallyPeriodicCF:
    """Parse ``[0;a1,a2,(p1,...,pk)]`` (period optional) into canonical form."""
    s = text.strip().replace(" ", "")
    m = _CF_RE.match(s)
    if not m:
        raise ValueError(f"not a CF literal: {text!r}")
    pre_txt, per_txt = m.group(1), m.group(2)
    pre = tuple(int(t) for t in pre_txt.strip(",").split(",") if t) if pre_txt else ()
    per = tuple(int(t) for t in per_txt.split(",") if t) if per_txt else ()
    return EventuallyPeriodicCF(pre, per)


def format_cf_literal(preperiod, period=()) -> str:
    """Inverse of :func:`parse_cf_literal`."""
    pre = ",".join(str(a) for a in preperiod)
    per = ",".join(str(a) for a in period)
    if per and pre:
        return f"[0;{pre},({per})]"
    if per:
        return f"[0;({per})]"
    return f"[0;{pre}]"
