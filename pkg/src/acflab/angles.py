"""Binary angles attached to CF parameters, and the rays they code.

A parameter x = [0;a1,a2,...] is coded by the binary angle whose
expansion starts with a single 0 and then alternates runs: a1 ones, a2
zeros, a3 ones, and so on.  The coding reverses order (larger parameters
get smaller angles), sends the golden mean to 0.(01) = 1/3 and 0 itself
to 0.0(1) = 1/2, and intertwines two dynamical systems: the CF shift on
digit streams and angle doubling on the circle.

Angles are kept *syntactically*, as an explicit preperiod and period of
bits.  The two expansions of a dyadic rational (0.0(1) and 0.1(0)) stay
distinct objects with equal value; collapsing them would break the
run-length coding, which is exactly the information a ray carries.

Each maximal interval generator r contributes a substitution pair
(Sigma0, Sigma1) of equal-length complementary bit words, the angle
counterpart of its two CF expansions.  Substituting them into an angle
bitwise mirrors tuning by r on parameters: for irrational x (and x = 0)
the square commutes exactly; at rational x it genuinely fails, because
tuning jumps across the gap that the angle substitution fills in
continuously.  ``is_real_ray`` tests the exact tent-map criterion that
characterizes angles whose rays land on the real slice.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

from .cfstrings import CFString, as_cfstring, expansions_of_rational, norm1
from .intervals import is_extremal
from .surds import EventuallyPeriodicCF, Surd, cf_of_surd
from .tuning import tau_string, tau_value

__all__ = [
    "BinaryAngle",
    "commutation_check",
    "is_real_ray",
    "phi",
    "phi_prefix",
    "root_angles",
    "tau_W",
]

Bits = Tuple[int, ...]


def _check_bits(bits: Sequence[int], what: str) -> Bits:
    bits = tuple(bits)
    if any(b not in (0, 1) for b in bits):
        raise ValueError(f"{what} must consist of bits, got {bits}")
    return bits


@dataclass(frozen=True)
class BinaryAngle:
    """An eventually periodic binary expansion 0.pre(per), kept verbatim.

    The period is never empty; terminating expansions carry period (0,).
    Normalization is purely syntactic: the period is reduced to its
    primitive root and the preperiod to minimal length, but value-equal
    dyadic twins such as 0.0(1) and 0.1(0) are *not* identified.
    """

    pre: Bits
    per: Bits

    def __post_init__(self):
        pre = _check_bits(self.pre, "preperiod")
        per = _check_bits(self.per, "period")
        if not per:
            raise ValueError("period must be non-empty; use (0,) for terminating angles")
        for d in range(1, len(per)):
            if len(per) % d == 0 and per == per[:d] * (len(per) // d):
                per = per[:d]
                break
        while pre and pre[-1] == per[-1]:
            pre = pre[:-1]
            per = (per[-1],) + per[:-1]
        object.__setattr__(self, "pre", pre)
        object.__setattr__(self, "per", per)

    @classmethod
    def from_fraction(cls, value: Fraction) -> "BinaryAngle":
        """The binary expansion of a rational in [0, 1].

        Dyadic rationals come out in terminating form (period (0,)),
        matching how angles of rational parameters are written here.
        """
        value = Fraction(value)
        if not 0 <= value <= 1:
            raise ValueError(f"angle must lie in [0, 1], got {value}")
        num, den = value.numerator, value.denominator
        if num == den:
            return cls((), (1,))
        bits = []
        seen = {}
        while num not in seen:
            seen[num] = len(bits)
            num *= 2
            bits.append(num // den)
            num -= bits[-1] * den
        start = seen[num]
        return cls(tuple(bits[:start]), tuple(bits[start:]))

    def bit(self, i: int) -> int:
        """The i-th bit after the point, 0-indexed."""
        if i < len(self.pre):
            return self.pre[i]
        return self.per[(i - len(self.pre)) % len(self.per)]

    def value(self) -> Fraction:
        p, m = len(self.pre), len(self.per)
        head = sum(b << (p - 1 - i) for i, b in enumerate(self.pre))
        tail = sum(b << (m - 1 - i) for i, b in enumerate(self.per))
        return (head + Fraction(tail, (1 << m) - 1)) / (1 << p)

    def __float__(self) -> float:
        return float(self.value())

    def __str__(self) -> str:
        return "0." + "".join(map(str, self.pre)) + "(" + "".join(map(str, self.per)) + ")"


# -- the digit-run coding ------------------------------------------------

AngleArgument = Union[int, float, Fraction, Surd, EventuallyPeriodicCF]


def _run_bits(digits: Sequence[int], first_position: int) -> list:
    """Digit a at 1-based position j contributes a run of a copies of
    (j mod 2): ones at odd positions, zeros at even ones."""
    out = []
    for offset, d in enumerate(digits):
        out.extend([(first_position + offset) % 2] * d)
    return out


def phi(x: AngleArgument) -> BinaryAngle:
    """The angle coding a parameter in [0, 1]: a leading 0 bit, then the
    CF digits as alternating runs.  Order-reversing; phi(0) = 0.0(1) and
    rationals take the runs of their odd-length expansion, terminating."""
    if isinstance(x, EventuallyPeriodicCF):
        x = x.value()
    if isinstance(x, Surd) and x.is_rational:
        x = x.as_fraction()
    if isinstance(x, Surd):
        cf = cf_of_surd(x)
        pre_digits, per_digits = cf.preperiod, cf.period
        pre = [0] + _run_bits(pre_digits, 1)
        if len(per_digits) % 2:
            per_digits = per_digits + per_digits  # realign run parity
        per = _run_bits(per_digits, len(pre_digits) + 1)
        return BinaryAngle(tuple(pre), tuple(per))
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise ValueError(f"phi needs a parameter in [0, 1], got {x}")
    if x == 0:
        return BinaryAngle((0,), (1,))
    if x == 1:
        return BinaryAngle((0, 1), (0,))
    odd_expansion = expansions_of_rational(x)[1]
    return BinaryAngle(tuple([0] + _run_bits(odd_expansion, 1)), (0,))


def phi_prefix(digits: Sequence[int]) -> Bits:
    """The angle bits determined by a finite CF digit prefix."""
    digits = as_cfstring(digits)
    return tuple([0] + _run_bits(digits, 1))


def root_angles(r: Fraction) -> Tuple[Bits, Bits]:
    """The substitution pair (Sigma0, Sigma1) of a maximal interval
    generator: the runs of either expansion of r with the final run
    shortened by one bit, and its bitwise complement.  Both words have
    length norm1(r), and both expansions of r give the same pair."""
    r = Fraction(r)
    if not is_extremal(r):
        raise ValueError(f"{r} does not index a maximal interval")
    S0, S1 = expansions_of_rational(r)

    def word(S: CFString) -> Bits:
        trimmed = S[:-1] + (S[-1] - 1,)
        return tuple([0] + _run_bits(trimmed, 1))

    sigma0 = word(S0)
    assert sigma0 == word(S1)  # the twin expansions agree after trimming
    assert len(sigma0) == norm1(S0)
    sigma1 = tuple(1 - b for b in sigma0)
    return sigma0, sigma1


def _substitute(sigma0: Bits, sigma1: Bits, bits: Sequence[int]) -> Bits:
    out = []
    for b in bits:
        out.extend(sigma1 if b else sigma0)
    return tuple(out)


def tau_W(sigma0: Bits, sigma1: Bits, theta: BinaryAngle) -> BinaryAngle:
    """Substitute a window's bit pair into an angle, bit by bit.

    This is tuning read on angles: it maps 0.(0) to 0.(Sigma0) and sends
    phi(x) to phi(tau_r(x)) for irrational x and for x = 0.
    """
    sigma0 = _check_bits(sigma0, "Sigma0")
    sigma1 = _check_bits(sigma1, "Sigma1")
    if not sigma0 or len(sigma0) != len(sigma1):
        raise ValueError("substitution words must be non-empty and of equal length")
    return BinaryAngle(
        _substitute(sigma0, sigma1, theta.pre),
        _substitute(sigma0, sigma1, theta.per),
    )


# -- real rays -----------------------------------------------------------


def _tent(theta: BinaryAngle) -> BinaryAngle:
    """The tent map T(x) = min(2x, 2-2x), exact on angle representations."""
    lead = theta.bit(0)
    if theta.pre:
        pre, per = theta.pre[1:], theta.per
    else:
        pre, per = (), theta.per[1:] + theta.per[:1]
    if lead:
        pre = tuple(1 - b for b in pre)
        per = tuple(1 - b for b in per)
    return BinaryAngle(pre, per)


def is_real_ray(theta: BinaryAngle, k_max: Optional[int] = None) -> bool:
    """Whether the ray at angle theta lands on the real slice: every tent
    map iterate T^{k+1}(theta) must stay at or below T(theta).

    The orbit of an eventually periodic angle is finite, so the default
    runs to the first repeat; an explicit k_max must cover at least one
    full representation length.
    """
    if k_max is not None and k_max < len(theta.pre) + len(theta.per):
        raise ValueError(
            f"k_max={k_max} is shorter than the representation of {theta}"
        )
    ceiling = _tent(theta)
    bound = ceiling.value()
    current = ceiling
    seen = {current}
    steps = 0
    while k_max is None or steps < k_max:
        current = _tent(current)
        steps += 1
        if current.value() > bound:
            return False
        if current in seen:
            break
        seen.add(current)
    return True


# -- commutation of tuning and substitution -------------------------------


def commutation_check(r: Fraction, x, bits: int = 40) -> bool:
    """Compare tau_W(Sigma0, Sigma1, phi(x)) with phi(tau_r(x)) on the
    first ``bits`` binary digits.

    x may be 0, an irrational surd or eventually periodic CF in (0, 1),
    or a tuple of CF digits (compared on the bits both sides determine).
    Nonzero rationals are rejected: the two sides genuinely differ there,
    tuning being discontinuous across rational parameters.
    """
    if bits < 1:
        raise ValueError("bits must be positive")
    r = Fraction(r)
    sigma0, sigma1 = root_angles(r)
    if isinstance(x, tuple):
        lhs = _substitute(sigma0, sigma1, phi_prefix(x))
        rhs = phi_prefix(tau_string(r, x))
        n = min(len(lhs), len(rhs), bits)
        return lhs[:n] == rhs[:n]
    if isinstance(x, EventuallyPeriodicCF):
        x = x.value()
    if isinstance(x, Surd) and x.is_rational:
        x = x.as_fraction()
    if not isinstance(x, Surd):
        x = Fraction(x)
        if x != 0:
            raise ValueError(
                "commutation fails at nonzero rational parameters (tuning "
                "jumps there); pass 0, an irrational, or a digit prefix"
            )
    lhs_angle = tau_W(sigma0, sigma1, phi(x))
    rhs_angle = phi(tau_value(r, x))
    if lhs_angle == rhs_angle:
        return True
    return all(lhs_angle.bit(i) == rhs_angle.bit(i) for i in range(bits))
