"""Critical-orbit dynamics and entropy estimation for the interval maps.

Each parameter ``alpha`` in (0, 1] defines a map of [alpha-1, alpha] sending
``x`` to ``1/|x| - c`` with branch digit ``c = floor(1/|x| + 1 - alpha)``;
zero is an absorbing fixed point and ``alpha = 1`` recovers the classical
digit-shift map on [0, 1].

Two independent jobs live here:

* exact orbit bookkeeping for the two critical points ``alpha`` and
  ``alpha - 1``, including verification of the orbit collision that holds
  throughout a quadratic interval (`verify_matching`, `run_matching_survey`);
* a seeded Monte Carlo estimator of the metric entropy via the average
  expansion rate ``(2/n) * sum(log 1/|x_k|)`` along a long orbit
  (`entropy_estimate`, `entropy_scan`, `write_scan_csv`).

The Monte Carlo paths are deterministic: every replica draws from its own
stream spawned from the root seed, so results do not depend on scheduling,
and the compiled kernel and the pure-Python fallback consume draws in the
same order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import IO, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .intervals import build_interval, enumerate_QE
from .surds import Surd, exact_floor

__all__ = [
    "OrbitPoint",
    "t_alpha_step",
    "orbit",
    "nm_exponents",
    "MatchOutcome",
    "verify_matching",
    "MatchingSurvey",
    "run_matching_survey",
    "EntropyEstimate",
    "entropy_estimate",
    "entropy_scan",
    "write_scan_csv",
    "SCAN_CSV_COLUMNS",
]

ExactNumber = Union[int, Fraction, Surd]

# ---------------------------------------------------------------------------
# the map, exactly


def _as_exact(x) -> ExactNumber:
    """Coerce to an exact number; floats convert via their exact binary value."""
    if isinstance(x, (int, Fraction, Surd)):
        return x
    if isinstance(x, float):
        return Fraction(x)
    raise TypeError(f"expected an exact number, got {type(x).__name__}")


def t_alpha_step(x, alpha):
    """Apply the map once; return ``(image, digit)``.

    ``digit`` is the branch index ``c >= 1`` used, or ``None`` when ``x == 0``
    (the absorbing fixed point).  Exact inputs stay exact: Fractions map to
    Fractions and quadratic irrationals stay in their field.
    """
    if x == 0:
        return x, None
    ax = -x if x < 0 else x
    inv = 1 / ax if isinstance(ax, Surd) else Fraction(1, 1) / ax
    c = exact_floor(inv + 1 - alpha)
    return inv - c, c


@dataclass(frozen=True)
class OrbitPoint:
    """One step of an orbit: the value reached, the step count, and the
    branch digit used to get there (``None`` at step 0 and at the absorber)."""

    value: ExactNumber
    step: int
    digit: Optional[int]


def orbit(alpha, x0, steps: int) -> List[OrbitPoint]:
    """Exact forward orbit ``[x0, T(x0), ..., T^steps(x0)]`` with digits."""
    alpha = _as_exact(alpha)
    x = _as_exact(x0)
    if not 0 < alpha <= 1:
        raise ValueError("parameter must lie in (0, 1]")
    if x < alpha - 1 or x > alpha:
        raise ValueError("starting point must lie in [alpha - 1, alpha]")
    points = [OrbitPoint(x, 0, None)]
    for k in range(1, steps + 1):
        x, c = t_alpha_step(x, alpha)
        points.append(OrbitPoint(x, k, c))
    return points


# ---------------------------------------------------------------------------
# matching of the two critical orbits


def nm_exponents(r) -> Tuple[int, int]:
    """Collision exponents ``(N, M)`` attached to the interval of ``r``.

    ``M`` sums the odd-position digits of the even-length expansion of ``r``
    and ``N`` the even-position digits; throughout the interval of ``r`` the
    orbit of ``alpha`` collides after ``N + 1`` steps with the orbit of
    ``alpha - 1`` after ``M + 1`` steps.
    """
    interval = build_interval(Fraction(r))
    return interval.N, interval.M


class MatchOutcome(Enum):
    """Result of checking the critical-orbit collision at one parameter."""

    VERIFIED = "Verified"
    ORBIT_HIT_ZERO = "OrbitHitZero"
    MISMATCH = "Mismatch"


def _iterate(alpha, x, steps: int):
    """Run ``steps`` exact map applications; flag a zero hit before the end."""
    hit_zero_early = False
    for k in range(steps):
        x, _ = t_alpha_step(x, alpha)
        if x == 0 and k < steps - 1:
            hit_zero_early = True
    return x, hit_zero_early


def verify_matching(r, alpha) -> MatchOutcome:
    """Check ``T^(N+1)(alpha) == T^(M+1)(alpha - 1)`` for ``alpha`` in I_r.

    All arithmetic is exact.  ``OrbitHitZero`` means one critical orbit fell
    into the absorbing fixed point before its final step, which makes the
    comparison vacuous at this particular parameter; callers should retry at
    a nearby sample point.  ``Mismatch`` is an honest counterexample.
    """
    r = Fraction(r)
    interval = build_interval(r)
    a = _as_exact(alpha)
    if not interval.contains(a):
        raise ValueError(f"alpha must lie inside the interval of {r}")
    upper, upper_zero = _iterate(a, a, interval.N + 1)
    lower, lower_zero = _iterate(a, a - 1, interval.M + 1)
    if upper_zero or lower_zero:
        return MatchOutcome.ORBIT_HIT_ZERO
    if upper == lower:
        return MatchOutcome.VERIFIED
    return MatchOutcome.MISMATCH


@dataclass(frozen=True)
class MatchingSurvey:
    """Aggregate result of verifying matching across a family of intervals."""

    q_max: int
    intervals: int
    points_verified: int
    zero_hits_retried: int
    mismatches: int
    unresolved: Tuple[Fraction, ...]

    @property
    def all_verified(self) -> bool:
        return self.mismatches == 0 and not self.unresolved


def run_matching_survey(
    q_max: int, points_per_interval: int = 3, max_retries: int = 8
) -> MatchingSurvey:
    """Verify matching at sample points of every maximal interval with
    denominator up to ``q_max``.

    A sample point whose critical orbit dies at zero is replaced by the next
    nested sample point; ``zero_hits_retried`` counts those replacements and
    ``unresolved`` lists any pseudocenters where retries ran out.
    """
    intervals = 0
    verified = 0
    retried = 0
    mismatches = 0
    unresolved: List[Fraction] = []
    for interval in enumerate_QE(q_max):
        r = interval.r
        intervals += 1
        candidates = iter(interval.sample_points(points_per_interval + max_retries))
        good = 0
        try:
            while good < points_per_interval:
                outcome = verify_matching(r, next(candidates))
                if outcome is MatchOutcome.VERIFIED:
                    good += 1
                elif outcome is MatchOutcome.ORBIT_HIT_ZERO:
                    retried += 1
                else:
                    mismatches += 1
                    break
        except StopIteration:
            unresolved.append(r)
        verified += good
    return MatchingSurvey(
        q_max=q_max,
        intervals=intervals,
        points_verified=verified,
        zero_hits_retried=retried,
        mismatches=mismatches,
        unresolved=tuple(unresolved),
    )


# ---------------------------------------------------------------------------
# entropy by Monte Carlo expansion-rate averaging

_RESTART_EPS = 1e-15
_RANGE_TOL = 1e-9
_POOL_SIZE = 64


def _entropy_core(alpha, iterations, burn_in, x0, pool):
    """Orbit loop shared by the compiled kernel and the Python fallback.

    Returns ``(sum_log, restarts, range_violations)`` where ``sum_log`` adds
    ``log|x_k|`` over the ``iterations`` post-burn-in points at which the map
    is applied.  Orbits that land within ``1e-15`` of the absorber restart
    from a pre-drawn pool (wrapping around if exhausted) so the estimate
    never divides by zero; images outside ``[alpha-1, alpha]`` by more than
    ``1e-9`` are counted as range violations.
    """
    x = x0
    pool_n = pool.shape[0]
    pool_i = 0
    restarts = 0
    violations = 0
    sum_log = 0.0
    total = burn_in + iterations
    for k in range(total):
        ax = x if x >= 0.0 else -x
        if ax < 1e-15:
            x = pool[pool_i % pool_n]
            pool_i += 1
            restarts += 1
            ax = x if x >= 0.0 else -x
        if k >= burn_in:
            sum_log += math.log(ax)
        inv = 1.0 / ax
        c = math.floor(inv + 1.0 - alpha)
        x = inv - c
        if x < alpha - 1.0 - 1e-9 or x > alpha + 1e-9:
            violations += 1
    return sum_log, restarts, violations


try:  # compiled kernel; the pure-Python twin keeps identical draw order
    from numba import njit

    _entropy_kernel = njit(cache=True)(_entropy_core)
    HAVE_COMPILED_KERNEL = True
except ImportError:  # pragma: no cover - exercised only without numba
    _entropy_kernel = _entropy_core
    HAVE_COMPILED_KERNEL = False


def _draw_start(rng: np.random.Generator, alpha: float) -> float:
    """One uniform draw from (alpha-1, alpha) bounded away from zero."""
    lo, hi = alpha - 1.0, alpha
    while True:
        u = float(rng.uniform(lo, hi))
        if abs(u) >= 1e-9 and lo < u < hi:
            return u


@dataclass(frozen=True)
class EntropyEstimate:
    """Monte Carlo entropy estimate at one parameter.

    ``value`` averages the per-replica estimates and ``stderr`` is their
    sample standard deviation divided by ``sqrt(replicas)``; ``restarts``
    and ``range_violations`` are totals across replicas.
    """

    alpha: float
    value: float
    stderr: float
    iterations: int
    burn_in: int
    replicas: int
    restarts: int
    range_violations: int
    seed: int
    replica_values: Tuple[float, ...]


def entropy_estimate(
    alpha,
    iterations,
    *,
    burn_in: int = 1000,
    seed: int = 0,
    replicas: int = 8,
    use_compiled: Optional[bool] = None,
) -> EntropyEstimate:
    """Estimate the entropy of the map at ``alpha`` from ``iterations``
    post-burn-in steps in each of ``replicas`` independent orbits.

    Each replica owns a stream spawned from ``seed``, so the result is a
    deterministic function of ``(alpha, iterations, burn_in, seed,
    replicas)``.  At least eight replicas are required so the standard
    error is meaningful.
    """
    alpha = float(alpha)
    if not 0.0 < alpha <= 1.0:
        raise ValueError("alpha must lie in (0, 1]")
    iterations = int(iterations)
    if iterations <= 0:
        raise ValueError("iterations must be positive")
    burn_in = int(burn_in)
    if burn_in < 0:
        raise ValueError("burn_in must be nonnegative")
    if replicas < 8:
        raise ValueError("at least 8 replicas are required")
    if use_compiled is None:
        kernel = _entropy_kernel
    elif use_compiled:
        if not HAVE_COMPILED_KERNEL:
            raise RuntimeError("compiled kernel unavailable")
        kernel = _entropy_kernel
    else:
        kernel = _entropy_core

    values = []
    restarts = 0
    violations = 0
    for child in np.random.SeedSequence(seed).spawn(replicas):
        rng = np.random.default_rng(child)
        x0 = _draw_start(rng, alpha)
        pool = np.array(
            [_draw_start(rng, alpha) for _ in range(_POOL_SIZE)], dtype=np.float64
        )
        sum_log, rst, vio = kernel(alpha, iterations, burn_in, x0, pool)
        values.append(-2.0 * float(sum_log) / iterations)
        restarts += int(rst)
        violations += int(vio)
    arr = np.asarray(values)
    return EntropyEstimate(
        alpha=alpha,
        value=float(arr.mean()),
        stderr=float(arr.std(ddof=1) / math.sqrt(replicas)),
        iterations=iterations,
        burn_in=burn_in,
        replicas=replicas,
        restarts=restarts,
        range_violations=violations,
        seed=int(seed),
        replica_values=tuple(float(v) for v in values),
    )


def _scan_row(task) -> EntropyEstimate:
    alpha, iterations, burn_in, seed, replicas, use_compiled = task
    return entropy_estimate(
        alpha,
        iterations,
        burn_in=burn_in,
        seed=seed,
        replicas=replicas,
        use_compiled=use_compiled,
    )


def entropy_scan(
    alphas: Iterable,
    iterations,
    *,
    burn_in: int = 1000,
    seed: int = 0,
    replicas: int = 8,
    use_compiled: Optional[bool] = None,
    jobs: int = 1,
) -> List[EntropyEstimate]:
    """Entropy estimates along a sweep, sorted by ``alpha``.

    Row seeds are derived from the root seed up front, so every row is
    reproducible in isolation; with ``jobs > 1`` rows are computed by a
    bounded process pool, and neither results nor their order depend on
    scheduling.
    """
    if jobs < 1:
        raise ValueError("jobs must be at least 1")
    grid = sorted(float(a) for a in alphas)
    if not grid:
        return []
    row_seeds = np.random.SeedSequence(seed).generate_state(len(grid), dtype=np.uint64)
    tasks = [
        (a, iterations, burn_in, int(row_seeds[i]), replicas, use_compiled)
        for i, a in enumerate(grid)
    ]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_scan_row, tasks))
    return [_scan_row(task) for task in tasks]


SCAN_CSV_COLUMNS = ("alpha", "h", "stderr", "iterations", "restarts", "seed")


def _sig12(x: float) -> str:
    return format(float(x), ".12g")


def write_scan_csv(
    rows: Sequence[EntropyEstimate],
    fh: IO[str],
    *,
    config: Optional[dict] = None,
    timestamp: Optional[str] = None,
) -> None:
    """Write scan rows as CSV with ``# key=value`` comment headers.

    Floats carry 12 significant digits.  ``timestamp`` is written only when
    given, so deterministic output is the default; pass an ISO string (or
    anything) to stamp the file.
    """
    if timestamp is not None:
        fh.write(f"# generated={timestamp}\n")
    for key in sorted(config or {}):
        fh.write(f"# {key}={config[key]}\n")
    fh.write("# total_range_violations=%d\n" % sum(r.range_violations for r in rows))
    fh.write(",".join(SCAN_CSV_COLUMNS) + "\n")
    for row in rows:
        fh.write(
            ",".join(
                (
                    _sig12(row.alpha),
                    _sig12(row.value),
                    _sig12(row.stderr),
                    str(row.iterations),
                    str(row.restarts),
                    str(row.seed),
                )
            )
            + "\n"
        )
