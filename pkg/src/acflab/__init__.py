"""acflab: a computational laboratory for alpha-continued-fraction entropy.

Exact combinatorics of continued-fraction strings and quadratic intervals,
tuning/renormalization operators, seeded Monte Carlo entropy estimation of
the alpha-CF maps, monotonicity classification of parameters, and the
binary-angle dictionary into the real slice of the Mandelbrot set.
"""

from .angles import (
    BinaryAngle,
    commutation_check,
    is_real_ray,
    phi,
    phi_prefix,
    root_angles,
    tau_W,
)
from .cfstrings import (
    CFString,
    ConvergentPair,
    as_cfstring,
    expansions_of_rational,
    ll,
    lt_same_length,
    matching_index,
    matching_index_rational,
    mobius_apply,
    mobius_derivative,
    norm1,
    q_of,
    value_of,
)
from .classify import (
    DimensionBounds,
    Monotonicity,
    MonotonicityClass,
    PlateauKind,
    PlateauVerdict,
    WitnessFamilies,
    classify_parameter,
    dimension_bounds,
    extend_dominant,
    is_dominant,
    plateau_verdict,
    witness_families,
)
from .dynamics import (
    SCAN_CSV_COLUMNS,
    EntropyEstimate,
    MatchingSurvey,
    MatchOutcome,
    OrbitPoint,
    entropy_estimate,
    entropy_scan,
    nm_exponents,
    orbit,
    run_matching_survey,
    t_alpha_step,
    verify_matching,
    write_scan_csv,
)
from .intervals import (
    QuadraticInterval,
    UndecidedError,
    build_interval,
    enumerate_QE,
    in_B_t,
    in_bifurcation_set,
    is_extremal,
    maximal_interval_containing,
    pseudocenter,
)
from .surds import (
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
)
from .tuning import (
    NestingRelation,
    NestingResult,
    TuningWindow,
    is_untuned,
    tau_string,
    tau_value,
    tuning_window,
    untuned_factorization,
    window_nesting,
)

__version__ = "0.1.0"
