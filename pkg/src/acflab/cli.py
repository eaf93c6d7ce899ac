"""Command-line front end for the alpha-continued-fraction toolkit.

Subcommands
-----------
scan      sweep the entropy estimator over a parameter grid, emit CSV
classify  monotonicity verdict for one parameter, emit JSON
qe        enumerate maximal intervals up to a denominator bound
tune      tuning window, untuned factorization and plateau verdict
match     exhaustive matching survey over maximal intervals
dict      binary-angle operations (commute / phi / angles)
dims      Hausdorff dimension bounds for a pair-block alphabet

Every subcommand is deterministic for a fixed argument list; ``scan``
adds a generation-time header only when ``--timestamp`` is passed.
Exit status: 0 when all requested verifications pass, 1 when a check
fails or a verdict is Undecided, 2 on usage or domain errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from datetime import datetime, timezone
from fractions import Fraction

import numpy as np

from .angles import commutation_check, is_real_ray, phi, root_angles
from .cfstrings import expansions_of_rational
from .classify import (
    Monotonicity,
    classify_parameter,
    dimension_bounds,
    plateau_verdict,
)
from .dynamics import entropy_scan, run_matching_survey, write_scan_csv
from .intervals import enumerate_QE, is_extremal
from .surds import format_cf_literal, parse_cf_literal, surd_from_periodic
from .tuning import tuning_window, untuned_factorization

__all__ = ["main"]


def _parse_parameter(text: str):
    """A parameter from the command line: CF literal or rational.

    ``[0;...]`` literals become their exact value (Fraction or Surd);
    anything else must parse as a Fraction (``1/2``, ``3``, ``0.55`` is
    *not* accepted -- decimals are ambiguous about exactness).
    """
    text = text.strip()
    if text.startswith("["):
        return parse_cf_literal(text).value()
    return Fraction(text)


def _frac(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not a rational: {text!r}")


# ---------------------------------------------------------------------------
# scan


def _cmd_scan(args) -> int:
    if args.window is not None:
        window = tuning_window(_frac(args.window))
        lo, hi = float(window.omega), float(window.alpha0)
    else:
        lo, hi = args.lo, args.hi
    if not 0.0 < lo < hi <= 1.0:
        raise ValueError(f"need 0 < lo < hi <= 1, got lo={lo} hi={hi}")
    if args.points < 2:
        raise ValueError("need at least 2 grid points")
    grid = np.linspace(lo, hi, args.points)
    rows = entropy_scan(
        grid,
        args.iters,
        burn_in=args.burn_in,
        seed=args.seed,
        replicas=args.replicas,
        jobs=args.jobs,
    )
    config = {
        "lo": f"{lo:.12g}",
        "hi": f"{hi:.12g}",
        "points": args.points,
        "iterations": args.iters,
        "burn_in": args.burn_in,
        "replicas": args.replicas,
        "seed": args.seed,
    }
    if args.window is not None:
        config["window"] = args.window
    timestamp = (
        datetime.now(timezone.utc).isoformat(timespec="seconds")
        if args.timestamp
        else None
    )
    if args.out and args.out != "-":
        with open(args.out, "w") as fh:
            write_scan_csv(rows, fh, config=config, timestamp=timestamp)
    else:
        write_scan_csv(rows, sys.stdout, config=config, timestamp=timestamp)
    violations = sum(row.range_violations for row in rows)
    return 0 if violations == 0 else 1


# ---------------------------------------------------------------------------
# classify


def _cmd_classify(args) -> int:
    verdict = classify_parameter(_parse_parameter(args.alpha))
    print(json.dumps(verdict.to_json_dict(), indent=2))
    return 1 if verdict.tag is Monotonicity.UNDECIDED else 0


# ---------------------------------------------------------------------------
# qe


def _cmd_qe(args) -> int:
    intervals = enumerate_QE(args.max_q)
    if args.json:
        print(json.dumps([ivl.to_json_dict() for ivl in intervals], indent=2))
        return 0
    for ivl in intervals:
        doc = ivl.to_json_dict()
        print(
            "r={r} index={index} N={N} M={M} alpha1={alpha1} alpha0={alpha0}".format(
                **doc
            )
        )
    print(f"count={len(intervals)}")
    return 0


# ---------------------------------------------------------------------------
# tune


def _cmd_tune(args) -> int:
    r = _frac(args.r)
    window = tuning_window(r)
    factors = untuned_factorization(r)
    doc = {
        "r": f"{r.numerator}/{r.denominator}",
        "window": window.to_json_dict(),
        "untuned_factors": [f"{f.numerator}/{f.denominator}" for f in factors],
        "plateau": plateau_verdict(r).to_json_dict(),
    }
    print(json.dumps(doc, indent=2))
    return 0


# ---------------------------------------------------------------------------
# match


def _cmd_match(args) -> int:
    survey = run_matching_survey(
        args.max_q, points_per_interval=args.points, max_retries=args.retries
    )
    print(f"q_max={survey.q_max}")
    print(f"intervals={survey.intervals}")
    print(f"points_verified={survey.points_verified}")
    print(f"zero_hits_retried={survey.zero_hits_retried}")
    print(f"mismatches={survey.mismatches}")
    print(f"unresolved={len(survey.unresolved)}")
    print("all Verified" if survey.all_verified else "verification FAILED")
    return 0 if survey.all_verified else 1


# ---------------------------------------------------------------------------
# dict


def _random_surd(rng: random.Random):
    pre = tuple(rng.randint(1, 6) for _ in range(rng.randint(0, 2)))
    per = tuple(rng.randint(1, 6) for _ in range(rng.randint(1, 6)))
    return pre, per, surd_from_periodic(pre, per)


def _cmd_dict_commute(args) -> int:
    r = _frac(args.r)
    if args.samples < 1:
        raise ValueError("need at least 1 sample")
    rng = random.Random(args.seed)
    checks = [("0", commutation_check(r, 0, bits=args.bits))]
    while len(checks) < args.samples:
        pre, per, x = _random_surd(rng)
        checks.append(
            (format_cf_literal(pre, per), commutation_check(r, x, bits=args.bits))
        )
    failures = [label for label, ok in checks if not ok]
    for label, ok in checks:
        print(f"x={label} commutes={ok}")
    print(
        f"r={r.numerator}/{r.denominator} samples={len(checks)} "
        f"bits={args.bits} all_commute={not failures}"
    )
    return 0 if not failures else 1


def _cmd_dict_phi(args) -> int:
    theta = phi(_parse_parameter(args.x))
    value = theta.value()
    print(f"phi={theta}")
    print(f"value={value.numerator}/{value.denominator}")
    print(f"float={float(value):.12g}")
    print(f"real_ray={is_real_ray(theta)}")
    return 0


def _cmd_dict_angles(args) -> int:
    r = _frac(args.r)
    sigma0, sigma1 = root_angles(r)
    print(f"Sigma0={''.join(map(str, sigma0))}")
    print(f"Sigma1={''.join(map(str, sigma1))}")
    print(f"length={len(sigma0)}")
    return 0


# ---------------------------------------------------------------------------
# dims


def _cmd_dims(args) -> int:
    r = _frac(args.r)
    if not is_extremal(r):
        raise ValueError(f"{r} does not index a maximal interval")
    if args.power < 1:
        raise ValueError("power must be at least 1")
    blocks = expansions_of_rational(r)
    words = list(blocks)
    for _ in range(args.power - 1):
        words = [w + b for w in words for b in blocks]
    bounds = dimension_bounds(words)
    doc = {
        "r": f"{r.numerator}/{r.denominator}",
        "power": args.power,
        "alphabet": ["(" + ",".join(map(str, w)) + ")" for w in words],
        "branches": bounds.N,
        "lower": bounds.lower,
        "upper": bounds.upper,
        "below_half": bounds.upper < 0.5,
    }
    if args.json:
        print(json.dumps(doc, indent=2))
        return 0
    print(f"r={doc['r']} power={doc['power']} branches={doc['branches']}")
    print(f"alphabet={' '.join(doc['alphabet'])}")
    print(f"lower={bounds.lower:.12g}")
    print(f"upper={bounds.upper:.12g}")
    print(f"below_half={doc['below_half']}")
    return 0


# ---------------------------------------------------------------------------
# parser


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="acflab",
        description="alpha-continued-fraction entropy, tuning and angle toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scan", help="sweep the entropy estimator, emit CSV")
    p.add_argument("--lo", type=float, default=0.3, help="left grid endpoint")
    p.add_argument("--hi", type=float, default=1.0, help="right grid endpoint")
    p.add_argument("--points", type=int, default=101, help="grid size")
    p.add_argument("--iters", type=int, default=100_000, help="iterations per replica")
    p.add_argument("--burn-in", type=int, default=1000, help="discarded iterations")
    p.add_argument("--replicas", type=int, default=8, help="independent replicas")
    p.add_argument("--seed", type=int, default=0, help="root RNG seed")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument(
        "--window",
        metavar="P/Q",
        default=None,
        help="scan the tuning window of this rational instead of --lo/--hi",
    )
    p.add_argument("--out", default="-", help="output file ('-' for stdout)")
    p.add_argument(
        "--timestamp",
        action="store_true",
        help="include a generation-time header line",
    )
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("classify", help="monotonicity verdict for one parameter")
    p.add_argument("alpha", help="rational 'p/q' or CF literal '[0;a1,...,(p1,...)]'")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("qe", help="enumerate maximal intervals by denominator")
    p.add_argument("--max-q", type=int, default=10, help="denominator bound")
    p.add_argument("--json", action="store_true", help="emit JSON instead of text")
    p.set_defaults(func=_cmd_qe)

    p = sub.add_parser("tune", help="tuning window / factorization / plateau verdict")
    p.add_argument("--r", required=True, metavar="P/Q", help="maximal-interval rational")
    p.set_defaults(func=_cmd_tune)

    p = sub.add_parser("match", help="verify matching over all maximal intervals")
    p.add_argument("--max-q", type=int, default=40, help="denominator bound")
    p.add_argument("--points", type=int, default=3, help="sample points per interval")
    p.add_argument("--retries", type=int, default=8, help="retries after an orbit hits 0")
    p.set_defaults(func=_cmd_match)

    p = sub.add_parser("dict", help="binary-angle (parameter-ray) operations")
    dict_sub = p.add_subparsers(dest="op", required=True)

    q = dict_sub.add_parser("commute", help="check substitution/tuning commutation")
    q.add_argument("--r", required=True, metavar="P/Q", help="maximal-interval rational")
    q.add_argument("--bits", type=int, default=40, help="compared binary digits")
    q.add_argument("--samples", type=int, default=20, help="number of test parameters")
    q.add_argument("--seed", type=int, default=0, help="sample RNG seed")
    q.set_defaults(func=_cmd_dict_commute)

    q = dict_sub.add_parser("phi", help="binary angle of one parameter")
    q.add_argument("--x", required=True, help="rational 'p/q' or CF literal")
    q.set_defaults(func=_cmd_dict_phi)

    q = dict_sub.add_parser("angles", help="root angle pair of a tuning window")
    q.add_argument("--r", required=True, metavar="P/Q", help="maximal-interval rational")
    q.set_defaults(func=_cmd_dict_angles)

    p = sub.add_parser("dims", help="dimension bounds for a pair-block alphabet")
    p.add_argument("--r", default="1/2", metavar="P/Q", help="maximal-interval rational")
    p.add_argument("--power", type=int, default=2, help="words per concatenated block")
    p.add_argument("--json", action="store_true", help="emit JSON instead of text")
    p.set_defaults(func=_cmd_dims)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
