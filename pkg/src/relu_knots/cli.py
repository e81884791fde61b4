"""Command-line front end.

Commands: ``bound`` (architecture arithmetic), ``build`` (generate a network
attaining the bound), ``analyze`` (exact knot report for a network file, with
optional CSV spline export), ``verify`` (sampling oracle against exact
extraction, optional random stress search), ``canonicalize`` (forward-facing
form of a one-hidden-layer network).

Exit codes: 0 success, 2 input error, 3 unattainable architecture,
4 oracle mismatch, 5 wrong depth. The RELU_KNOTS_SEED environment variable
sets the default seed; an explicit --seed wins.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .bounds import (
    Architecture,
    approx_bound,
    bound_prefixes,
    ineligibility_reason,
    knot_bound,
    param_count,
    tightness_eligibility,
)
from .canonical import eval_canonical, to_forward_facing
from .construct import build_tight_network
from .jsonio import SchemaError, load_network, network_to_dict, save_network
from .network import ScalarInputNetwork, evaluate, extract, knot_report
from .rational import Rational, decimal_str, format_rational, parse_rational
from .spline import LinearSpline
from .verify import SamplingConfig, oracle_agreement, stress_bound

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INELIGIBLE = 3
EXIT_MISMATCH = 4
EXIT_DEPTH = 5


@dataclass(frozen=True, slots=True)
class KnotRecord:
    x: Rational
    value: Rational
    left_slope: Rational
    right_slope: Rational


@dataclass(frozen=True, slots=True)
class SplineExport:
    """One output spline flattened to knot records plus its two infinite rays.

    Rays are (slope, intercept) with the intercept taken at x = 0, so the
    export alone reconstructs the function everywhere.
    """

    output_index: int
    records: tuple[KnotRecord, ...]
    initial_ray: tuple[Rational, Rational]
    final_ray: tuple[Rational, Rational]

    @classmethod
    def from_spline(cls, index: int, f: LinearSpline) -> SplineExport:
        slopes = f.piece_slopes()
        values = f.knot_values()
        records = tuple(
            KnotRecord(x, values[i], slopes[i], slopes[i + 1])
            for i, (x, _) in enumerate(f.breakpoints)
        )
        if records:
            last = records[-1]
            final_ray = (slopes[-1], last.value - slopes[-1] * last.x)
        else:
            final_ray = (f.initial_slope, f.initial_intercept)
        return cls(index, records, (f.initial_slope, f.initial_intercept), final_ray)


CSV_COLUMNS = [
    "output_index",
    "x_rational",
    "x_decimal",
    "value_rational",
    "value_decimal",
    "left_slope_rational",
    "right_slope_rational",
]


def write_spline_csv(exports: list[SplineExport], path: str | Path) -> None:
    """CSV with one row per knot and two ray rows (x = -inf / +inf) per output.

    Ray rows carry the ray's slope in both slope columns and the ray line's
    value at x = 0 in the value columns.
    """
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(CSV_COLUMNS)
        for export in exports:
            slope, intercept = export.initial_ray
            writer.writerow(
                [
                    export.output_index,
                    "-inf",
                    "-inf",
                    format_rational(intercept),
                    decimal_str(intercept),
                    format_rational(slope),
                    format_rational(slope),
                ]
            )
            for rec in export.records:
                writer.writerow(
                    [
                        export.output_index,
                        format_rational(rec.x),
                        decimal_str(rec.x),
                        format_rational(rec.value),
                        decimal_str(rec.value),
                        format_rational(rec.left_slope),
                        format_rational(rec.right_slope),
                    ]
                )
            slope, intercept = export.final_ray
            writer.writerow(
                [
                    export.output_index,
                    "+inf",
                    "inf",
                    format_rational(intercept),
                    decimal_str(intercept),
                    format_rational(slope),
                    format_rational(slope),
                ]
            )


def _resolve_seed(args: argparse.Namespace) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("RELU_KNOTS_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise SystemExit(
                f"error: RELU_KNOTS_SEED must be an integer, got {env!r}"
            ) from exc
    return 0


def _parse_widths(raw: list[int]) -> tuple[int, ...]:
    if not raw or any(n < 1 for n in raw):
        raise _input_error(f"widths must be positive integers, got {raw}")
    return tuple(raw)


class _CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _input_error(message: str) -> _CliError:
    return _CliError(message, EXIT_INPUT)


def _load(path: str) -> ScalarInputNetwork:
    try:
        return load_network(path)
    except FileNotFoundError as exc:
        raise _input_error(f"{path}: {exc.strerror}") from exc
    except SchemaError as exc:
        raise _input_error(f"{path}: {exc}") from exc


def _random_rational_points(rng: random.Random, count: int) -> list[Fraction]:
    return [
        Fraction(rng.randint(-1000, 1000), rng.randint(1, 100)) for _ in range(count)
    ]


def cmd_bound(args: argparse.Namespace) -> int:
    arch = Architecture(_parse_widths(args.widths), output_dim=args.p)
    report = {
        "widths": list(arch.widths),
        "p": arch.output_dim,
        "bound": knot_bound(arch),
        "per_layer_bounds": bound_prefixes(arch),
        "approx_bound": approx_bound(arch),
        "param_count": param_count(arch),
        "tightness": tightness_eligibility(arch).value,
    }
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print(f"widths: {' '.join(map(str, arch.widths))}   outputs: {arch.output_dim}")
        print(f"knot bound: {report['bound']}")
        print(f"per-layer bounds: {report['per_layer_bounds']}")
        print(f"approximate bound (width product): {report['approx_bound']}")
        print(f"parameter count: {report['param_count']}")
        print(f"tightness: {report['tightness']}")
    return EXIT_OK


def cmd_build(args: argparse.Namespace) -> int:
    arch = Architecture(_parse_widths(args.widths), output_dim=args.p)
    reason = ineligibility_reason(arch)
    if reason is not None:
        raise _CliError(
            f"cannot attain the bound for widths {list(arch.widths)}: {reason}",
            EXIT_INELIGIBLE,
        )
    net = build_tight_network(arch)
    achieved = len(extract(net).output_splines.knot_union())
    bound = knot_bound(arch)
    if achieved != bound:  # build_tight_network already guarantees this
        raise _CliError(f"built {achieved} knots, expected {bound}", EXIT_INPUT)
    if args.out:
        save_network(net, args.out)
        print(f"wrote {args.out}")
        print(f"knots: {achieved} (bound {bound})")
    else:
        print(f"knots: {achieved} (bound {bound})", file=sys.stderr)
        print(json.dumps(network_to_dict(net), indent=2))
    return EXIT_OK


def cmd_analyze(args: argparse.Namespace) -> int:
    net = _load(args.network)
    report = knot_report(net)
    if args.csv:
        trace = extract(net)
        exports = [
            SplineExport.from_spline(k, f)
            for k, f in enumerate(trace.output_splines)
        ]
        write_spline_csv(exports, args.csv)
    payload = {
        "widths": list(net.widths),
        "p": net.output_dim,
        "per_layer_knot_counts": list(report.per_layer_counts),
        "output_knot_count": report.output_knot_count,
        "bound": report.bound,
        "meets_bound": report.meets_bound,
        "tightness": report.tightness.value,
    }
    if args.layers:
        payload["per_layer_knots"] = [
            [format_rational(x) for x in layer] for layer in report.per_layer_knots
        ]
        payload["output_knots"] = [format_rational(x) for x in report.output_knots]
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(f"widths: {' '.join(map(str, net.widths))}   outputs: {net.output_dim}")
        print(f"per-layer knot counts: {payload['per_layer_knot_counts']}")
        print(f"output knots: {report.output_knot_count}")
        print(f"bound: {report.bound}   meets bound: {report.meets_bound}")
        print(f"tightness: {report.tightness.value}")
        if args.layers:
            for i, layer in enumerate(report.per_layer_knots, start=1):
                print(f"layer {i} knots: {[format_rational(x) for x in layer]}")
            print(f"output knot locations: {payload['output_knots']}")
        if args.csv:
            print(f"wrote {args.csv}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    net = _load(args.network)
    seed = _resolve_seed(args)
    if args.interval:
        try:
            low, high = (parse_rational(s) for s in args.interval)
        except ValueError as exc:
            raise _input_error(str(exc)) from exc
    else:
        low, high = Fraction(-1), Fraction(net.widths[0])
    try:
        cfg = SamplingConfig((low, high), samples=args.samples)
    except ValueError as exc:
        raise _input_error(str(exc)) from exc
    agreement = oracle_agreement(net, cfg)
    payload: dict = {
        "interval": [format_rational(low), format_rational(high)],
        "samples": args.samples,
        "detected": len(agreement.detected),
        "exact": len(agreement.exact),
        "grid_step": agreement.grid_step,
        "max_location_error": agreement.max_location_error,
        "agree": agreement.agree,
    }
    if args.trials:
        stress = stress_bound(net.architecture, args.trials, seed)
        payload["stress"] = {
            "trials": stress.trials,
            "seed": stress.seed,
            "bound": stress.bound,
            "max_observed": stress.max_observed,
            "gap": stress.gap,
            "note": stress.note,
        }
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(agreement.summary())
        if args.trials:
            stress_info = payload["stress"]
            print(
                f"stress: max observed {stress_info['max_observed']} of bound "
                f"{stress_info['bound']} over {stress_info['trials']} trials "
                f"(seed {stress_info['seed']})"
            )
            if stress_info["gap"] is not None:
                print(
                    f"gap {stress_info['gap']} below an unattainable bound "
                    f"({stress_info['note']})"
                )
    if not agreement.agree:
        raise _CliError("sampling oracle disagrees with exact extraction", EXIT_MISMATCH)
    return EXIT_OK


def cmd_canonicalize(args: argparse.Namespace) -> int:
    net = _load(args.network)
    if net.depth != 1:
        raise _CliError(
            f"canonicalize needs exactly one hidden layer, network has {net.depth}",
            EXIT_DEPTH,
        )
    form = to_forward_facing(net)
    seed = _resolve_seed(args)
    rng = random.Random(seed)
    points = _random_rational_points(rng, 100)
    matched = all(evaluate(net, x) == eval_canonical(form, x) for x in points)
    payload = {
        "knot_locations": [format_rational(x) for x in form.knot_locations],
        "ray_slopes": [[format_rational(s) for s in row] for row in form.ray_slopes],
        "line_slope": [format_rational(c) for c in form.line_slope],
        "line_intercept": [format_rational(c) for c in form.line_intercept],
        "folded_units": list(form.folded_units),
        "equivalence_check": {"points": len(points), "seed": seed, "matched": matched},
    }
    print(json.dumps(payload, indent=2))
    if not matched:
        raise _CliError("canonical form disagrees with the network", EXIT_MISMATCH)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relu-knots",
        description="Exact knot counting and bound certification for scalar-input ReLU networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_bound = sub.add_parser("bound", help="compute the knot bound for an architecture")
    p_bound.add_argument("widths", nargs="+", type=int, help="hidden layer widths")
    p_bound.add_argument("--p", type=int, default=1, help="output dimension (default 1)")
    p_bound.add_argument("--json", action="store_true")
    p_bound.set_defaults(handler=cmd_bound)

    p_build = sub.add_parser("build", help="generate a network attaining the bound")
    p_build.add_argument("widths", nargs="+", type=int)
    p_build.add_argument("--p", type=int, default=1)
    p_build.add_argument("--out", help="write network JSON here (default: stdout)")
    p_build.set_defaults(handler=cmd_build)

    p_analyze = sub.add_parser("analyze", help="exact knot report for a network file")
    p_analyze.add_argument("network", help="network JSON file")
    p_analyze.add_argument("--layers", action="store_true", help="include knot locations")
    p_analyze.add_argument("--csv", help="write per-output spline records here")
    p_analyze.add_argument("--json", action="store_true")
    p_analyze.set_defaults(handler=cmd_analyze)

    p_verify = sub.add_parser("verify", help="sampling oracle against exact extraction")
    p_verify.add_argument("network", help="network JSON file")
    p_verify.add_argument("--samples", type=int, default=100_001)
    p_verify.add_argument(
        "--interval",
        nargs=2,
        metavar=("LOW", "HIGH"),
        help="sampling interval as rationals (default: -1 to first-layer width)",
    )
    p_verify.add_argument("--trials", type=int, default=0, help="also stress-search this many random networks")
    p_verify.add_argument("--seed", type=int, default=None)
    p_verify.add_argument("--json", action="store_true")
    p_verify.set_defaults(handler=cmd_verify)

    p_canon = sub.add_parser(
        "canonicalize", help="forward-facing form of a one-hidden-layer network"
    )
    p_canon.add_argument("network", help="network JSON file")
    p_canon.add_argument("--seed", type=int, default=None)
    p_canon.set_defaults(handler=cmd_canonicalize)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
