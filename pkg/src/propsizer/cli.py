"""Command-line interface.

Subcommands: optimize, evaluate, fit, compare. Exit codes: 0 success,
1 usage/input error, 2 design infeasible. The catalog directory comes from
--catalog, the PROPSIZER_CATALOG_DIR environment variable, or the bundled
sample catalogs, in that order.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .baseline import compare
from .catalog import bundled_catalog_dir, load_catalogs
from .errors import DomainError, InfeasibleError, PropsizerError
from .evaluator import evaluate
from .models import DEFAULT_AMBIENT_TEMP_C, Environment
from .optimizer import DesignResult, optimize
from .serialize import (
    comparison_to_dict,
    design_result_to_dict,
    dump_json,
    performance_to_dict,
    requirements_from_dict,
    system_from_dict,
)
from .statmodels import fit_stat_models, load_stat_models, save_stat_models, stat_models_to_dict

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INFEASIBLE = 2


def _catalog_dir(args) -> str:
    return args.catalog or os.environ.get("PROPSIZER_CATALOG_DIR") or bundled_catalog_dir()


def _load(args):
    catalogs = load_catalogs(_catalog_dir(args))
    if getattr(args, "models", None):
        stat = load_stat_models(args.models)
    else:
        stat = fit_stat_models(catalogs)
    return catalogs, stat


def _emit(text: str, out_path: str | None):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _design_text(result: DesignResult) -> str:
    perf = result.performance
    lines = [
        "Selected propulsion system",
        f"  propeller: {result.propeller.identifier}",
        f"  motor:     {result.motor.identifier}",
        f"  esc:       {result.esc.identifier}",
        f"  battery:   {result.battery.identifier}",
        "",
        f"  hover throttle:   {perf.hover.throttle:.3f}",
        f"  hover current:    {perf.hover_battery_current_a:.1f} A",
        f"  endurance:        {perf.endurance_min:.1f} min",
        f"  system weight:    {perf.system_weight_n:.1f} N"
        if perf.system_weight_n is not None
        else "  system weight:    unknown",
        "",
        "Sizing targets",
        f"  blade count {result.optimal.blade_count}, "
        f"pitch angle {result.optimal.pitch_angle_rad:.4f} rad, "
        f"diameter {result.optimal.diameter_m:.4f} m",
        f"  motor {result.optimal.motor_max_voltage_v:g} V / "
        f"{result.optimal.motor_max_current_a:.1f} A / "
        f"{result.optimal.kv_rpm_per_v:.1f} RPM/V",
        f"  battery {result.optimal.battery_voltage_v:g} V, "
        f"{result.optimal.battery_capacity_mah:.0f} mAh, "
        f"{result.optimal.battery_discharge_rate_c:.1f} C",
        "",
        "Trace",
    ]
    for step in result.trace:
        outs = ", ".join(
            f"{k}={v:.5g}" if isinstance(v, float) else f"{k}={v}"
            for k, v in step.outputs.items()
        )
        lines.append(f"  {step.step:2d}. {step.name}: {outs}")
    return "\n".join(lines) + "\n"


def _cmd_optimize(args) -> int:
    doc = {
        "rotor_count": args.rotors,
        "thrust_ratio": args.gamma,
        "altitude_m": args.altitude_m,
        "endurance_min": args.endurance_min,
        "temp_c": args.temp_c,
    }
    if args.weight_n is not None:
        doc["total_weight_n"] = args.weight_n
    if args.hover_thrust_n is not None:
        doc["hover_thrust_n"] = args.hover_thrust_n
    if args.other_current_a is not None:
        doc["other_current_a"] = args.other_current_a
    req = requirements_from_dict(doc)
    catalogs, stat = _load(args)
    result = optimize(req, catalogs, stat)
    if args.format == "json":
        _emit(dump_json(design_result_to_dict(result)), args.out)
    else:
        _emit(_design_text(result), args.out)
    return EXIT_OK


def _cmd_evaluate(args) -> int:
    with open(args.system) as fh:
        system = system_from_dict(json.load(fh))
    if args.altitude_m is not None:
        system = type(system)(
            propeller=system.propeller,
            motor=system.motor,
            esc=system.esc,
            battery=system.battery,
            rotor_count=system.rotor_count,
            environment=Environment(altitude_m=args.altitude_m, temp_c=args.temp_c),
            other_current_a=system.other_current_a,
        )
    report = evaluate(system, args.hover_thrust_n)
    _emit(dump_json(performance_to_dict(report)), args.out)
    return EXIT_OK


def _cmd_fit(args) -> int:
    catalogs = load_catalogs(_catalog_dir(args))
    stat = fit_stat_models(catalogs)
    if args.out:
        save_stat_models(stat, args.out)
    else:
        _emit(dump_json(stat_models_to_dict(stat)), None)
    return EXIT_OK


def _cmd_compare(args) -> int:
    with open(args.requirements) as fh:
        req = requirements_from_dict(json.load(fh))
    catalogs, stat = _load(args)
    report = compare(req, catalogs, stat)
    if args.format == "json":
        _emit(dump_json(comparison_to_dict(report)), args.out)
    else:
        rows = [
            ("", "analytical", "brute force"),
            (
                "weight (N)",
                f"{report.analytical_weight_n:.1f}",
                f"{report.brute_weight_n:.1f}",
            ),
            (
                "endurance (min)",
                f"{report.analytical_endurance_min:.1f}",
                f"{report.brute_endurance_min:.1f}",
            ),
            (
                "wall time (s)",
                f"{report.analytical_seconds:.4f}",
                f"{report.brute_seconds:.4f}",
            ),
            (
                "hover evals",
                str(report.analytical_hover_evals),
                str(report.brute_hover_evals),
            ),
        ]
        widths = [max(len(r[i]) for r in rows) for i in range(3)]
        text = "\n".join(
            "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
            for row in rows
        )
        _emit(text + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="propsizer",
        description="Size and select a multicopter propulsion system from catalogs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--catalog", help="catalog directory (default: bundled)")
        p.add_argument("--out", help="write output to this file instead of stdout")

    p_opt = sub.add_parser("optimize", help="run the analytical sizing pipeline")
    common(p_opt)
    group = p_opt.add_mutually_exclusive_group(required=True)
    group.add_argument("--weight-n", type=float, help="total vehicle weight in newtons")
    group.add_argument(
        "--hover-thrust-n", type=float, help="per-propeller hover thrust in newtons"
    )
    p_opt.add_argument("--rotors", type=int, required=True)
    p_opt.add_argument("--gamma", type=float, default=0.5, help="hover/full-throttle thrust ratio")
    p_opt.add_argument("--endurance-min", type=float, required=True)
    p_opt.add_argument("--altitude-m", type=float, default=0.0)
    p_opt.add_argument("--temp-c", type=float, default=DEFAULT_AMBIENT_TEMP_C)
    p_opt.add_argument("--other-current-a", type=float, default=None)
    p_opt.add_argument("--models", help="pre-fitted statistics file (default: fit from catalog)")
    p_opt.add_argument("--format", choices=("json", "text"), default="json")
    p_opt.set_defaults(func=_cmd_optimize)

    p_eval = sub.add_parser("evaluate", help="evaluate a fully specified system")
    common(p_eval)
    p_eval.add_argument("--system", required=True, help="system description JSON file")
    p_eval.add_argument("--hover-thrust-n", type=float, required=True)
    p_eval.add_argument("--altitude-m", type=float, default=None)
    p_eval.add_argument("--temp-c", type=float, default=DEFAULT_AMBIENT_TEMP_C)
    p_eval.set_defaults(func=_cmd_evaluate)

    p_fit = sub.add_parser("fit", help="fit catalog statistics")
    common(p_fit)
    p_fit.set_defaults(func=_cmd_fit)

    p_cmp = sub.add_parser("compare", help="analytical pipeline vs brute force")
    common(p_cmp)
    p_cmp.add_argument("--requirements", required=True, help="requirements JSON file")
    p_cmp.add_argument("--models", help="pre-fitted statistics file")
    p_cmp.add_argument("--format", choices=("json", "text"), default="text")
    p_cmp.set_defaults(func=_cmd_compare)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors; remap to the documented code
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except InfeasibleError as exc:
        sys.stderr.write(f"infeasible: {exc}\n")
        return EXIT_INFEASIBLE
    except (DomainError, PropsizerError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
