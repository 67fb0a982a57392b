"""Command-line front end.

Subcommands: eval (one parameter point), sweep (one variable over a
grid, CSV out), figures (standard sweep data + plot script + PNG),
simulate (slot simulation, JSON summary), verify (certificate grid).

Exit statuses: 0 success, 1 certificate failure, 2 usage or validation
error. All numeric flags accept decimals ("0.25"), ratios ("1/11"), and
scientific notation; values are carried as exact rationals internally.
CSV output uses 17 significant digits, LF line endings, and a fixed
column order, so identical invocations are byte-identical.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from math import inf
from pathlib import Path
from typing import Optional

from .model import CertificateViolation, ConfigError, NetworkConfig, as_fraction, read_config_file
from .montecarlo import run_simulation, simulation_summary
from .offline import breakpoints, offline_achievable, offline_lower_bound, offline_regime
from .online import online_achievable, online_lower_bound, online_regime
from .verify import GridSpec, default_grid, run_verification

_FLAG_FIELDS = {
    "ens": "ens",
    "users": "users",
    "library": "library_size",
    "mu": "cache_fraction",
    "r": "fronthaul_scaling",
    "p": "churn_probability",
}


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--ens", help="number of edge nodes M")
    parser.add_argument("--users", help="number of users K")
    parser.add_argument("--library", help="number of popular files N")
    parser.add_argument("--mu", help="cache fraction in [0, 1]")
    parser.add_argument("--r", help="fronthaul power scaling, > 0")
    parser.add_argument("--p", help="per-slot churn probability in [0, 1]")
    parser.add_argument("--config", help="key=value config file; flags override it")


def _raw_config(args: argparse.Namespace, skip: frozenset[str] = frozenset()) -> dict:
    """Merge config file and flags into validate_config keyword form."""
    raw: dict[str, object] = {}
    if args.config:
        file_cfg = read_config_file(args.config)
        raw = {name: getattr(file_cfg, name) for name in (
            "ens", "users", "library_size", "cache_fraction",
            "fronthaul_scaling", "churn_probability",
        )}
    for flag, field in _FLAG_FIELDS.items():
        value = getattr(args, flag)
        if value is not None:
            raw[field] = value
    missing = [
        flag
        for flag, field in _FLAG_FIELDS.items()
        if field not in raw and field not in skip
    ]
    if missing:
        raise ConfigError(
            "missing required parameter(s): " + ", ".join(f"--{m}" for m in missing)
        )
    return raw


def _build_config(args: argparse.Namespace) -> NetworkConfig:
    return NetworkConfig(**_coerced(_raw_config(args)))


def _coerced(raw: dict) -> dict:
    out = {}
    for field in ("ens", "users", "library_size"):
        value = as_fraction(raw[field])
        if value.denominator != 1:
            raise ConfigError(f"{field} must be an integer, got {raw[field]!r}")
        out[field] = int(value)
    for field in ("cache_fraction", "fronthaul_scaling", "churn_probability"):
        out[field] = as_fraction(raw[field])
    return out


def _num(x) -> str:
    return f"{float(x):.17g}"


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _point_record(cfg: NetworkConfig) -> dict:
    bp = breakpoints(cfg)
    raw = bp.mu2_prime_raw
    return {
        "mu": float(cfg.cache_fraction),
        "r": float(cfg.fronthaul_scaling),
        "p": float(cfg.churn_probability),
        "M": cfg.ens,
        "K": cfg.users,
        "N": cfg.library_size,
        "offline_ach": float(offline_achievable(cfg)),
        "offline_lb": float(offline_lower_bound(cfg)),
        "online_ach": float(online_achievable(cfg)),
        "online_lb_prop3": float(online_lower_bound(cfg, "prop3")),
        "online_lb_refined": float(online_lower_bound(cfg, "refined")),
        "mu1": float(bp.mu1),
        "mu2": float(bp.mu2),
        "mu2_prime_raw": "inf" if raw == inf else float(raw),
        "mu2_prime_clamped": float(bp.mu2_prime_clamped),
        "regime_offline": offline_regime(cfg).value,
        "regime_online": online_regime(cfg).value,
    }


def _record_csv(records: list[dict], columns: list[str]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for record in records:
        row = []
        for column in columns:
            value = record[column]
            row.append(_num(value) if isinstance(value, float) else str(value))
        writer.writerow(row)
    return buffer.getvalue()


def cmd_eval(args: argparse.Namespace) -> int:
    cfg = _build_config(args)
    record = _point_record(cfg)
    if args.format == "json":
        _emit(json.dumps(record, indent=2) + "\n", args.out)
    else:
        _emit(_record_csv([record], list(record)), args.out)
    return 0


_SWEEP_COLUMNS = [
    "mu", "r", "p", "M", "K", "N",
    "offline_ach", "offline_lb", "online_ach",
    "online_lb_prop3", "online_lb_refined",
    "regime_offline", "regime_online",
]


def cmd_sweep(args: argparse.Namespace) -> int:
    var_field = _FLAG_FIELDS[args.var]
    raw = _raw_config(args, skip=frozenset({var_field}))
    start = as_fraction(args.grid_start)
    stop = as_fraction(args.grid_stop)
    step = as_fraction(args.grid_step)
    if step <= 0:
        raise ConfigError("grid step must be positive")
    records = []
    value = start
    while value <= stop:
        raw[var_field] = value
        cfg = NetworkConfig(**_coerced(raw))
        record = _point_record(cfg)
        records.append({k: record[k] for k in _SWEEP_COLUMNS})
        value += step
    if not records:
        raise ConfigError("empty sweep grid: start exceeds stop")
    _emit(_record_csv(records, _SWEEP_COLUMNS), args.out)
    return 0


def cmd_figures(args: argparse.Namespace) -> int:
    from .figures import emit_figure  # matplotlib import is deferred

    library = int(args.library) if args.library is not None else None
    paths = emit_figure(args.which, args.out, library)
    for kind in ("csv", "script", "png"):
        sys.stdout.write(f"{kind}: {paths[kind]}\n")
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    cfg = _build_config(args)
    if args.slots < 1:
        raise ConfigError("need at least one slot")
    result = run_simulation(
        cfg, args.slots, args.seed, args.mode, trace_path=args.trace
    )
    _emit(json.dumps(simulation_summary(result), indent=2) + "\n", args.out)
    return 0


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(part) for part in text.split(",") if part.strip())


def _fraction_list(text: str) -> tuple[Fraction, ...]:
    return tuple(as_fraction(part) for part in text.split(",") if part.strip())


def cmd_verify(args: argparse.Namespace) -> int:
    defaults = default_grid()
    try:
        spec = GridSpec(
            en_counts=_int_list(args.ens_list) if args.ens_list else defaults.en_counts,
            user_counts=(
                _int_list(args.users_list) if args.users_list else defaults.user_counts
            ),
            mu_step=as_fraction(args.mu_step) if args.mu_step else defaults.mu_step,
            r_step=as_fraction(args.r_step) if args.r_step else defaults.r_step,
            churn_values=(
                _fraction_list(args.p_list) if args.p_list else defaults.churn_values
            ),
            r_max=as_fraction(args.r_max) if args.r_max else None,
            library_factors=(
                _int_list(args.library_factors)
                if args.library_factors
                else defaults.library_factors
            ),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    report = run_verification(spec)
    for line in report.lines():
        sys.stdout.write(line + "\n")
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fogndt",
        description="Delivery-time analysis and simulation for fog networks "
        "with a wireless multicast fronthaul",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate one parameter point")
    _add_config_flags(p_eval)
    p_eval.add_argument("--format", choices=("csv", "json"), default="csv")
    p_eval.add_argument("--out", help="write output here instead of stdout")
    p_eval.set_defaults(func=cmd_eval)

    p_sweep = sub.add_parser("sweep", help="sweep one variable, CSV output")
    _add_config_flags(p_sweep)
    p_sweep.add_argument("--var", choices=("mu", "r", "p"), required=True)
    p_sweep.add_argument("--grid-start", required=True)
    p_sweep.add_argument("--grid-stop", required=True)
    p_sweep.add_argument("--grid-step", required=True)
    p_sweep.add_argument("--out", help="write output here instead of stdout")
    p_sweep.set_defaults(func=cmd_sweep)

    p_fig = sub.add_parser("figures", help="emit standard figure data and images")
    p_fig.add_argument("--which", choices=("fig1", "fig2"), required=True)
    p_fig.add_argument("--out", required=True, help="output directory")
    p_fig.add_argument(
        "--library",
        help="popular-file count N; adds the online lower-bound overlay",
    )
    p_fig.set_defaults(func=cmd_figures)

    p_sim = sub.add_parser("simulate", help="slot simulation, JSON summary")
    _add_config_flags(p_sim)
    p_sim.add_argument("--slots", type=int, required=True)
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--mode", choices=("formula", "operational"), default="formula")
    p_sim.add_argument("--trace", help="optional per-slot CSV trace file")
    p_sim.add_argument("--out", help="write output here instead of stdout")
    p_sim.set_defaults(func=cmd_simulate)

    p_ver = sub.add_parser("verify", help="run every certificate over a grid")
    p_ver.add_argument("--ens-list", help="comma list of edge node counts")
    p_ver.add_argument("--users-list", help="comma list of user counts")
    p_ver.add_argument("--mu-step", help="cache fraction grid step")
    p_ver.add_argument("--r-step", help="fronthaul scaling grid step")
    p_ver.add_argument("--r-max", help="fronthaul grid upper end (default min(M,K)-0.05)")
    p_ver.add_argument("--p-list", help="comma list of churn probabilities")
    p_ver.add_argument("--library-factors", help="comma list of N/K factors")
    p_ver.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CertificateViolation as exc:
        sys.stderr.write(f"certificate violation: {exc}\n")
        return 1
    except (ConfigError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
