"""Command-line front end.

Subcommands: predict (closed-form maintenance costs), simulate (one run to
trace/summary/ledger files), sweep (parameter grid to one CSV), classify
(problem-class verdict for a scenario), verify (the self-verification
suite). Exit codes are a stable contract: 0 success, 1 runtime or check
failure, 2 usage or configuration error. Scenario files are JSON in the
schema of :mod:`beds.core`; the BEDS_SEED environment variable, when set,
overrides the scenario seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from .analysis import classify_run, optimal_obs_precision, steady_state_prediction
from .core import (
    Scenario,
    UnknownParameterPath,
    ValidationError,
    scenario_from_dict,
    validate_scenario,
)
from .engine import run, summary_to_dict, sweep, trace_to_csv
from .io import json_dumps
from . import verify as verify_mod

__all__ = ["CliConfig", "main"]


@dataclass
class CliConfig:
    """Parsed invocation: which subcommand, which files, which overrides."""

    subcommand: str
    scenario_path: str | None = None
    output_dir: str | None = None
    overrides: list[str] = field(default_factory=list)


class _CliError(Exception):
    def __init__(self, exit_code: int, message: str):
        self.exit_code = exit_code
        super().__init__(message)


def _parse_override(pair: str) -> tuple[str, object]:
    if "=" not in pair:
        raise _CliError(2, f"override {pair!r} is not of the form path=value")
    path, raw = pair.split("=", 1)
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    return path, value


def _apply_override(raw: dict, path: str, value: object) -> None:
    keys = path.split(".")
    node = raw
    for key in keys[:-1]:
        if not isinstance(node, dict) or key not in node:
            raise _CliError(2, f"unknown scenario field {path!r}")
        node = node[key]
    if not isinstance(node, dict) or keys[-1] not in node:
        raise _CliError(2, f"unknown scenario field {path!r}")
    node[keys[-1]] = value


def _load_scenario(config: CliConfig) -> Scenario:
    path = config.scenario_path
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise _CliError(1, f"cannot read scenario file {path}: {exc.strerror}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise _CliError(2, f"scenario file {path} is not valid JSON: {exc}") from exc
    for pair in config.overrides:
        override_path, value = _parse_override(pair)
        _apply_override(raw, override_path, value)
    env_seed = os.environ.get("BEDS_SEED")
    if env_seed is not None:
        try:
            raw["seed"] = int(env_seed)
        except ValueError as exc:
            raise _CliError(2, f"BEDS_SEED must be an integer, got {env_seed!r}") from exc
    try:
        scenario = scenario_from_dict(raw)
    except (ValueError, TypeError, KeyError) as exc:
        raise _CliError(2, f"scenario file {path} is malformed: {exc}") from exc
    try:
        validate_scenario(scenario)
    except ValidationError as exc:
        lines = "\n".join(f"  {v.field}: {v.message}" for v in exc.violations)
        raise _CliError(2, f"scenario failed validation:\n{lines}") from exc
    return scenario


def _write_text(output_dir: str, name: str, text: str) -> str:
    try:
        os.makedirs(output_dir, exist_ok=True)
        target = os.path.join(output_dir, name)
        with open(target, "w", encoding="utf-8") as handle:
            handle.write(text)
    except OSError as exc:
        raise _CliError(1, f"cannot write {name} in {output_dir}: {exc.strerror}") from exc
    return target


def _cmd_predict(args: argparse.Namespace) -> int:
    for flag in ("gamma", "tau_star", "tau_d", "kbt"):
        value = getattr(args, flag)
        if not value > 0:
            raise _CliError(2, f"--{flag.replace('_', '-')} must be > 0, got {value!r}")
    if args.lambda_max is not None and not args.lambda_max > 0:
        raise _CliError(2, f"--lambda-max must be > 0, got {args.lambda_max!r}")
    prediction = steady_state_prediction(args.gamma, args.tau_star, args.tau_d, args.kbt)
    payload = prediction.to_dict()
    if args.lambda_max is not None:
        payload["tau_d_opt"] = optimal_obs_precision(args.gamma, args.tau_star, args.lambda_max)
    sys.stdout.write(json_dumps(payload))
    return 0


def _cmd_simulate(config: CliConfig) -> int:
    scenario = _load_scenario(config)
    trace = run(scenario)
    summary = summary_to_dict(trace)
    _write_text(config.output_dir, "trace.csv", trace_to_csv(trace))
    _write_text(config.output_dir, "summary.json", json_dumps(summary))
    _write_text(config.output_dir, "ledger.csv", trace.ledger.to_csv())
    sys.stdout.write(json_dumps(summary))
    return 0


def _cmd_sweep(config: CliConfig, grid_specs: list[str], replicates: int) -> int:
    scenario = _load_scenario(config)
    if replicates < 1:
        raise _CliError(2, f"--replicates must be >= 1, got {replicates!r}")
    grid: list[tuple[str, list[float]]] = []
    for spec in grid_specs:
        if "=" not in spec:
            raise _CliError(2, f"grid {spec!r} is not of the form path=v1,v2,...")
        path, raw_values = spec.split("=", 1)
        try:
            values = [float(v) for v in raw_values.split(",") if v != ""]
        except ValueError as exc:
            raise _CliError(2, f"grid {spec!r} has a non-numeric value: {exc}") from exc
        if not values:
            raise _CliError(2, f"grid {spec!r} lists no values")
        grid.append((path, values))
    try:
        table = sweep(scenario, grid, replicates=replicates)
    except UnknownParameterPath as exc:
        raise _CliError(2, str(exc)) from exc
    except ValidationError as exc:
        lines = "\n".join(f"  {v.field}: {v.message}" for v in exc.violations)
        raise _CliError(2, f"a grid cell failed validation:\n{lines}") from exc
    target = _write_text(config.output_dir, "sweep.csv", table.to_csv())
    sys.stdout.write(f"wrote {len(table.rows)} rows to {target}\n")
    return 0


def _cmd_classify(config: CliConfig) -> int:
    scenario = _load_scenario(config)
    trace = run(scenario)
    verdict = classify_run(trace, scenario.problem)
    payload = verdict.to_dict()
    _write_text(config.output_dir, "verdict.json", json_dumps(payload))
    sys.stdout.write(json_dumps(payload))
    return 0


def _cmd_verify(seed_base: int, output_dir: str) -> int:
    report = verify_mod.run_all(seed_base)
    _write_text(output_dir, "verify_report.json", json_dumps(report.to_dict()))
    if report.tracking_table is not None:
        _write_text(output_dir, "sweep.csv", report.tracking_table.to_csv())
    for check in report.checks:
        status = "PASS" if check.passed else "FAIL"
        kind = " (exploratory)" if check.exploratory else ""
        sys.stdout.write(f"{status} {check.name}{kind}\n")
    sys.stdout.write(f"all non-exploratory checks passed: {report.all_passed}\n")
    return 0 if report.all_passed else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="beds",
        description="Simulate and analyze belief maintenance under dissipation.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    predict = sub.add_parser("predict", help="closed-form maintenance predictions")
    predict.add_argument("--gamma", type=float, required=True, help="dissipation rate (1/time)")
    predict.add_argument("--tau-star", type=float, required=True, help="precision to maintain")
    predict.add_argument("--tau-d", type=float, required=True, help="precision per observation")
    predict.add_argument("--kbt", type=float, default=1.0, help="thermal energy scale (default 1)")
    predict.add_argument(
        "--lambda-max", type=float, default=None, help="rate budget; adds tau_d_opt to the output"
    )

    def add_io(p: argparse.ArgumentParser, with_overrides: bool = True) -> None:
        p.add_argument("--scenario-path", required=True, help="scenario JSON file")
        p.add_argument("--output-dir", required=True, help="directory for output files")
        if with_overrides:
            p.add_argument(
                "--override",
                action="append",
                default=[],
                metavar="PATH=VALUE",
                help="dotted-path scenario override applied before validation (repeatable)",
            )

    simulate = sub.add_parser("simulate", help="run one scenario to trace/summary/ledger files")
    add_io(simulate)

    sweep_p = sub.add_parser("sweep", help="run a parameter grid to sweep.csv")
    add_io(sweep_p)
    sweep_p.add_argument(
        "--grid",
        action="append",
        default=[],
        required=True,
        metavar="PATH=V1,V2,...",
        help="numeric scenario path with comma-separated values (repeatable, ordered)",
    )
    sweep_p.add_argument("--replicates", type=int, default=1, help="seeded replicates per cell")

    classify = sub.add_parser("classify", help="problem-class verdict for a scenario")
    add_io(classify)

    verify_p = sub.add_parser("verify", help="run the self-verification suite")
    verify_p.add_argument(
        "--seed-base", type=int, default=verify_mod.DEFAULT_SEED_BASE, help="base seed for all checks"
    )
    verify_p.add_argument("--output-dir", required=True, help="directory for the report files")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        if args.subcommand == "predict":
            return _cmd_predict(args)
        config = CliConfig(
            subcommand=args.subcommand,
            scenario_path=getattr(args, "scenario_path", None),
            output_dir=getattr(args, "output_dir", None),
            overrides=list(getattr(args, "override", [])),
        )
        if args.subcommand == "simulate":
            return _cmd_simulate(config)
        if args.subcommand == "sweep":
            return _cmd_sweep(config, args.grid, args.replicates)
        if args.subcommand == "classify":
            return _cmd_classify(config)
        if args.subcommand == "verify":
            return _cmd_verify(args.seed_base, args.output_dir)
        raise _CliError(2, f"unknown subcommand {args.subcommand!r}")
    except _CliError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
