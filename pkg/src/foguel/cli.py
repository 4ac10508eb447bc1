"""Command-line entry point: one subcommand per verification experiment.

Usage::

    foguel verify-norm --dim 8 --trials 100 --seed 42 --format json-lines
    foguel shift-convergence --shift-dims 16,64,256 --out report.jsonl

Flags may also come from a JSON config file (``--config``); explicit flags
take precedence over the file, which takes precedence over defaults.  Exit
status: 0 all trials passed, 1 a property failed, 2 usage error, 3 internal
consistency error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import FoguelError, InternalConsistencyError, ValidationError
from .experiments import (
    EXPERIMENTS,
    ExperimentConfig,
    run_experiment,
    write_report,
)

_COMMON_FLAGS = ("dim", "trials", "seed", "tol", "output_format", "out")
_EXTRA_FLAGS = {
    "verify-norm": ("fixture",),
    "verify-power": ("power_max",),
    "verify-polynomial": ("poly_degree",),
    "verify-schur": ("neumann_order",),
    "shift-convergence": ("shift_dims",),
}


def _parse_shift_dims(text) -> tuple:
    if isinstance(text, (list, tuple)):
        return tuple(int(d) for d in text)
    try:
        return tuple(int(part) for part in str(text).split(",") if part.strip())
    except ValueError as exc:
        raise ValidationError(f"bad --shift-dims value {text!r}: {exc}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="foguel",
        description="Seeded numerical verification of Foguel-operator identities.",
    )
    sub = parser.add_subparsers(dest="experiment", required=True, metavar="experiment")
    for name, spec in EXPERIMENTS.items():
        p = sub.add_parser(name, help=spec.description)
        p.add_argument("--dim", type=int, default=None, help="operator dimension n")
        p.add_argument("--trials", type=int, default=None, help="number of seeded trials")
        p.add_argument("--seed", type=int, default=None, help="64-bit experiment seed")
        p.add_argument(
            "--tol",
            type=float,
            default=None,
            help=f"base tolerance (default {spec.base_tol:g}); "
            "secondary thresholds scale proportionally",
        )
        p.add_argument(
            "--format",
            dest="output_format",
            choices=("json-lines", "csv"),
            default=None,
            help="report format (default json-lines)",
        )
        p.add_argument("--out", default=None, help="write the report to this path")
        p.add_argument("--config", default=None, help="JSON file mirroring these flags")
        if name == "verify-norm":
            p.add_argument(
                "--fixture",
                choices=("golden",),
                default=None,
                help="replace random draws with the scalar golden-ratio pair",
            )
        if name == "verify-power":
            p.add_argument("--power-max", dest="power_max", type=int, default=None)
        if name == "verify-polynomial":
            p.add_argument("--poly-degree", dest="poly_degree", type=int, default=None)
        if name == "verify-schur":
            p.add_argument("--neumann-order", dest="neumann_order", type=int, default=None)
        if name == "shift-convergence":
            p.add_argument(
                "--shift-dims",
                dest="shift_dims",
                default=None,
                help="comma-separated truncation dimensions, e.g. 16,64,256",
            )
    return parser


def _load_config_file(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as exc:
        raise ValidationError(f"could not read config file {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"config file {path!r} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ValidationError(f"config file {path!r} must hold a single JSON object")
    aliases = {"format": "output_format"}
    return {aliases.get(k, k): v for k, v in data.items()}


def _merge(args: argparse.Namespace) -> tuple[ExperimentConfig, str | None]:
    experiment = args.experiment
    file_values = _load_config_file(args.config) if args.config else {}
    allowed = set(_COMMON_FLAGS) | set(_EXTRA_FLAGS.get(experiment, ()))
    unknown = set(file_values) - allowed - {"experiment"}
    if unknown:
        raise ValidationError(
            f"config file sets fields not accepted by {experiment}: {sorted(unknown)}"
        )

    def pick(key, default=None):
        cli_value = getattr(args, key, None)
        if cli_value is not None:
            return cli_value
        if key in file_values and file_values[key] is not None:
            return file_values[key]
        return default

    kwargs = {"experiment": experiment}
    for key, default in (
        ("dim", 8),
        ("trials", 10),
        ("seed", 0),
        ("tol", None),
        ("output_format", "json-lines"),
    ):
        value = pick(key, default)
        if value is not None or key == "tol":
            kwargs[key] = value
    for key in _EXTRA_FLAGS.get(experiment, ()):
        value = pick(key)
        if value is not None:
            kwargs[key] = _parse_shift_dims(value) if key == "shift_dims" else value
    out = pick("out")
    return ExperimentConfig(**kwargs), out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config, out = _merge(args)
        report = run_experiment(config)
        payload = write_report(report, out)
        if out is None:
            sys.stdout.buffer.write(payload)
            sys.stdout.buffer.flush()
        print(
            f"{config.experiment}: {report.pass_count}/{config.trials} trials passed "
            f"in {report.wall_time:.2f}s"
            + (f" -> {out}" if out else ""),
            file=sys.stderr,
        )
        return 0 if report.passed else 1
    except ValidationError as exc:
        print(f"foguel: usage error: {exc}", file=sys.stderr)
        return 2
    except InternalConsistencyError as exc:
        print(f"foguel: internal consistency error: {exc}", file=sys.stderr)
        return 3
    except FoguelError as exc:
        print(f"foguel: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
