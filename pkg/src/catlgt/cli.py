"""Experiment runner: `catlgt run <recipe>`, `catlgt sweep`, `catlgt validate`.

Outputs are deterministic (fixed ordering and float formatting, no
timestamps); failures exit nonzero with a machine-readable error JSON on
stderr.  Environment: CATLGT_WORKERS caps sweep parallelism, CATLGT_OUT
sets the default output directory.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import csvio, dynamics, model
from .config import ExperimentConfig, parse_grid
from .dynamics import EvolutionError
from .fock import ConvergenceError
from .model import ValidationError
from .recipes import RECIPES, run_recipe

def _base_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="catlgt",
        description="Z2 lattice-gauge dynamics on cat-qubit resonator networks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="execute a named figure recipe")
    run_p.add_argument("recipe", choices=sorted(RECIPES))
    run_p.add_argument("--config", help="config file (INI sections)")
    run_p.add_argument("--out", help="output directory")
    run_p.add_argument(
        "--set",
        "--param",
        dest="set",
        action="append",
        default=[],
        metavar="SECTION.KEY=VALUE",
        help="override a config option",
    )
    run_p.add_argument("--beta0", help="sweep beta0 grid start:stop:count")
    run_p.add_argument("--g3", help="sweep g3 grid start:stop:count")
    run_p.add_argument("--N", type=int, help="chain matter sites")
    run_p.add_argument("--M", type=int, help="retained field eigenstates per link")

    sweep_p = sub.add_parser("sweep", help="run a (beta0, g3) diagnostic sweep")
    sweep_p.add_argument("config", nargs="?", help="config file")
    sweep_p.add_argument("--out", help="output directory")
    sweep_p.add_argument("--set", action="append", default=[], metavar="SECTION.KEY=VALUE")
    sweep_p.add_argument("--beta0", help="sweep beta0 grid start:stop:count")
    sweep_p.add_argument("--g3", help="sweep g3 grid start:stop:count")
    sweep_p.add_argument("--workers", type=int, help="worker processes")

    val_p = sub.add_parser("validate", help="validate a config and report resolved values")
    val_p.add_argument("config", nargs="?", help="config file")
    val_p.add_argument("--set", action="append", default=[], metavar="SECTION.KEY=VALUE")
    return parser

def _load_config(args) -> ExperimentConfig:
    if getattr(args, "config", None):
        config = ExperimentConfig.from_file(args.config)
    else:
        config = ExperimentConfig.from_defaults()
    for item in getattr(args, "set", []):
        key, _, value = item.partition("=")
        if not value and "=" not in item:
            raise ValidationError(f"override {item!r} is not SECTION.KEY=VALUE")
        config.set(key, value)
    if getattr(args, "beta0", None):
        config.set("sweep.beta0", args.beta0)
    if getattr(args, "g3", None):
        config.set("sweep.g3", args.g3)
    if getattr(args, "N", None):
        config.set("system.n_sites", args.N)
    if getattr(args, "M", None):
        config.set("system.m_field", args.M)
    if getattr(args, "workers", None):
        config.set("sweep.workers", args.workers)
    return config

def _out_dir(args, config: ExperimentConfig) -> Path:
    if getattr(args, "out", None):
        return Path(args.out)
    env = os.environ.get("CATLGT_OUT")
    if env:
        return Path(env)
    return Path(config.get("output", "directory"))

def _sweep_point_worker(job) -> dict:
    i, j, u, b0, g3, metric, periods, samples = job
    record: dict = {"i": i, "j": j, "beta0": b0, "g3": g3}
    if metric in ("dc", "both"):
        _, _, dc = dynamics._baseline_point((i, j, u, b0, g3, periods, samples))
        record["dc"] = dc
    if metric in ("ipr", "both"):
        _, _, ipr_p, ipr_m, min_w = dynamics._ipr_point((i, j, u, b0, g3))
        record.update(ipr_plus=ipr_p, ipr_minus=ipr_m, min_cat_weight=min_w)
    return record

def _sweep_points(config: ExperimentConfig, out: Path, workers: int | None) -> dict:
    """Resumable sweep: one marker JSON per grid point, merged by index."""
    beta0s = parse_grid(config.get("sweep", "beta0"))
    g3s = parse_grid(config.get("sweep", "g3"))
    metric = config.get("sweep", "metric")
    if metric not in ("dc", "ipr", "both"):
        raise ValidationError("sweep.metric must be dc, ipr or both")
    u = config.link_params().U
    periods = config.get_int("sweep", "periods")
    samples = config.get_int("sweep", "samples")
    points_dir = out / "points"
    points_dir.mkdir(parents=True, exist_ok=True)

    jobs = []
    for i, b0 in enumerate(beta0s):
        for j, g3 in enumerate(g3s):
            marker = points_dir / f"point_{i:03d}_{j:03d}.json"
            if not marker.exists():
                jobs.append((i, j, u, float(b0), float(g3), metric, periods, samples))

    results = dynamics._pool_run(_sweep_point_worker, jobs, workers)
    for record in results:
        marker = points_dir / f"point_{record['i']:03d}_{record['j']:03d}.json"
        marker.write_text(json.dumps(record, sort_keys=True), encoding="utf-8")

    failed = []
    merged = []
    for i, b0 in enumerate(beta0s):
        for j, g3 in enumerate(g3s):
            marker = points_dir / f"point_{i:03d}_{j:03d}.json"
            if marker.exists():
                merged.append(json.loads(marker.read_text(encoding="utf-8")))
            else:
                failed.append((i, j))
    if failed:
        raise EvolutionError(f"sweep points failed: {failed}")

    value_keys = [k for k in ("dc", "ipr_plus", "ipr_minus", "min_cat_weight") if k in merged[0]]
    header = ["beta0", "g3", *value_keys]
    rows = [
        tuple([csvio.fmt(rec["beta0"]), csvio.fmt(rec["g3"])] + [csvio.fmt(rec[k]) for k in value_keys])
        for rec in merged
    ]
    csvio.write_table(
        out / "sweep.csv",
        header,
        rows,
        {"recipe": "sweep", "config_hash": config.config_hash()},
        "sweep-v1",
    )
    boundary = [(csvio.fmt(g3 / (2 * u)), csvio.fmt(g3)) for g3 in g3s]
    csvio.write_table(
        out / "sweep_boundary_curve.csv",
        ["beta0", "g3"],
        boundary,
        {"recipe": "sweep", "config_hash": config.config_hash()},
        "boundary-v1",
    )
    return {
        "points": len(merged),
        "metric": metric,
        "beta0_points": len(beta0s),
        "g3_points": len(g3s),
    }

def main(argv=None) -> int:
    parser = _base_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args)
        if args.command == "validate":
            report = config.validate()
            print(json.dumps({"valid": True, "resolved": report}, sort_keys=True, indent=2))
            return 0
        out = _out_dir(args, config)
        config.validate()
        if args.command == "run":
            metrics = run_recipe(args.recipe, config, out)
            print(json.dumps({"recipe": args.recipe, "out": str(out), "headline_metrics": metrics}, sort_keys=True, indent=2))
            return 0
        if args.command == "sweep":
            workers = config.get_int("sweep", "workers") or None
            summary = _sweep_points(config, out, workers)
            csvio.write_summary(out / "summary.json", "sweep", config.config_hash(), summary)
            print(json.dumps({"recipe": "sweep", "out": str(out), "headline_metrics": summary}, sort_keys=True, indent=2))
            return 0
        raise ValidationError(f"unknown command {args.command!r}")
    except ValidationError as err:
        _emit_error("validation", err)
        return 2
    except (ConvergenceError, EvolutionError) as err:
        _emit_error("convergence", err)
        return 3
    except Exception as err:  # pragma: no cover - last-resort reporting
        _emit_error(type(err).__name__, err)
        return 1

def _emit_error(kind: str, err: Exception) -> None:
    print(json.dumps({"error": kind, "message": str(err)}), file=sys.stderr)

if __name__ == "__main__":
    sys.exit(main())
