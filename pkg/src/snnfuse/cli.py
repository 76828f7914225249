"""Command-line interface.

    snnfuse run   [--config FILE] [--seed N] [--out DIR]
    snnfuse sweep [--config FILE] --seeds N [--jobs K] [--out DIR]
    snnfuse stats --in errors.csv

Exit codes: 0 success, 2 configuration error, 3 numeric failure,
4 I/O failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from . import __version__
from .config import default_config, load_config
from .errors import ConfigError, DomainError, NumericError
from .harness import SOURCES, compute_stats, emit_outputs, run_scenario, sweep

_STATS_COLUMNS = {
    "radar1": ("r1_ex", "r1_ey"),
    "radar2": ("r2_ex", "r2_ey"),
    "snn": ("snn_ex", "snn_ey"),
    "oracle": ("oracle_ex", "oracle_ey"),
}


def _load(args: argparse.Namespace):
    cfg = load_config(args.config) if args.config else default_config()
    if getattr(args, "seed", None) is not None:
        cfg = replace(cfg, seed=args.seed)
    if getattr(args, "out", None) is not None:
        cfg = replace(cfg, output_dir=args.out)
    return cfg


def _cmd_run(args: argparse.Namespace) -> int:
    cfg = _load(args)
    report = run_scenario(cfg)
    written = emit_outputs(report, cfg.output_dir)
    print(f"run complete: seed={report.seed}, {len(report.samples)} samples")
    for source in SOURCES:
        for axis in ("x", "y"):
            st = report.stats[(source, axis)]
            print(f"  {source:7s} {axis}: mean={st.mean:+.3e} m  variance={st.variance:.3e} m^2")
    for path in written:
        print(f"wrote {path}")
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    cfg = _load(args)
    out_dir = Path(cfg.output_dir)
    report = sweep(cfg, n_seeds=args.seeds, jobs=args.jobs, out_dir=out_dir)
    lines = ["seed,source,axis,mean,variance,rms"]
    for seed, stats in zip(report.seeds, report.per_seed_stats):
        for source in SOURCES:
            for axis in ("x", "y"):
                st = stats[(source, axis)]
                lines.append(f"{seed},{source},{axis},{st.mean!r},{st.variance!r},{st.rms!r}")
    out_dir.mkdir(parents=True, exist_ok=True)
    summary = out_dir / "sweep_summary.csv"
    summary.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"sweep complete: {len(report.seeds)} seeds, jobs={args.jobs}")
    for axis in ("x", "y"):
        print(
            f"  axis {axis}: fused variance < radar1 on {report.fused_below_radar1[axis]:.0%} "
            f"of seeds, < radar2 on {report.fused_below_radar2[axis]:.0%}"
        )
    print(f"wrote {summary}")
    return 0


def _cmd_stats(args: argparse.Namespace) -> int:
    path = Path(args.infile)
    text = path.read_text(encoding="utf-8")
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ConfigError(f"{path} is empty")
    header = lines[0].split(",")
    col = {name: i for i, name in enumerate(header)}
    missing = [c for cols in _STATS_COLUMNS.values() for c in cols if c not in col]
    if missing:
        raise ConfigError(f"{path} is missing column(s): {', '.join(missing)}")
    rows = [ln.split(",") for ln in lines[1:]]
    if not rows:
        raise ConfigError(f"{path} has no data rows")
    print("source,axis,mean,variance,rms")
    for source, (cx, cy) in _STATS_COLUMNS.items():
        for axis, cname in (("x", cx), ("y", cy)):
            st = compute_stats([float(r[col[cname]]) for r in rows])
            print(f"{source},{axis},{st.mean!r},{st.variance!r},{st.rms!r}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="snnfuse",
        description="Dual-radar glide-path tracking simulation with spiking-network fusion.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one scenario and emit outputs")
    p_run.add_argument("--config", help="TOML scenario file (defaults used when omitted)")
    p_run.add_argument("--seed", type=int, help="override the master seed")
    p_run.add_argument("--out", help="override the output directory")
    p_run.set_defaults(func=_cmd_run)

    p_sweep = sub.add_parser("sweep", help="run a Monte Carlo seed sweep")
    p_sweep.add_argument("--config", help="TOML scenario file (defaults used when omitted)")
    p_sweep.add_argument("--seeds", type=int, required=True, help="number of seeds")
    p_sweep.add_argument("--jobs", type=int, default=1, help="parallel workers")
    p_sweep.add_argument("--out", help="override the output directory")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_stats = sub.add_parser("stats", help="recompute statistics from a prior errors.csv")
    p_stats.add_argument("--in", dest="infile", required=True, help="errors.csv path")
    p_stats.set_defaults(func=_cmd_stats)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, DomainError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"I/O failure: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    raise SystemExit(main())
