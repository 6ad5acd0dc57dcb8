"""Command-line interface: simulate, analyze, report."""

from __future__ import annotations

import argparse
import sys

from .config import apply_config_file, make_run_config
from .harness import (analyze_batch, emit_reports, read_batch, run_batch,
                      write_fit_csv)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="linefollow",
        description="Line-following simulation with probe reaction times.")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run a seeded batch and write CSVs")
    sim.add_argument("--condition", choices=["mlad", "mhad"], required=True)
    sim.add_argument("--param-set", type=int, choices=[1, 2], required=True)
    sim.add_argument("--runs", type=int, default=150)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--config", help="YAML file overriding config keys")
    sim.add_argument("--out", required=True, help="output directory")

    ana = sub.add_parser("analyze",
                         help="aggregate a batch and score the human fit")
    ana.add_argument("--in", dest="in_dir", required=True)

    rep = sub.add_parser("report", help="render figures from a batch")
    rep.add_argument("--in", dest="in_dir", required=True)
    return parser


def cmd_simulate(args) -> int:
    cfg = make_run_config(args.condition, args.param_set, seed=args.seed)
    if args.config:
        cfg = apply_config_file(cfg, args.config)
    batch = run_batch(cfg, args.runs, base_seed=args.seed)
    paths = emit_reports(batch, args.out)
    print(f"wrote {paths['rounds']}")
    print(f"wrote {paths['probes']}")
    print(f"wrote {paths['arousal']}")
    print(f"wrote {paths['meta']}")
    if batch.failures:
        print(f"{len(batch.failures)} run(s) failed; see meta.json",
              file=sys.stderr)
        return 1
    return 0


def cmd_analyze(args) -> int:
    tables = read_batch(args.in_dir)
    analysis = analyze_batch(tables)
    path = write_fit_csv(analysis, args.in_dir)
    counts = analysis.probe_counts
    total = sum(counts.values())
    print(f"probes: {total} scheduled, "
          f"{counts['answered']} answered, "
          f"{counts['timeout']} timeout, "
          f"{counts['missing']} missing")
    for indicator, fit in analysis.fits.items():
        r_txt = "n/a" if fit.r is None else f"{fit.r:.3f}"
        print(f"{indicator}: R={r_txt} RMSE={fit.rmse:.3f}")
    print(f"wrote {path}")
    return 0


def cmd_report(args) -> int:
    from .plots import render_report

    tables = read_batch(args.in_dir)
    analysis = analyze_batch(tables)
    paths = render_report(analysis, args.in_dir)
    for path in paths.values():
        print(f"wrote {path}")
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {"simulate": cmd_simulate, "analyze": cmd_analyze,
                "report": cmd_report}
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
