"""Command-line front end.

Subcommands:

- ``run --config cfg.ini --out results.csv [--workers N]``: Monte Carlo
  run, CSV out, prints the percentile summary.
- ``inspect-codebook --preset bs8 --out beams.csv [--step-deg D]``:
  per-beam azimuth-cut gains as CSV (beam_index, az_deg, gain_db).
- ``report --in results.csv``: percentile table of an existing CSV, as
  aligned text and as JSON.

Exit codes: 0 success, 2 configuration error, 3 runtime error.
"""

import argparse
import csv
import json
import sys

import numpy as np

from .codebook import PRESET_NAMES, UnknownPresetError, azimuth_cut, codebook_presets
from .config import ConfigError, load_config
from .evaluation import EmptyInputError, SimConfig, read_csv, run_trials, write_csv

__all__ = ["main"]


def _build_parser():
    parser = argparse.ArgumentParser(prog="beamsim",
                                     description="multi-user mmWave beamforming simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run Monte Carlo trials and write a results CSV")
    p_run.add_argument("--config", help="INI config file (defaults used when omitted)")
    p_run.add_argument("--out", help="output CSV path (overrides the config's `out`)")
    p_run.add_argument("--workers", type=int, help="process count (overrides the config)")

    p_cb = sub.add_parser("inspect-codebook", help="dump per-beam azimuth gain cuts as CSV")
    p_cb.add_argument("--preset", required=True, choices=sorted(PRESET_NAMES))
    p_cb.add_argument("--out", required=True)
    p_cb.add_argument("--step-deg", type=float, default=0.5)

    p_rep = sub.add_parser("report", help="print the percentile table of a results CSV")
    p_rep.add_argument("--in", dest="in_path", required=True)
    return parser


def _cmd_run(args):
    cfg = load_config(args.config) if args.config else SimConfig()
    try:
        cfg.validate()
    except ValueError as e:
        raise ConfigError(str(e)) from None
    out = args.out or cfg.out_path
    records, summary = run_trials(cfg, workers=args.workers)
    write_csv(records, cfg, out)
    print(f"wrote {sum(len(r.results) for r in records)} rows "
          f"({len(records)} trials) to {out}")
    _print_summary(summary)


def _percentiles_of_csv(rows):
    groups = {}
    for r in rows:
        groups.setdefault((r["scheme"], r["P"]), []).append(r["sum_rate"])
    out = {}
    for key in sorted(groups):
        q = np.percentile(np.array(groups[key]), [5, 25, 50, 75, 95])
        out[key] = {"p5": q[0], "p25": q[1], "p50": q[2], "p75": q[3], "p95": q[4],
                    "count": len(groups[key])}
    return out


def _print_summary(summary):
    header = f"{'scheme':<12}{'P':>3}{'count':>7}" + "".join(
        f"{p:>9}" for p in ("p5", "p25", "p50", "p75", "p95"))
    print(header)
    for (scheme, p), row in summary.items():
        print(f"{scheme:<12}{p:>3}{row['count']:>7}" + "".join(
            f"{row[c]:>9.3f}" for c in ("p5", "p25", "p50", "p75", "p95")))
    as_json = {
        f"{scheme}[P={p}]": {k: (v if isinstance(v, int) else float(v)) for k, v in row.items()}
        for (scheme, p), row in summary.items()
    }
    print(json.dumps(as_json, indent=2))


def _cmd_inspect(args):
    cb = codebook_presets(args.preset)
    beam_idx, az_deg, gain_db = azimuth_cut(cb, step_deg=args.step_deg)
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["beam_index", "az_deg", "gain_db"])
        for b, a, g in zip(beam_idx, az_deg, gain_db):
            w.writerow([int(b), f"{a:.12g}", f"{g:.12g}"])
    print(f"wrote {len(beam_idx)} samples for {cb.size} beams to {args.out}")


def _cmd_report(args):
    rows = read_csv(args.in_path)
    if not rows:
        raise EmptyInputError("results CSV has no rows")
    _print_summary(_percentiles_of_csv(rows))


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            _cmd_run(args)
        elif args.command == "inspect-codebook":
            _cmd_inspect(args)
        elif args.command == "report":
            _cmd_report(args)
    except (ConfigError, UnknownPresetError) as e:
        print(f"config error: {e}", file=sys.stderr)
        return 2
    except Exception as e:  # noqa: BLE001  (CLI boundary: report and exit 3)
        print(f"error: {e}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
