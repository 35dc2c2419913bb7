"""Command-line front ends ``plot-cdf`` and ``plot-codebook``.

Exit codes mirror the simulator CLI: 0 success, 2 bad invocation (unknown
group column), 3 unreadable or malformed input.
"""

import argparse
import sys

from .figures import PlotSpec, UnknownGroupKeyError, plot_cdf, plot_codebook

__all__ = ["main_cdf", "main_codebook"]


def _run(build, out_path):
    try:
        fig = build()
    except UnknownGroupKeyError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 2
    except Exception as e:  # noqa: BLE001  (CLI boundary: report and exit 3)
        print(f"error: {e}", file=sys.stderr)
        return 3
    print(f"wrote {out_path} ({len(fig.axes[0].lines)} curves)")
    return 0


def main_cdf(argv=None):
    parser = argparse.ArgumentParser(
        prog="plot-cdf", description="empirical sum-rate CDF curves from a results CSV")
    parser.add_argument("--in", dest="in_path", required=True,
                        help="results CSV written by `beamsim run`")
    parser.add_argument("--group", default="scheme",
                        help="comma-separated results columns to group curves by "
                             "(scheme, P, N, M; default scheme)")
    parser.add_argument("--out", required=True,
                        help="output image; SVG unless the suffix says otherwise")
    args = parser.parse_args(argv)
    keys = tuple(k.strip() for k in args.group.split(",") if k.strip())
    spec = PlotSpec(in_path=args.in_path, out_path=args.out, group_by=keys)
    return _run(lambda: plot_cdf(spec), args.out)


def main_codebook(argv=None):
    parser = argparse.ArgumentParser(
        prog="plot-codebook", description="per-beam azimuth gain curves from a codebook CSV")
    parser.add_argument("--in", dest="in_path", required=True,
                        help="azimuth-cut CSV written by `beamsim inspect-codebook`")
    parser.add_argument("--out", required=True,
                        help="output image; SVG unless the suffix says otherwise")
    args = parser.parse_args(argv)
    spec = PlotSpec(in_path=args.in_path, out_path=args.out)
    return _run(lambda: plot_codebook(spec), args.out)


if __name__ == "__main__":
    sys.exit(main_cdf())
