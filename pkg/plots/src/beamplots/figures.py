"""Empirical-CDF and beam-pattern figures with reproducible SVG output.

Figures are built on bare :class:`matplotlib.figure.Figure` objects (no
pyplot, no global figure registry), and saved with a fixed ``svg.hashsalt``
and without date metadata, so rendering the same input twice yields
byte-identical files.
"""

from dataclasses import dataclass
from pathlib import Path

import matplotlib
import numpy as np
from matplotlib.figure import Figure

from .csvio import EmptyInputError, read_beams, read_results

__all__ = [
    "GROUP_KEYS",
    "PlotSpec",
    "UnknownGroupKeyError",
    "empirical_cdf",
    "plot_cdf",
    "plot_codebook",
]

# results-CSV columns a CDF figure may group on
GROUP_KEYS = ("scheme", "P", "N", "M")

_SVG_SALT = "beamplots"


class UnknownGroupKeyError(ValueError):
    """Requested group-by column is not a groupable results column."""


@dataclass(frozen=True)
class PlotSpec:
    """What to read, how to group it, and where the figure goes.

    ``x_label`` / ``y_label`` default to per-plot labels when ``None``.
    """

    in_path: str
    out_path: str
    group_by: tuple = ("scheme",)
    x_label: str = None
    y_label: str = None


def empirical_cdf(values):
    """Sorted sample points and cumulative fractions.

    Returns ``(x, y)`` with ``x`` the values in ascending order and
    ``y[k] = (k + 1) / n``, i.e. the fraction of samples at or below
    ``x[k]``; three samples ``{1, 2, 3}`` give the step points
    ``(1, 1/3), (2, 2/3), (3, 1)``.
    """
    x = np.sort(np.asarray(values, dtype=float))
    if x.size == 0:
        raise EmptyInputError("no values to form an empirical CDF")
    y = np.arange(1, x.size + 1) / x.size
    return x, y


def _group_label(keys, values):
    parts = [str(v) if k == "scheme" else f"{k}={v}" for k, v in zip(keys, values)]
    return ", ".join(parts)


def _new_axes():
    fig = Figure(figsize=(6.4, 4.8))
    ax = fig.add_subplot()
    ax.grid(True, alpha=0.3)
    return fig, ax


def _save(fig, out_path):
    fmt = Path(str(out_path)).suffix.lower().lstrip(".") or "svg"
    metadata = {"Date": None} if fmt == "svg" else None
    with matplotlib.rc_context({"svg.hashsalt": _SVG_SALT}):
        fig.savefig(out_path, format=fmt, metadata=metadata)


def plot_cdf(spec):
    """Render one empirical sum-rate CDF curve per group and save the figure.

    Rows of the results CSV at ``spec.in_path`` are grouped by the columns
    in ``spec.group_by``; each group's ``sum_rate`` samples become one
    right-continuous step curve, drawn in sorted group order and labeled
    from the group's key values. Returns the figure (already written to
    ``spec.out_path``) so callers can inspect the rendered curves.
    """
    if not spec.group_by:
        raise UnknownGroupKeyError("need at least one group-by column")
    for key in spec.group_by:
        if key not in GROUP_KEYS:
            raise UnknownGroupKeyError(
                f"cannot group by {key!r}; choose from {GROUP_KEYS}")
    rows = read_results(spec.in_path)
    if not rows:
        raise EmptyInputError(f"{spec.in_path}: no data rows to plot")

    groups = {}
    for row in rows:
        groups.setdefault(tuple(row[k] for k in spec.group_by), []).append(row["sum_rate"])

    fig, ax = _new_axes()
    for key in sorted(groups):
        x, y = empirical_cdf(groups[key])
        ax.plot(x, y, drawstyle="steps-post", label=_group_label(spec.group_by, key))
    ax.set_xlabel(spec.x_label or "sum rate (bits/s/Hz)")
    ax.set_ylabel(spec.y_label or "empirical CDF")
    ax.set_ylim(0.0, 1.0)
    ax.legend()
    _save(fig, spec.out_path)
    return fig


def plot_codebook(spec):
    """Render each beam's azimuth gain cut and save the figure.

    The azimuth-cut CSV at ``spec.in_path`` contributes one curve per
    ``beam_index`` (in index order), gains plotted exactly as stored (dB,
    no rescaling). Returns the figure, already written to ``spec.out_path``.
    """
    beam_index, az_deg, gain_db = read_beams(spec.in_path)
    if beam_index.size == 0:
        raise EmptyInputError(f"{spec.in_path}: no data rows to plot")

    fig, ax = _new_axes()
    beams = np.unique(beam_index)
    for b in beams:
        sel = beam_index == b
        ax.plot(az_deg[sel], gain_db[sel], linewidth=1.0, label=f"beam {int(b)}")
    ax.set_xlabel(spec.x_label or "azimuth (deg)")
    ax.set_ylabel(spec.y_label or "array gain (dB)")
    if beams.size <= 16:
        ax.legend(fontsize="small", ncols=2)
    _save(fig, spec.out_path)
    return fig
