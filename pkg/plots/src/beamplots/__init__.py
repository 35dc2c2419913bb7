"""Figures for the beam-simulator's CSV artifacts.

Consumes only the CSV files the ``beamsim`` command line emits — results
tables from ``run`` and azimuth cuts from ``inspect-codebook`` — so the
plots work on archived files without the simulator installed.

- ``csvio``   schema-checked CSV readers
- ``figures`` empirical-CDF and beam-pattern rendering, deterministic SVG
- ``cli``     ``plot-cdf`` / ``plot-codebook`` entry points
"""

from .csvio import (
    BEAMS_HEADER,
    RESULTS_HEADER,
    EmptyInputError,
    SchemaError,
    read_beams,
    read_results,
)
from .figures import (
    GROUP_KEYS,
    PlotSpec,
    UnknownGroupKeyError,
    empirical_cdf,
    plot_cdf,
    plot_codebook,
)

__version__ = "0.1.0"

__all__ = [
    "BEAMS_HEADER",
    "RESULTS_HEADER",
    "EmptyInputError",
    "SchemaError",
    "read_beams",
    "read_results",
    "GROUP_KEYS",
    "PlotSpec",
    "UnknownGroupKeyError",
    "empirical_cdf",
    "plot_cdf",
    "plot_codebook",
]
