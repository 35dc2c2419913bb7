"""Schema-checked readers for the simulator's CSV artifacts.

Two formats exist: the results table written by ``beamsim run`` and the
azimuth-cut table written by ``beamsim inspect-codebook``. Headers are
matched exactly and every field is type-checked, so a truncated or
foreign file fails up front instead of producing an empty figure.
"""

import csv

import numpy as np

__all__ = [
    "RESULTS_HEADER",
    "BEAMS_HEADER",
    "SchemaError",
    "EmptyInputError",
    "read_results",
    "read_beams",
]

RESULTS_HEADER = "trial_id,scheme,P,N,M,rho_db,sum_rate,rate_u1,rate_u2,flags"
BEAMS_HEADER = "beam_index,az_deg,gain_db"

_RESULT_TYPES = (int, str, int, int, int, float, float, float, float, str)
_BEAM_TYPES = (int, float, float)


class SchemaError(ValueError):
    """Input CSV does not match the expected schema."""


class EmptyInputError(ValueError):
    """Input parsed fine but holds no data to plot."""


def _read_table(path, header, types):
    cols = header.split(",")
    rows = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        got = next(reader, None)
        if got != cols:
            raise SchemaError(f"{path}: expected header {header!r}, got "
                              f"{','.join(got) if got else '<empty file>'!r}")
        for lineno, raw in enumerate(reader, start=2):
            if len(raw) != len(cols):
                raise SchemaError(f"{path}:{lineno}: expected {len(cols)} fields, got {len(raw)}")
            try:
                rows.append(tuple(t(v) for t, v in zip(types, raw)))
            except ValueError:
                raise SchemaError(f"{path}:{lineno}: cannot parse row {raw!r}") from None
    return cols, rows


def read_results(path):
    """Read a results CSV into a list of per-row dicts with typed fields."""
    cols, rows = _read_table(path, RESULTS_HEADER, _RESULT_TYPES)
    return [dict(zip(cols, r)) for r in rows]


def read_beams(path):
    """Read an azimuth-cut CSV into ``(beam_index, az_deg, gain_db)`` arrays."""
    _, rows = _read_table(path, BEAMS_HEADER, _BEAM_TYPES)
    if not rows:
        return np.empty(0, dtype=int), np.empty(0), np.empty(0)
    beam_index, az_deg, gain_db = (np.array(col) for col in zip(*rows))
    return beam_index, az_deg, gain_db
