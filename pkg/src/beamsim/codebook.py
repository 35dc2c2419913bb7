"""Steered beam codebooks on uniform sine/cosine grids.

A codebook is an ordered set of unit-norm steering vectors whose pointing
directions tile a sector. The grid is uniform in sin(azimuth) and in
cos(zenith) rather than in angle, which makes the beams a DFT-like family
on the array manifold; with full (-90, 90) azimuth coverage and a grid
matching the array size the beams become exactly orthonormal.
"""

import functools
from dataclasses import dataclass

import numpy as np

from .channel import AOA_SECTOR, AOD_SECTOR, ArrayGeometry, SectorSpec, steering_vector

__all__ = [
    "Codebook",
    "UnknownPresetError",
    "build_steered_codebook",
    "codebook_presets",
    "azimuth_cut",
    "PRESET_NAMES",
]


class UnknownPresetError(ValueError):
    """Requested codebook preset name is not defined."""


@dataclass(frozen=True)
class Codebook:
    """Ordered set of unit-norm beams with the geometry and sector they tile.

    ``beams`` has one beam per column. ``az`` / ``zen`` give each beam's
    steering direction in radians, in the same column order.
    """

    beams: np.ndarray
    geom: ArrayGeometry
    sector: SectorSpec
    az: np.ndarray
    zen: np.ndarray

    @property
    def size(self):
        return self.beams.shape[1]


def build_steered_codebook(geom, sector, n_az, n_zen):
    """Build an ``n_az * n_zen`` steered codebook over ``sector``.

    Grid points sit at cell centers of a grid uniform in sin(az) over the
    sector's sine range and uniform in cos(zen) over its cosine range.
    Ordering is zenith-major: all azimuths of the first zenith row, then
    the next zenith row, and so on (zenith rows in increasing cos(zen)).
    """
    if n_az < 1 or n_zen < 1:
        raise ValueError(f"grid must be at least 1x1, got {n_az}x{n_zen}")
    s_bounds = np.sin(np.deg2rad(sector.az_deg))
    c_bounds = np.cos(np.deg2rad(sector.zen_deg))
    s_lo, s_hi = min(s_bounds), max(s_bounds)
    c_lo, c_hi = min(c_bounds), max(c_bounds)
    s = s_lo + (np.arange(n_az) + 0.5) * (s_hi - s_lo) / n_az
    c = c_lo + (np.arange(n_zen) + 0.5) * (c_hi - c_lo) / n_zen
    az_grid = np.arcsin(s)
    zen_grid = np.arccos(c)

    beams = np.empty((geom.n_elements, n_az * n_zen), dtype=complex)
    az = np.empty(n_az * n_zen)
    zen = np.empty(n_az * n_zen)
    idx = 0
    for zi in range(n_zen):
        for ai in range(n_az):
            beams[:, idx] = steering_vector(geom, az_grid[ai], zen_grid[zi])
            az[idx] = az_grid[ai]
            zen[idx] = zen_grid[zi]
            idx += 1
    for arr in (beams, az, zen):
        arr.setflags(write=False)
    return Codebook(beams=beams, geom=geom, sector=sector, az=az, zen=zen)


_BS_GEOM = ArrayGeometry(16, 4)
_UE_GEOM = ArrayGeometry(2, 2)

# name -> (geometry, sector, n_az, n_zen); base-station presets factor the
# beam count over the 16x4 array and the 120x30 degree transmit sector,
# user presets tile the 120x120 degree receive sector on the 2x2 array
_PRESETS = {
    "bs4": (_BS_GEOM, AOD_SECTOR, 4, 1),
    "bs8": (_BS_GEOM, AOD_SECTOR, 8, 1),
    "bs16": (_BS_GEOM, AOD_SECTOR, 8, 2),
    "bs32": (_BS_GEOM, AOD_SECTOR, 8, 4),
    "bs256": (_BS_GEOM, AOD_SECTOR, 32, 8),
    "ue4": (_UE_GEOM, AOA_SECTOR, 2, 2),
    "ue16": (_UE_GEOM, AOA_SECTOR, 4, 4),
}

PRESET_NAMES = tuple(_PRESETS)


@functools.lru_cache(maxsize=None)
def codebook_presets(name):
    """Return a named preset codebook (cached; codebooks are immutable)."""
    try:
        geom, sector, n_az, n_zen = _PRESETS[name]
    except KeyError:
        raise UnknownPresetError(
            f"unknown codebook preset {name!r}; choose from {sorted(_PRESETS)}"
        ) from None
    return build_steered_codebook(geom, sector, n_az, n_zen)


def azimuth_cut(cb, step_deg=0.5, floor_db=-120.0):
    """Sample each beam's array gain over azimuth at its own steering zenith.

    Returns ``(beam_index, az_deg, gain_db)`` arrays, one row per
    (beam, azimuth sample), covering the codebook's azimuth sector. Gain is
    ``n_elements * |b^H v(az, zen_beam)|^2`` in dB, clamped at ``floor_db``
    so pattern nulls stay finite.
    """
    lo, hi = cb.sector.az_deg
    az_deg = np.arange(lo, hi + step_deg / 2, step_deg)
    n_pts = az_deg.size
    beam_col = np.repeat(np.arange(cb.size), n_pts)
    az_col = np.tile(az_deg, cb.size)
    gain_col = np.empty(cb.size * n_pts)
    for b in range(cb.size):
        v = np.stack(
            [steering_vector(cb.geom, np.deg2rad(a), cb.zen[b]) for a in az_deg], axis=1
        )
        g = cb.geom.n_elements * np.abs(cb.beams[:, b].conj() @ v) ** 2
        gain_col[b * n_pts:(b + 1) * n_pts] = 10.0 * np.log10(np.maximum(g, 10 ** (floor_db / 10)))
    return beam_col, az_col, gain_col
