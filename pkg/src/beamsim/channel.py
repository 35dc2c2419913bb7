"""Clustered geometric MIMO channel with uniform planar arrays.

The channel between a transmit and a receive planar array is a sum of a
small number of specular clusters. Cluster ``l`` contributes a rank-one
term ``gain_l * u_l v_l^H`` built from the receive and transmit steering
vectors of its arrival / departure directions, and the sum is scaled by
``sqrt(n_rx * n_tx / n_clusters)`` so the expected channel energy
``E[trace(H H^H)]`` equals ``n_rx * n_tx``.

Angles follow the physics convention: ``az`` is azimuth measured in the
array plane, ``zen`` is the zenith angle from the array normal axis, both
in radians. Sector bounds are kept in degrees because that is how they
appear in configuration files.
"""

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "ArrayGeometry",
    "SectorSpec",
    "ClusterParams",
    "ChannelRealization",
    "AOD_SECTOR",
    "AOA_SECTOR",
    "steering_vector",
    "draw_channel",
]


@dataclass(frozen=True)
class ArrayGeometry:
    """Half-wavelength uniform planar array with n_x columns and n_z rows."""

    n_x: int
    n_z: int

    def __post_init__(self):
        if self.n_x < 1 or self.n_z < 1:
            raise ValueError(f"array dimensions must be >= 1, got {self.n_x}x{self.n_z}")

    @property
    def n_elements(self):
        return self.n_x * self.n_z


@dataclass(frozen=True)
class SectorSpec:
    """Angular sector, closed intervals in degrees."""

    az_deg: tuple
    zen_deg: tuple

    def __post_init__(self):
        for lo, hi in (self.az_deg, self.zen_deg):
            if not lo <= hi:
                raise ValueError(f"sector bounds out of order: ({lo}, {hi})")


# default sectors: the transmitter covers a 120 x 30 degree cell, the
# receiver accepts a much wider 120 x 120 degree field of view
AOD_SECTOR = SectorSpec(az_deg=(-60.0, 60.0), zen_deg=(75.0, 105.0))
AOA_SECTOR = SectorSpec(az_deg=(-60.0, 60.0), zen_deg=(30.0, 150.0))


@dataclass(frozen=True)
class ClusterParams:
    """One specular cluster: complex gain plus departure/arrival angles (rad)."""

    gain: complex
    aod_az: float
    aod_zen: float
    aoa_az: float
    aoa_zen: float


def steering_vector(geom, az, zen):
    """Unit-norm steering vector of a planar array toward (az, zen) radians.

    Element (p, q), p indexing the x axis and q the z axis, has phase
    ``pi * (p * sin(zen) * sin(az) + q * cos(zen))``; the vector is laid
    out with p major (index = p * n_z + q) and scaled by
    ``1 / sqrt(n_x * n_z)`` to unit norm.
    """
    p = np.repeat(np.arange(geom.n_x), geom.n_z)
    q = np.tile(np.arange(geom.n_z), geom.n_x)
    phase = np.pi * (p * np.sin(zen) * np.sin(az) + q * np.cos(zen))
    return np.exp(1j * phase) / np.sqrt(geom.n_elements)


@dataclass(frozen=True)
class ChannelRealization:
    """One channel draw: the matrix itself plus the clusters that built it."""

    h: np.ndarray
    clusters: tuple
    tx_geom: ArrayGeometry
    rx_geom: ArrayGeometry

    def assemble(self):
        """Rebuild the channel matrix from the stored clusters."""
        return _assemble(self.clusters, self.tx_geom, self.rx_geom)

    @classmethod
    def from_clusters(cls, clusters, tx_geom, rx_geom):
        """Build a realization with prescribed cluster parameters."""
        clusters = tuple(clusters)
        return cls(
            h=_assemble(clusters, tx_geom, rx_geom),
            clusters=clusters,
            tx_geom=tx_geom,
            rx_geom=rx_geom,
        )


def _assemble(clusters, tx_geom, rx_geom):
    u = np.stack([steering_vector(rx_geom, c.aoa_az, c.aoa_zen) for c in clusters], axis=1)
    v = np.stack([steering_vector(tx_geom, c.aod_az, c.aod_zen) for c in clusters], axis=1)
    g = np.array([c.gain for c in clusters])
    scale = np.sqrt(rx_geom.n_elements * tx_geom.n_elements / len(clusters))
    return scale * (u * g) @ v.conj().T


def draw_channel(rng, tx_geom, rx_geom, n_clusters, aod_sector=AOD_SECTOR, aoa_sector=AOA_SECTOR):
    """Draw one clustered channel realization.

    Cluster gains are i.i.d. circularly symmetric unit-variance complex
    Gaussians; departure angles are uniform over ``aod_sector`` and
    arrival angles uniform over ``aoa_sector``, azimuth and zenith drawn
    independently. The draw order (gains, AoD azimuths, AoD zeniths, AoA
    azimuths, AoA zeniths) is fixed so a seeded generator reproduces the
    same realization.
    """
    if n_clusters < 1:
        raise ValueError(f"n_clusters must be >= 1, got {n_clusters}")
    gains = (rng.standard_normal(n_clusters) + 1j * rng.standard_normal(n_clusters)) / np.sqrt(2.0)
    d = np.deg2rad
    aod_az = rng.uniform(d(aod_sector.az_deg[0]), d(aod_sector.az_deg[1]), n_clusters)
    aod_zen = rng.uniform(d(aod_sector.zen_deg[0]), d(aod_sector.zen_deg[1]), n_clusters)
    aoa_az = rng.uniform(d(aoa_sector.az_deg[0]), d(aoa_sector.az_deg[1]), n_clusters)
    aoa_zen = rng.uniform(d(aoa_sector.zen_deg[0]), d(aoa_sector.zen_deg[1]), n_clusters)
    clusters = tuple(
        ClusterParams(
            gain=complex(gains[i]),
            aod_az=float(aod_az[i]),
            aod_zen=float(aod_zen[i]),
            aoa_az=float(aoa_az[i]),
            aoa_zen=float(aoa_zen[i]),
        )
        for i in range(n_clusters)
    )
    return ChannelRealization(
        h=_assemble(clusters, tx_geom, rx_geom),
        clusters=clusters,
        tx_geom=tx_geom,
        rx_geom=rx_geom,
    )
