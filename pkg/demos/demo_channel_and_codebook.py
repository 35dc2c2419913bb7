"""
Cluster channels and codebook beams
===================================

Draws a few geometric cluster channels, checks their normalization, and
sweeps the base-station codebook presets over the transmit sector to see
how worst-case coverage improves with beam count.
"""

import numpy as np

from beamsim.channel import (
    AOA_SECTOR,
    AOD_SECTOR,
    ArrayGeometry,
    draw_channel,
    steering_vector,
)
from beamsim.codebook import codebook_presets

rng = np.random.default_rng(0)
tx = ArrayGeometry(16, 4)
rx = ArrayGeometry(2, 2)

# --- a single steering vector ------------------------------------------
v = steering_vector(tx, az=np.deg2rad(20.0), zen=np.deg2rad(90.0))
print("steering vector: %d elements, norm %.6f" % (v.size, np.linalg.norm(v)))

# --- channel draws -----------------------------------------------------
# each draw is a handful of single-path clusters with angles confined to
# the transmit/receive sectors; Frobenius norm^2 concentrates near Nr*Nt
h = draw_channel(rng, tx, rx, 6, AOD_SECTOR, AOA_SECTOR)
print("channel shape %s, %d clusters" % (h.h.shape, len(h.clusters)))
print("rebuilt-from-clusters error %.2e" % np.linalg.norm(h.h - h.assemble()))

norms = [
    np.linalg.norm(draw_channel(rng, tx, rx, 6, AOD_SECTOR, AOA_SECTOR).h) ** 2
    for _ in range(500)
]
print("E||H||_F^2 / (Nr*Nt) over 500 draws: %.3f" % (np.mean(norms) / (4 * 64)))

# --- codebook coverage -------------------------------------------------
# worst-case gain of the best beam toward any direction in the sector;
# denser codebooks close the gaps between beams
az_scan = np.deg2rad(np.arange(-60.0, 60.0, 1.0))
zen_scan = np.deg2rad(np.arange(75.0, 105.0, 1.0))
for name in ("bs4", "bs8", "bs16", "bs32"):
    cb = codebook_presets(name)
    worst = np.inf
    for zen in zen_scan:
        targets = np.stack([steering_vector(tx, az, zen) for az in az_scan], axis=1)
        best = np.max(np.abs(cb.beams.conj().T @ targets) ** 2, axis=0)
        worst = min(worst, 64 * best.min())
    print("%-5s %2d beams  worst-case sector gain %6.3f" % (name, cb.size, worst))
