"""Multi-user millimeter-wave beamforming simulator.

Library layout:

- ``linalg``     small dense Hermitian kernels (solves, inverse sqrt, eigenvectors)
- ``channel``    clustered geometric MIMO channel with planar-array steering
- ``codebook``   steered beam codebooks on uniform sine/cosine grids
- ``alignment``  exhaustive beam sweeps, top-pair selection, phase estimation
- ``quantizers`` phase / amplitude / SNR-dB / beam-weight quantizers
- ``feedback``   per-user beam reports and effective-row reconstruction
- ``precoders``  steered, zero-forcing and interference-aware transmit beams
- ``bounds``     scalar upper bound, alternating optimization, full-CSI baseline
- ``evaluation`` SINR / sum-rate, scheduling, Monte Carlo driver, CSV output
"""

from . import linalg
from . import channel
from . import codebook
from . import alignment
from . import quantizers
from . import feedback
from . import precoders
from . import bounds
from . import evaluation

__version__ = "0.1.0"

__all__ = [
    "linalg",
    "channel",
    "codebook",
    "alignment",
    "quantizers",
    "feedback",
    "precoders",
    "bounds",
    "evaluation",
]
