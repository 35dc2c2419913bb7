"""Multi-user transmit beam construction.

Three realizable schemes over reconstructed channel rows: beam steering
(each user's best alignment beam), zeroforcing (normalized columns of
``H^H (H H^H)^{-1}``, which null the reconstructed-row interference), and
the generalized-eigenvector beam that trades signal power against leakage
with nonnegative weights eta. Any produced beam set can be pushed through
the RF quantizer.
"""

from dataclasses import dataclass, replace

import numpy as np

from . import linalg
from .quantizers import quantize_beam

__all__ = [
    "RankDeficientError",
    "PrecoderSet",
    "zf_beams",
    "steer_best",
    "ge_beam",
    "quantize_precoder",
]

# schemes recognized in configs and CSV output; _q marks RF-quantized variants
SCHEME_NAMES = ("steer", "zf", "ge", "scalar_ub", "alt_opt", "mrt_mrc_zf")


class RankDeficientError(np.linalg.LinAlgError):
    """User rows are (numerically) colinear; zeroforcing is undefined."""


@dataclass(frozen=True)
class PrecoderSet:
    """K transmit beams (columns) plus the scheme label that produced them.

    The power constraint ``sum_k ||f_k||^2 <= K`` is checked on
    construction; unit-norm beams meet it with equality, quantized beams
    may sit below it.
    """

    beams: np.ndarray
    scheme: str
    quantized: bool = False

    def __post_init__(self):
        if self.scheme not in SCHEME_NAMES:
            raise ValueError(f"unknown scheme {self.scheme!r}; choose from {SCHEME_NAMES}")
        k = self.beams.shape[1]
        power = float(np.sum(np.abs(self.beams) ** 2))
        if power > k + 1e-9:
            raise ValueError(f"beam set power {power:.12f} exceeds the budget K = {k}")

    @property
    def n_users(self):
        return self.beams.shape[1]


def _zf_columns(rows):
    """Unit-norm columns of ``rows^H (rows rows^H)^{-1}`` with a rank gate."""
    rows = np.asarray(rows, dtype=complex)
    sv = np.linalg.svd(rows, compute_uv=False)
    if sv[-1] <= 1e-10 * sv[0]:
        raise RankDeficientError(
            f"row matrix is rank deficient (singular values {sv[0]:.3e} .. {sv[-1]:.3e})"
        )
    gram = rows @ rows.conj().T
    raw = np.linalg.solve(gram, rows).conj().T
    return raw / np.linalg.norm(raw, axis=0, keepdims=True)


def zf_beams(rows):
    """Zeroforcing beams for stacked user rows (K x N_t).

    The returned unit beams satisfy ``|row_k . f_m| <= 1e-9 ||row_k||`` for
    every m != k. Raises RankDeficientError when the rows are numerically
    colinear (callers typically fall back to steering and flag the trial).
    """
    return PrecoderSet(beams=_zf_columns(rows), scheme="zf")


def steer_best(reports, f_tr):
    """One codebook beam per user: each report's strongest transmit index.

    The scheduler guarantees distinct best indices, so duplicate beams
    here indicate a protocol violation and raise.
    """
    idx = [r.rows[0].n_idx for r in reports]
    if len(set(idx)) != len(idx):
        raise ValueError(f"duplicate best transmit beams {idx}; scheduling must avoid this")
    return PrecoderSet(beams=f_tr.beams[:, idx].copy(), scheme="steer")


def ge_beam(k, rows, eta):
    """Generalized-eigenvector beam for user ``k``.

    Solves the rank-one generalized Rayleigh problem max
    ``|row_k f|^2 / (f^H B f)`` with ``B = I + sum_{m != k} eta[m, k]
    row_m^H row_m`` through its closed form ``B^{-1} row_k^H``, normalized.
    ``eta = 0`` recovers the matched beam, large eta approaches
    zeroforcing.
    """
    rows = np.asarray(rows, dtype=complex)
    eta = np.asarray(eta, dtype=float)
    if np.any(eta < 0):
        raise ValueError("eta weights must be nonnegative")
    n_t = rows.shape[1]
    b = np.eye(n_t, dtype=complex)
    for m in range(rows.shape[0]):
        if m != k:
            b += eta[m, k] * np.outer(rows[m].conj(), rows[m])
    f = linalg.herm_solve(b, rows[k].conj())
    return f / np.linalg.norm(f)


def quantize_precoder(p, spec):
    """Apply the RF beam quantizer to every beam of a precoder set."""
    if spec.bits_amp is None and spec.bits_phase is None:
        return p
    q = np.stack([quantize_beam(p.beams[:, i], spec) for i in range(p.beams.shape[1])], axis=1)
    return replace(p, beams=q, quantized=True)
