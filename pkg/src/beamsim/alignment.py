"""Beam alignment: exhaustive sweep, top-pair selection, phase estimation.

The alignment phase measures the received SNR of every (receive beam,
transmit beam) pair, keeps the strongest P pairs subject to distinct
transmit beams, and estimates the per-pair phase from one noisy pilot.
"""

import numpy as np

__all__ = [
    "DimensionMismatchError",
    "sweep_snr",
    "top_pairs",
    "estimate_pair_phase",
]


class DimensionMismatchError(ValueError):
    """Channel dimensions do not match the codebook geometries."""


def _as_matrix(h):
    """Accept either a ChannelRealization or a bare complex matrix."""
    return h.h if hasattr(h, "h") else np.asarray(h, dtype=complex)


def sweep_snr(h, f_tr, g_tr):
    """Exhaustive-sweep SNR table: ``values[m, n] = |g_m^H H f_n|^2``.

    The sweep is noiseless by definition; only the subsequent phase
    estimate carries pilot noise.
    """
    hm = _as_matrix(h)
    if hm.shape != (g_tr.beams.shape[0], f_tr.beams.shape[0]):
        raise DimensionMismatchError(
            f"channel {hm.shape} does not match rx dim {g_tr.beams.shape[0]} "
            f"x tx dim {f_tr.beams.shape[0]}"
        )
    return np.abs(g_tr.beams.conj().T @ hm @ f_tr.beams) ** 2


def top_pairs(table, p):
    """Greedy top-``p`` beam pairs with distinct transmit indices.

    Repeatedly picks the highest-SNR remaining pair whose transmit index is
    not already taken; ties break toward smaller receive index, then
    smaller transmit index. Returns a list of ``(m, n, snr)`` tuples in
    selection order, so SNRs are non-increasing.
    """
    t = np.asarray(table, dtype=float)
    n_rx, n_tx = t.shape
    if p > n_tx:
        raise ValueError(f"p = {p} exceeds the {n_tx} distinct transmit beams available")
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    m_idx, n_idx = np.unravel_index(np.arange(t.size), t.shape)
    order = np.lexsort((n_idx, m_idx, -t.ravel()))
    used = set()
    pairs = []
    for flat in order:
        n = int(n_idx[flat])
        if n in used:
            continue
        used.add(n)
        pairs.append((int(m_idx[flat]), n, float(t.flat[flat])))
        if len(pairs) == p:
            break
    return pairs


def estimate_pair_phase(h, f, g, rho, rng, noiseless=False):
    """Phase of the pilot observation ``sqrt(rho) g^H H f + n``.

    The pilot symbol is fixed to 1 and ``n`` is unit-variance circularly
    symmetric complex Gaussian noise; with ``noiseless`` the exact angle of
    ``g^H H f`` is returned and ``rng`` is not consumed.
    """
    s = np.vdot(g, _as_matrix(h) @ f)
    if noiseless:
        return float(np.angle(s))
    noise = (rng.standard_normal() + 1j * rng.standard_normal()) / np.sqrt(2.0)
    return float(np.angle(np.sqrt(rho) * s + noise))
