"""Per-user SINR and sum rate with interference treated as noise.

Kept in a leaf module so precoder searches and the Monte Carlo driver
score candidate beams with literally the same function (several
dominance guarantees in `bounds` rely on bitwise-equal evaluation).
"""

import numpy as np

__all__ = ["sinr", "sum_rate"]


def _as_matrix(h):
    return h.h if hasattr(h, "h") else np.asarray(h, dtype=complex)


def sinr(h_k, beams, g_k, rho, k):
    """SINR of user ``k``: ``(rho/K) |g^H H f_k|^2 / (1 + (rho/K) sum_{m != k} |g^H H f_m|^2)``.

    ``beams`` holds the K transmit beams as columns; the per-beam transmit
    power is ``rho / K`` under the equal-split power policy.
    """
    hm = _as_matrix(h_k)
    k_users = beams.shape[1]
    p = rho / k_users
    rx = g_k.conj() @ hm @ beams
    powers = np.abs(rx) ** 2
    interf = max(float(np.sum(powers) - powers[k]), 0.0)
    return float(p * powers[k] / (1.0 + p * interf))


def sum_rate(h_list, beams, g_list, rho):
    """Sum over users of ``log2(1 + sinr_k)`` in bits/s/Hz."""
    total = 0.0
    for k in range(beams.shape[1]):
        total += np.log2(1.0 + sinr(h_list[k], beams, g_list[k], rho, k))
    return float(total)
