"""Per-user beam reports and effective-row reconstruction.

After alignment each user feeds back P rows of five numbers: transmit beam
index, gamma (square root of the quantized linear SNR), the pair phase
relative to the strongest pair, and the receive-beam correlation magnitude
mu and phase (also relative). The base station rebuilds the user's
effective channel row ``g^H H`` as a linear combination of the reported
transmit beams. The user's receive beam is pinned to its strongest
alignment beam, so the first row always has mu = 1 and zero relative
phases; the absolute common phase is never fed back (every rate metric is
invariant to it).
"""

import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from .alignment import estimate_pair_phase, sweep_snr, top_pairs
from .quantizers import (
    FeedbackQuantSpec,
    quantize_amplitude,
    quantize_phase,
    quantize_snr_db,
)

__all__ = [
    "BadIndexError",
    "ReportRow",
    "BeamReport",
    "build_report",
    "truncate_report",
    "reconstruct_row",
    "feedback_bits",
    "heuristic_feedback_spec",
    "report_to_json",
    "report_from_json",
]


class BadIndexError(IndexError):
    """A report references a transmit beam index outside the codebook."""


@dataclass(frozen=True)
class ReportRow:
    """One fed-back path: beam index, gain, and relative phase/correlation."""

    n_idx: int
    gamma: float
    rel_phase: float
    mu: float
    rel_corr_phase: float


@dataclass(frozen=True)
class BeamReport:
    """P report rows plus the identity (index m1) of the receive beam."""

    rows: tuple
    g_rx: int


def build_report(h, f_tr, g_tr, p, rho, fq, rng, noiseless=False):
    """Run the full alignment-and-quantize pipeline for one user.

    Sweeps all beam pairs, keeps the top ``p`` with distinct transmit
    beams, then per pair: quantizes the swept SNR on the dB scale into
    gamma, estimates and quantizes the pair phase (one noisy pilot unless
    ``noiseless``), and quantizes the receive-beam correlation
    ``g^H g_m`` into (mu, nu). Phases are stored relative to the first
    pair. ``fq`` fields set to None leave the matching quantity exact.
    """
    table = sweep_snr(h, f_tr, g_tr)
    pairs = top_pairs(table, p)
    m1 = pairs[0][0]
    g = g_tr.beams[:, m1]
    snr_spec = fq.snr_spec()

    phases = []
    gammas = []
    mus = []
    nus = []
    for m, n, snr in pairs:
        if snr_spec is None:
            gamma = math.sqrt(snr)
        else:
            q_db = quantize_snr_db(10.0 * np.log10(snr) if snr > 0 else -np.inf, snr_spec)
            gamma = 10.0 ** (q_db / 20.0)
        phi = estimate_pair_phase(h, f_tr.beams[:, n], g, rho, rng, noiseless=noiseless)
        phases.append(quantize_phase(phi, fq.b_est_phase))
        beta = np.vdot(g, g_tr.beams[:, m])
        mus.append(quantize_amplitude(min(abs(beta), 1.0), fq.b_corr_amp))
        nus.append(quantize_phase(float(np.angle(beta)), fq.b_corr_phase))
        gammas.append(gamma)

    rows = tuple(
        ReportRow(
            n_idx=pairs[i][1],
            gamma=float(gammas[i]),
            rel_phase=0.0 if i == 0 else float((phases[i] - phases[0]) % (2 * np.pi)),
            mu=float(mus[i]),
            rel_corr_phase=0.0 if i == 0 else float((nus[i] - nus[0]) % (2 * np.pi)),
        )
        for i in range(len(pairs))
    )
    return BeamReport(rows=rows, g_rx=m1)


def truncate_report(report, p):
    """Keep only the strongest ``p`` rows (the greedy selection is
    prefix-stable, so this equals re-running alignment at smaller p)."""
    if not 1 <= p <= len(report.rows):
        raise ValueError(f"cannot truncate a {len(report.rows)}-row report to p = {p}")
    return BeamReport(rows=report.rows[:p], g_rx=report.g_rx)


def reconstruct_row(report, f_tr):
    """Rebuild the effective row ``g^H H`` from a report.

    Returns ``sum_l mu_l gamma_l exp(j(phi_l + nu_l)) f_{n_l}^H`` using the
    stored relative phases; the common phase of the first pair is dropped,
    which leaves every downstream precoder and rate unchanged.
    """
    row = np.zeros(f_tr.beams.shape[0], dtype=complex)
    for r in report.rows:
        if not 0 <= r.n_idx < f_tr.size:
            raise BadIndexError(f"beam index {r.n_idx} outside codebook of size {f_tr.size}")
        coef = r.mu * r.gamma * np.exp(1j * (r.rel_phase + r.rel_corr_phase))
        row += coef * f_tr.beams[:, r.n_idx].conj()
    return row


def feedback_bits(p, n, fq):
    """Total feedback bits for a P-row report against an N-beam codebook.

    ``p * (ceil(log2 n) + b_snr + b_corr_amp) + (p - 1) * (b_est_phase +
    b_corr_phase)``: indices, SNRs and correlation magnitudes are sent for
    every row, phases only as p - 1 differences. All bit fields must be
    finite.
    """
    fields = (fq.b_snr, fq.b_est_phase, fq.b_corr_amp, fq.b_corr_phase)
    if any(b is None for b in fields):
        raise ValueError("feedback_bits requires finite bit fields (no None sentinel)")
    if p < 1 or n < 1:
        raise ValueError(f"need p >= 1 and n >= 1, got p = {p}, n = {n}")
    idx_bits = math.ceil(math.log2(n))
    return p * (idx_bits + fq.b_snr + fq.b_corr_amp) + (p - 1) * (fq.b_est_phase + fq.b_corr_phase)


def heuristic_feedback_spec(p):
    """Bit-budget heuristic tied to the number of reported paths.

    Two SNR bits, p bits for each correlation magnitude, and p total phase
    bits split between estimate and correlation phases, giving
    ``feedback_bits = p (log2 N + 2p + 1)``.
    """
    return FeedbackQuantSpec(
        b_snr=2,
        b_est_phase=math.ceil(p / 2),
        b_corr_phase=p // 2,
        b_corr_amp=p,
    )


def report_to_json(report):
    """Serialize a report for debugging; fields mirror the dataclasses."""
    return json.dumps({"g_rx": report.g_rx, "rows": [asdict(r) for r in report.rows]})


def report_from_json(s):
    d = json.loads(s)
    return BeamReport(rows=tuple(ReportRow(**r) for r in d["rows"]), g_rx=d["g_rx"])
