"""Finite-precision quantizers for feedback fields and RF beam weights.

Bit fields accept ``None`` as the infinite-precision sentinel, meaning
pass-through. Rounding is half-away-from-zero throughout.

Quantizer families:

- phase: uniform on [0, 2pi), level 2pi wraps to 0
- amplitude: uniform on [0, 1] with both endpoints in the level set
- SNR: uniform on a dB scale, capped at the top level, nearest with ties up
- beam weights: per-entry dB amplitude levels with a floor-to-grid rule
  that can only reduce power, plus uniform phase quantization
"""

from dataclasses import dataclass

import numpy as np

__all__ = [
    "OutOfRangeError",
    "SnrQuantSpec",
    "BeamQuantSpec",
    "FeedbackQuantSpec",
    "quantize_phase",
    "quantize_amplitude",
    "quantize_snr_db",
    "quantize_beam",
    "amp_levels_db",
    "SNR_PRESETS",
    "BEAM_PRESETS",
    "INFINITE_FEEDBACK",
]

_TWO_PI = 2.0 * np.pi


class OutOfRangeError(ValueError):
    """Input lies outside the quantizer's admissible range."""


def _check_bits(bits, name, minimum=1):
    if bits is None:
        return
    if int(bits) != bits or bits < minimum:
        raise ValueError(f"{name} must be an integer >= {minimum} or None, got {bits!r}")


@dataclass(frozen=True)
class SnrQuantSpec:
    """dB-scale SNR quantizer: ``2**bits`` levels from rho_max_db downward
    spanning delta_db."""

    bits: int
    rho_max_db: float
    delta_db: float

    def __post_init__(self):
        _check_bits(self.bits, "bits")
        if self.bits is None:
            raise ValueError("SnrQuantSpec requires finite bits; use FeedbackQuantSpec "
                             "sentinels for pass-through")
        if not self.delta_db > 0:
            raise ValueError(f"delta_db must be > 0, got {self.delta_db}")

    def levels(self):
        n = 2 ** self.bits - 1
        return self.rho_max_db - self.delta_db * np.arange(n + 1) / n


@dataclass(frozen=True)
class BeamQuantSpec:
    """RF beam-weight quantizer: dB amplitude grid with step ``step_db`` and
    uniform phase grid; either field may be None for pass-through."""

    bits_amp: int
    bits_phase: int
    step_db: float

    def __post_init__(self):
        _check_bits(self.bits_amp, "bits_amp")
        _check_bits(self.bits_phase, "bits_phase")
        if not self.step_db > 0:
            raise ValueError(f"step_db must be > 0, got {self.step_db}")


@dataclass(frozen=True)
class FeedbackQuantSpec:
    """Bit budget for the four quantized feedback fields.

    ``None`` in any field means infinite precision (pass-through) for that
    field. ``snr_max_db`` / ``snr_span_db`` parameterize the SNR quantizer
    when ``b_snr`` is finite.
    """

    b_snr: int = None
    b_est_phase: int = None
    b_corr_amp: int = None
    b_corr_phase: int = None
    snr_max_db: float = 30.0
    snr_span_db: float = 24.0

    def __post_init__(self):
        for name in ("b_snr", "b_est_phase", "b_corr_amp", "b_corr_phase"):
            _check_bits(getattr(self, name), name, minimum=0)

    def snr_spec(self):
        if self.b_snr is None:
            return None
        return SnrQuantSpec(self.b_snr, self.snr_max_db, self.snr_span_db)


INFINITE_FEEDBACK = FeedbackQuantSpec()


def _round_half_away(x):
    return np.sign(x) * np.floor(np.abs(x) + 0.5)


def quantize_phase(theta, bits):
    """Uniform phase quantizer on [0, 2pi); ``bits=None`` is the identity."""
    if bits is None:
        return theta
    theta = np.asarray(theta, dtype=float) % _TWO_PI
    n = 2 ** bits
    k = _round_half_away(theta * n / _TWO_PI) % n
    out = k * (_TWO_PI / n)
    return float(out) if out.ndim == 0 else out


def quantize_amplitude(alpha, bits):
    """Uniform amplitude quantizer on [0, 1] including both endpoints."""
    if bits is None:
        return alpha
    alpha = np.asarray(alpha, dtype=float)
    if np.any(alpha < -1e-12) or np.any(alpha > 1 + 1e-12):
        raise OutOfRangeError(f"amplitude outside [0, 1]: {alpha}")
    alpha = np.clip(alpha, 0.0, 1.0)
    n = 2 ** bits - 1
    out = _round_half_away(alpha * n) / n
    return float(out) if out.ndim == 0 else out


def quantize_snr_db(x_db, spec):
    """Nearest dB level of ``spec``, capping above the top level first.

    Levels run from ``rho_max_db`` down across ``delta_db``; exact midpoints
    resolve to the higher level. Inputs below the bottom level (including
    -inf) clamp to it.
    """
    n = 2 ** spec.bits - 1
    step = spec.delta_db / n
    d = spec.rho_max_db - min(float(x_db), spec.rho_max_db)
    i = np.clip(np.ceil(d / step - 0.5), 0, n)
    return spec.rho_max_db - float(i) * step


def amp_levels_db(spec):
    """The finite dB amplitude level grid of a BeamQuantSpec (ascending)."""
    half = 2 ** (spec.bits_amp - 1)
    return spec.step_db * (np.arange(2 ** spec.bits_amp) + 1 - half)


def quantize_beam(f, spec):
    """Quantize a transmit beam's per-entry amplitudes and phases.

    Entry amplitudes are mapped on the dB scale ``10 log10(n_t |f_i|^2)``:
    values below the lowest level are zeroed, otherwise the largest level
    strictly below the input is taken (lowest level if the input sits
    exactly on it), so quantization can only remove power. Phases go
    through :func:`quantize_phase`. Requires ``norm(f) <= 1``.
    """
    f = np.asarray(f, dtype=complex)
    if np.linalg.norm(f) > 1 + 1e-12:
        raise OutOfRangeError("beam exceeds unit power")
    if spec.bits_amp is None and spec.bits_phase is None:
        return f.copy()

    n_t = f.size
    if spec.bits_amp is None:
        amp = np.abs(f)
    else:
        levels = amp_levels_db(spec)
        with np.errstate(divide="ignore"):
            p_db = 10.0 * np.log10(n_t * np.abs(f) ** 2)
        # index of the largest level strictly below p_db; exact grid hits
        # floor to the level beneath, except the lowest level keeps itself
        j = np.ceil((p_db - levels[0]) / spec.step_db) - 1
        j = np.clip(j, 0, levels.size - 1).astype(int)
        amp = np.where(p_db < levels[0], 0.0, 10.0 ** (levels[j] / 20.0) / np.sqrt(n_t))

    phase = quantize_phase(np.angle(f) % _TWO_PI, spec.bits_phase)
    return amp * np.exp(1j * np.asarray(phase))


# named parameter sets selectable from config files
SNR_PRESETS = {
    "snr_b2": SnrQuantSpec(bits=2, rho_max_db=30.0, delta_db=24.0),
    "snr_b4": SnrQuantSpec(bits=4, rho_max_db=30.0, delta_db=30.0),
}
BEAM_PRESETS = {
    "beam_b4": BeamQuantSpec(bits_amp=4, bits_phase=4, step_db=1.0),
    "beam_b6": BeamQuantSpec(bits_amp=6, bits_phase=6, step_db=0.25),
}
