"""Config-file loading for the simulation driver.

INI-style sections of flat key-value pairs, mirroring SimConfig fields:

    [sim]                trials, master_seed, k_cell, k, rho_db, p,
                         schemes, workers, max_redraws, out
    [channel]            n_clusters, tx_nx, tx_nz, rx_nx, rx_nz,
                         aod_az_deg, aod_zen_deg, aoa_az_deg, aoa_zen_deg
    [codebooks]          bs, ue
    [feedback_quant]     b_snr, b_est_phase, b_corr_amp, b_corr_phase,
                         snr_max_db, snr_span_db, snr_preset, noiseless_phase
    [beam_quant]         bits_amp, bits_phase, step_db, preset
    [bounds.scalar_ub]   restarts, max_iters, step_init, grad_eps, tol
    [bounds.alt_opt]     n_stop, eta_grid, tol, init, accelerate

Lists are comma separated; bit fields accept ``inf`` for infinite
precision. Unknown sections or keys are rejected so typos fail loudly.
"""

import configparser

from . import bounds as bounds_mod
from .channel import ArrayGeometry, SectorSpec
from .evaluation import SimConfig
from .quantizers import BEAM_PRESETS, SNR_PRESETS, BeamQuantSpec, FeedbackQuantSpec

__all__ = ["ConfigError", "load_config", "parse_config"]


class ConfigError(ValueError):
    """Malformed or inconsistent configuration."""


_KNOWN_KEYS = {
    "sim": {"trials", "master_seed", "k_cell", "k", "rho_db", "p", "schemes",
            "workers", "max_redraws", "out"},
    "channel": {"n_clusters", "tx_nx", "tx_nz", "rx_nx", "rx_nz",
                "aod_az_deg", "aod_zen_deg", "aoa_az_deg", "aoa_zen_deg"},
    "codebooks": {"bs", "ue"},
    "feedback_quant": {"b_snr", "b_est_phase", "b_corr_amp", "b_corr_phase",
                       "snr_max_db", "snr_span_db", "snr_preset", "noiseless_phase"},
    "beam_quant": {"bits_amp", "bits_phase", "step_db", "preset"},
    "bounds.scalar_ub": {"restarts", "max_iters", "step_init", "grad_eps", "tol"},
    "bounds.alt_opt": {"n_stop", "eta_grid", "tol", "init", "accelerate"},
}


def _bits(raw):
    if raw.strip().lower() in ("inf", "infinite", "none"):
        return None
    return int(raw)


def _int_list(raw):
    return tuple(int(x) for x in raw.split(","))


def _float_list(raw):
    return tuple(float(x) for x in raw.split(","))


def _str_list(raw):
    return tuple(x.strip() for x in raw.split(",") if x.strip())


def _bool(raw):
    v = raw.strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {raw!r}")


def parse_config(text):
    """Parse config text into a validated SimConfig."""
    cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        cp.read_string(text)
    except configparser.Error as e:
        raise ConfigError(f"cannot parse config: {e}") from None

    for section in cp.sections():
        if section not in _KNOWN_KEYS:
            raise ConfigError(f"unknown config section [{section}]")
        extra = set(cp[section]) - _KNOWN_KEYS[section]
        if extra:
            raise ConfigError(f"unknown keys {sorted(extra)} in section [{section}]")

    kw = {}
    try:
        if cp.has_section("sim"):
            s = cp["sim"]
            for key, conv, dest in (
                ("trials", int, "trials"), ("master_seed", int, "master_seed"),
                ("k_cell", int, "k_cell"), ("k", int, "k"), ("rho_db", float, "rho_db"),
                ("p", _int_list, "p"), ("schemes", _str_list, "schemes"),
                ("workers", int, "workers"), ("max_redraws", int, "max_redraws"),
                ("out", str, "out_path"),
            ):
                if key in s:
                    kw[dest] = conv(s[key])
        if cp.has_section("channel"):
            s = cp["channel"]
            if "n_clusters" in s:
                kw["n_clusters"] = int(s["n_clusters"])
            if "tx_nx" in s or "tx_nz" in s:
                kw["tx_geom"] = ArrayGeometry(int(s.get("tx_nx", 16)), int(s.get("tx_nz", 4)))
            if "rx_nx" in s or "rx_nz" in s:
                kw["rx_geom"] = ArrayGeometry(int(s.get("rx_nx", 2)), int(s.get("rx_nz", 2)))
            if "aod_az_deg" in s or "aod_zen_deg" in s:
                kw["aod_sector"] = SectorSpec(
                    az_deg=_float_list(s.get("aod_az_deg", "-60, 60")),
                    zen_deg=_float_list(s.get("aod_zen_deg", "75, 105")),
                )
            if "aoa_az_deg" in s or "aoa_zen_deg" in s:
                kw["aoa_sector"] = SectorSpec(
                    az_deg=_float_list(s.get("aoa_az_deg", "-60, 60")),
                    zen_deg=_float_list(s.get("aoa_zen_deg", "30, 150")),
                )
        if cp.has_section("codebooks"):
            s = cp["codebooks"]
            if "bs" in s:
                kw["bs_codebook"] = s["bs"].strip()
            if "ue" in s:
                kw["ue_codebook"] = s["ue"].strip()
        if cp.has_section("feedback_quant"):
            s = cp["feedback_quant"]
            if "noiseless_phase" in s:
                kw["noiseless_phase"] = _bool(s["noiseless_phase"])
            fq = {}
            if "snr_preset" in s:
                preset = s["snr_preset"].strip()
                if preset not in SNR_PRESETS:
                    raise ConfigError(f"unknown snr preset {preset!r}")
                spec = SNR_PRESETS[preset]
                fq.update(b_snr=spec.bits, snr_max_db=spec.rho_max_db, snr_span_db=spec.delta_db)
            for key in ("b_snr", "b_est_phase", "b_corr_amp", "b_corr_phase"):
                if key in s:
                    fq[key] = _bits(s[key])
            for key in ("snr_max_db", "snr_span_db"):
                if key in s:
                    fq[key] = float(s[key])
            if fq:
                kw["feedback_quant"] = FeedbackQuantSpec(**fq)
        if cp.has_section("beam_quant"):
            s = cp["beam_quant"]
            if "preset" in s:
                preset = s["preset"].strip()
                if preset not in BEAM_PRESETS:
                    raise ConfigError(f"unknown beam quant preset {preset!r}")
                base = BEAM_PRESETS[preset]
                kw["beam_quant"] = BeamQuantSpec(
                    bits_amp=_bits(s["bits_amp"]) if "bits_amp" in s else base.bits_amp,
                    bits_phase=_bits(s["bits_phase"]) if "bits_phase" in s else base.bits_phase,
                    step_db=float(s["step_db"]) if "step_db" in s else base.step_db,
                )
            elif set(s):
                kw["beam_quant"] = BeamQuantSpec(
                    bits_amp=_bits(s["bits_amp"]) if "bits_amp" in s else None,
                    bits_phase=_bits(s["bits_phase"]) if "bits_phase" in s else None,
                    step_db=float(s["step_db"]) if "step_db" in s else 1.0,
                )
        if cp.has_section("bounds.scalar_ub"):
            s = cp["bounds.scalar_ub"]
            kw["scalar_ub_opts"] = bounds_mod.ScalarUbOptions(
                restarts=int(s.get("restarts", 2)),
                max_iters=int(s.get("max_iters", 40)),
                step_init=float(s.get("step_init", 0.5)),
                grad_eps=float(s.get("grad_eps", 1e-6)),
                tol=float(s.get("tol", 1e-4)),
            )
        if cp.has_section("bounds.alt_opt"):
            s = cp["bounds.alt_opt"]
            kw["alt_opt_opts"] = bounds_mod.AltOptOptions(
                n_stop=int(s.get("n_stop", 10)),
                eta_grid=_float_list(s.get("eta_grid", "0, 0.1, 1, 10, 100")),
                tol=float(s.get("tol", 1e-3)),
                init=s.get("init", "matched"),
                accelerate=_bool(s.get("accelerate", "true")),
            )
    except ConfigError:
        raise
    except (ValueError, TypeError) as e:
        raise ConfigError(f"bad config value: {e}") from None

    cfg = SimConfig(**kw)
    try:
        cfg.validate()
    except ValueError as e:
        raise ConfigError(str(e)) from None
    return cfg


def load_config(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as e:
        raise ConfigError(f"cannot read config file: {e}") from None
    return parse_config(text)


def config_to_text(cfg):
    """Render a SimConfig back to config-file text (round-trip helper)."""
    fq = cfg.feedback_quant
    bit = lambda b: "inf" if b is None else str(b)
    lines = [
        "[sim]",
        f"trials = {cfg.trials}",
        f"master_seed = {cfg.master_seed}",
        f"k_cell = {cfg.k_cell}",
        f"k = {cfg.k}",
        f"rho_db = {cfg.rho_db}",
        f"p = {', '.join(str(x) for x in cfg.p)}",
        f"schemes = {', '.join(cfg.schemes)}",
        f"workers = {cfg.workers}",
        f"out = {cfg.out_path}",
        "",
        "[channel]",
        f"n_clusters = {cfg.n_clusters}",
        f"tx_nx = {cfg.tx_geom.n_x}",
        f"tx_nz = {cfg.tx_geom.n_z}",
        f"rx_nx = {cfg.rx_geom.n_x}",
        f"rx_nz = {cfg.rx_geom.n_z}",
        f"aod_az_deg = {cfg.aod_sector.az_deg[0]}, {cfg.aod_sector.az_deg[1]}",
        f"aod_zen_deg = {cfg.aod_sector.zen_deg[0]}, {cfg.aod_sector.zen_deg[1]}",
        f"aoa_az_deg = {cfg.aoa_sector.az_deg[0]}, {cfg.aoa_sector.az_deg[1]}",
        f"aoa_zen_deg = {cfg.aoa_sector.zen_deg[0]}, {cfg.aoa_sector.zen_deg[1]}",
        "",
        "[codebooks]",
        f"bs = {cfg.bs_codebook}",
        f"ue = {cfg.ue_codebook}",
        "",
        "[feedback_quant]",
        f"b_snr = {bit(fq.b_snr)}",
        f"b_est_phase = {bit(fq.b_est_phase)}",
        f"b_corr_amp = {bit(fq.b_corr_amp)}",
        f"b_corr_phase = {bit(fq.b_corr_phase)}",
        f"snr_max_db = {fq.snr_max_db}",
        f"snr_span_db = {fq.snr_span_db}",
        f"noiseless_phase = {str(cfg.noiseless_phase).lower()}",
    ]
    if cfg.beam_quant is not None:
        bq = cfg.beam_quant
        lines += [
            "",
            "[beam_quant]",
            f"bits_amp = {bit(bq.bits_amp)}",
            f"bits_phase = {bit(bq.bits_phase)}",
            f"step_db = {bq.step_db}",
        ]
    return "\n".join(lines) + "\n"
