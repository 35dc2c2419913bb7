"""Tests for config-file parsing and round-tripping."""

import pytest

from beamsim.channel import ArrayGeometry
from beamsim.config import ConfigError, config_to_text, load_config, parse_config
from beamsim.evaluation import SimConfig


FULL_TEXT = """
[sim]
trials = 7
master_seed = 42
k_cell = 6
k = 2
rho_db = 12.5
p = 1, 2, 4
schemes = steer, zf, scalar_ub
workers = 2
out = run.csv

[channel]
n_clusters = 5
tx_nx = 16
tx_nz = 4
rx_nx = 2
rx_nz = 2

[codebooks]
bs = bs16
ue = ue16

[feedback_quant]
b_snr = 2
b_est_phase = 3
b_corr_amp = 4
b_corr_phase = 2
snr_max_db = 30
snr_span_db = 24
noiseless_phase = true

[beam_quant]
preset = beam_b4

[bounds.alt_opt]
n_stop = 20
eta_grid = 0, 1, 10
tol = 1e-4
init = random
accelerate = false
"""


class TestParse:
    def test_empty_text_gives_defaults(self):
        cfg = parse_config("")
        assert cfg == SimConfig()
        assert cfg.trials == 100 and cfg.bs_codebook == "bs8"

    def test_full_config_propagates(self):
        cfg = parse_config(FULL_TEXT)
        assert cfg.trials == 7
        assert cfg.master_seed == 42
        assert cfg.rho_db == 12.5
        assert cfg.p == (1, 2, 4)
        assert cfg.schemes == ("steer", "zf", "scalar_ub")
        assert cfg.workers == 2
        assert cfg.out_path == "run.csv"
        assert cfg.n_clusters == 5
        assert cfg.tx_geom == ArrayGeometry(16, 4)
        assert cfg.bs_codebook == "bs16"
        assert cfg.feedback_quant.b_snr == 2
        assert cfg.feedback_quant.b_est_phase == 3
        assert cfg.noiseless_phase is True
        assert cfg.beam_quant.bits_amp == 4 and cfg.beam_quant.step_db == 1.0
        assert cfg.alt_opt_opts.n_stop == 20
        assert cfg.alt_opt_opts.eta_grid == (0.0, 1.0, 10.0)
        assert cfg.alt_opt_opts.init == "random"
        assert cfg.alt_opt_opts.accelerate is False

    def test_snr_preset_expansion(self):
        cfg = parse_config("[feedback_quant]\nsnr_preset = snr_b4\n")
        assert cfg.feedback_quant.b_snr == 4
        assert cfg.feedback_quant.snr_max_db == 30.0
        assert cfg.feedback_quant.snr_span_db == 30.0

    def test_infinite_bit_sentinels(self):
        cfg = parse_config(
            "[feedback_quant]\nb_snr = inf\nb_est_phase = infinite\nb_corr_amp = none\n"
        )
        assert cfg.feedback_quant.b_snr is None
        assert cfg.feedback_quant.b_est_phase is None
        assert cfg.feedback_quant.b_corr_amp is None

    def test_inline_comments(self):
        cfg = parse_config("[sim]\ntrials = 9  # smoke run\n")
        assert cfg.trials == 9


class TestRejection:
    def test_unknown_section(self):
        with pytest.raises(ConfigError, match="unknown config section"):
            parse_config("[simulation]\ntrials = 3\n")

    def test_unknown_key(self):
        with pytest.raises(ConfigError, match="unknown keys"):
            parse_config("[sim]\ntrails = 3\n")

    def test_bad_scalar_value(self):
        with pytest.raises(ConfigError, match="bad config value"):
            parse_config("[sim]\ntrials = lots\n")

    def test_bad_bool(self):
        with pytest.raises(ConfigError, match="bad config value"):
            parse_config("[bounds.alt_opt]\naccelerate = maybe\n")

    def test_bad_init_choice(self):
        with pytest.raises(ConfigError, match="init must be"):
            parse_config("[bounds.alt_opt]\ninit = svd\n")

    def test_unknown_snr_preset(self):
        with pytest.raises(ConfigError, match="unknown snr preset"):
            parse_config("[feedback_quant]\nsnr_preset = snr_b9\n")

    def test_unknown_beam_preset(self):
        with pytest.raises(ConfigError, match="unknown beam quant preset"):
            parse_config("[beam_quant]\npreset = beam_b9\n")

    def test_semantic_validation_wrapped(self):
        with pytest.raises(ConfigError):
            parse_config("[sim]\nk = 3\n")
        with pytest.raises(ConfigError):
            parse_config("[sim]\nschemes = zf, bogus\n")

    def test_unknown_codebook_preset_surfaces(self):
        with pytest.raises(ConfigError):
            parse_config("[codebooks]\nbs = bs12\n")


class TestRoundTrip:
    def test_text_round_trip(self):
        # bounds options are not rendered; keep them default for the trip
        cfg = parse_config(FULL_TEXT.split("[bounds.alt_opt]")[0])
        cfg2 = parse_config(config_to_text(cfg))
        assert cfg2 == cfg

    def test_load_from_file(self, tmp_path):
        path = tmp_path / "sim.ini"
        path.write_text("[sim]\ntrials = 3\n")
        assert load_config(str(path)).trials == 3

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="cannot read config file"):
            load_config(str(tmp_path / "absent.ini"))
