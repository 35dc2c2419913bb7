"""Tests for the command-line front end and its exit codes."""

import json
import shutil
import subprocess

import pytest

from beamsim.cli import main
from beamsim.codebook import codebook_presets


CFG_SMALL = """
[sim]
trials = 2
k_cell = 4
p = 1, 2
schemes = steer, zf

[channel]
n_clusters = 4
"""


def write_cfg(tmp_path, text=CFG_SMALL, name="sim.ini"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


class TestRun:
    def test_run_writes_csv(self, tmp_path, capsys):
        cfg = write_cfg(tmp_path)
        out = tmp_path / "results.csv"
        assert main(["run", "--config", cfg, "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "trial_id,scheme,P,N,M,rho_db,sum_rate,rate_u1,rate_u2,flags"
        assert len(lines) == 1 + 2 * 3  # 2 trials x (steer + zf at P=1,2)
        stdout = capsys.readouterr().out
        assert "wrote 6 rows (2 trials)" in stdout
        assert "p50" in stdout

    def test_worker_override_is_invisible_in_output(self, tmp_path):
        cfg = write_cfg(tmp_path)
        outs = []
        for workers in ("1", "2"):
            out = tmp_path / f"w{workers}.csv"
            assert main(["run", "--config", cfg, "--out", str(out),
                         "--workers", workers]) == 0
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]

    def test_bad_config_exit_2(self, tmp_path, capsys):
        cfg = write_cfg(tmp_path, "[sim]\ntrails = 2\n")
        assert main(["run", "--config", cfg]) == 2
        assert "config error" in capsys.readouterr().err

    def test_missing_config_exit_2(self, tmp_path):
        assert main(["run", "--config", str(tmp_path / "nope.ini")]) == 2


class TestInspectCodebook:
    def test_writes_gain_cut_csv(self, tmp_path, capsys):
        out = tmp_path / "beams.csv"
        assert main(["inspect-codebook", "--preset", "bs8", "--out", str(out),
                     "--step-deg", "1.0"]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "beam_index,az_deg,gain_db"
        body = [ln.split(",") for ln in lines[1:]]
        assert {int(r[0]) for r in body} == set(range(codebook_presets("bs8").size))
        assert "8 beams" in capsys.readouterr().out

    def test_unknown_preset_exit_2(self, tmp_path):
        # argparse rejects values outside the preset vocabulary with code 2
        with pytest.raises(SystemExit) as exc:
            main(["inspect-codebook", "--preset", "bs12", "--out", str(tmp_path / "x.csv")])
        assert exc.value.code == 2


class TestReport:
    def test_prints_table_and_json(self, tmp_path, capsys):
        cfg = write_cfg(tmp_path)
        out = tmp_path / "results.csv"
        assert main(["run", "--config", cfg, "--out", str(out)]) == 0
        capsys.readouterr()
        assert main(["report", "--in", str(out)]) == 0
        stdout = capsys.readouterr().out
        assert stdout.splitlines()[0].startswith("scheme")
        payload = json.loads(stdout[stdout.index("{"):])
        assert set(payload) == {"steer[P=1]", "zf[P=1]", "zf[P=2]"}
        assert payload["zf[P=2]"]["count"] == 2

    def test_missing_csv_exit_3(self, tmp_path, capsys):
        assert main(["report", "--in", str(tmp_path / "absent.csv")]) == 3
        assert "error" in capsys.readouterr().err

    def test_header_only_csv_exit_3(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("trial_id,scheme,P,N,M,rho_db,sum_rate,rate_u1,rate_u2,flags\n")
        assert main(["report", "--in", str(path)]) == 3


class TestEntryPoint:
    def test_console_script_installed(self, tmp_path):
        exe = shutil.which("beamsim")
        assert exe, "console script beamsim not on PATH"
        out = tmp_path / "beams.csv"
        proc = subprocess.run([exe, "inspect-codebook", "--preset", "ue4",
                               "--out", str(out)], capture_output=True, text=True)
        assert proc.returncode == 0
        assert out.exists()
