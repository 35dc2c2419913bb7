"""Shared fixtures: real CSV artifacts produced through the simulator CLI.

The plotting package only ever sees the simulator through its CSV files,
so the fixtures here generate those files the same way a user would — by
running the installed ``beamsim`` executable — just with a reduced trial
count to keep the suite fast.
"""

import shutil
import subprocess

import pytest

from beamplots.csvio import RESULTS_HEADER


def _beamsim(*args):
    exe = shutil.which("beamsim")
    assert exe is not None, "the `beamsim` CLI must be installed to build plot fixtures"
    proc = subprocess.run([exe, *args], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    return proc


@pytest.fixture(scope="session")
def results_csv(tmp_path_factory):
    """Steer-vs-zeroforcing Monte Carlo results (300 trials, P swept 1/2/4)."""
    d = tmp_path_factory.mktemp("results")
    cfg = d / "cfg.ini"
    cfg.write_text(
        "[sim]\n"
        "trials = 300\n"
        "master_seed = 601\n"
        "schemes = steer, zf\n"
        "p = 1, 2, 4\n"
    )
    out = d / "results.csv"
    _beamsim("run", "--config", str(cfg), "--out", str(out))
    return out


@pytest.fixture(scope="session")
def beams8_csv(tmp_path_factory):
    """Azimuth cuts of the 8-beam transmit codebook preset."""
    out = tmp_path_factory.mktemp("beams8") / "beams.csv"
    _beamsim("inspect-codebook", "--preset", "bs8", "--out", str(out))
    return out


@pytest.fixture(scope="session")
def beams4_csv(tmp_path_factory):
    """Azimuth cuts of the 4-beam receive codebook preset."""
    out = tmp_path_factory.mktemp("beams4") / "beams.csv"
    _beamsim("inspect-codebook", "--preset", "ue4", "--out", str(out))
    return out


def write_results(path, rows):
    """Write a handcrafted results CSV; rows are (trial, scheme, p, sum_rate)."""
    lines = [RESULTS_HEADER]
    for trial, scheme, p, rate in rows:
        lines.append(f"{trial},{scheme},{p},8,16,10,{rate},{rate / 2},{rate / 2},")
    path.write_text("\n".join(lines) + "\n")
    return path
