"""Tests for per-user SINR and the sum-rate objective."""

import numpy as np
import pytest

from beamsim.bounds import mrt_mrc_zf
from beamsim.precoders import zf_beams
from beamsim.rates import sinr, sum_rate


def random_channel(rng, n_rx, n_tx):
    return (rng.standard_normal((n_rx, n_tx)) + 1j * rng.standard_normal((n_rx, n_tx))) / np.sqrt(2)


class TestSinr:
    def test_unit_signal_no_interference(self):
        # |g^H H f|^2 = 1 with rho/K = 1 gives SINR exactly 1
        h = np.eye(4, dtype=complex)
        f = np.zeros((4, 1), dtype=complex)
        f[0, 0] = 1.0
        g = np.zeros(4, dtype=complex)
        g[0] = 1.0
        assert sinr(h, f, g, rho=1.0, k=0) == pytest.approx(1.0, abs=1e-15)

    def test_two_user_symmetric_closed_form(self):
        # equal signal and interference powers s: s*(rho/2) / (1 + s*(rho/2))
        rng = np.random.default_rng(14)
        for _ in range(20):
            s = rng.uniform(0.1, 4.0)
            rho = rng.uniform(0.5, 50.0)
            h = np.eye(2, dtype=complex)
            beams = np.sqrt(s) * np.eye(2, dtype=complex)
            g = np.array([1.0, 0.0], dtype=complex)
            # both columns land on g with power s: one is signal, one interference
            beams[0, 1] = np.sqrt(s)
            beams[1, 1] = 0.0
            got = sinr(h, beams, g, rho, k=0)
            want = s * (rho / 2) / (1 + s * (rho / 2))
            assert got == pytest.approx(want, rel=1e-12)

    def test_zf_on_true_rows_is_interference_free(self):
        rng = np.random.default_rng(15)
        for _ in range(25):
            h_list = [random_channel(rng, 4, 16) for _ in range(2)]
            pset, g_list = mrt_mrc_zf(h_list, rho=10.0)
            for k in range(2):
                rx = g_list[k].conj() @ h_list[k] @ pset.beams
                powers = np.abs(rx) ** 2
                interf = np.sum(powers) - powers[k]
                assert interf <= 1e-18
                got = sinr(h_list[k], pset.beams, g_list[k], rho=10.0, k=k)
                want = (10.0 / 2) * powers[k]
                assert got == pytest.approx(want, rel=1e-9)

    def test_nonnegative(self):
        rng = np.random.default_rng(16)
        for _ in range(50):
            h = random_channel(rng, 2, 8)
            beams = rng.standard_normal((8, 2)) + 1j * rng.standard_normal((8, 2))
            beams /= np.linalg.norm(beams, axis=0, keepdims=True)
            g = rng.standard_normal(2) + 1j * rng.standard_normal(2)
            assert sinr(h, beams, g / np.linalg.norm(g), rho=5.0, k=0) >= 0.0


class TestSumRate:
    def test_zero_channel(self):
        h = np.zeros((2, 8), dtype=complex)
        beams = np.zeros((8, 2), dtype=complex)
        beams[0, 0] = beams[1, 1] = 1.0
        g = np.array([1.0, 0.0], dtype=complex)
        assert sum_rate([h, h], beams, [g, g], rho=10.0) == 0.0

    def test_single_user_matched(self):
        # K = 1 matched filter: log2(1 + rho * ||g^H H||^2)
        rng = np.random.default_rng(17)
        for _ in range(20):
            h = random_channel(rng, 4, 16)
            g = rng.standard_normal(4) + 1j * rng.standard_normal(4)
            g /= np.linalg.norm(g)
            row = g.conj() @ h
            f = (row.conj() / np.linalg.norm(row))[:, None]
            rho = rng.uniform(0.5, 100.0)
            want = np.log2(1 + rho * np.linalg.norm(row) ** 2)
            assert sum_rate([h], f, [g], rho) == pytest.approx(want, rel=1e-12)

    def test_monotone_in_rho_for_interference_free_beams(self):
        rng = np.random.default_rng(18)
        for _ in range(25):
            h_list = [random_channel(rng, 4, 16) for _ in range(2)]
            g_list = []
            rows = []
            for h in h_list:
                g = rng.standard_normal(4) + 1j * rng.standard_normal(4)
                g /= np.linalg.norm(g)
                g_list.append(g)
                rows.append(g.conj() @ h)
            beams = zf_beams(np.array(rows)).beams
            rhos = np.sort(rng.uniform(0.1, 1000.0, size=5))
            rates = [sum_rate(h_list, beams, g_list, r) for r in rhos]
            assert all(b >= a for a, b in zip(rates, rates[1:]))

    def test_matches_sinr_composition(self):
        rng = np.random.default_rng(19)
        h_list = [random_channel(rng, 2, 8) for _ in range(2)]
        beams = rng.standard_normal((8, 2)) + 1j * rng.standard_normal((8, 2))
        beams /= np.linalg.norm(beams, axis=0, keepdims=True)
        g_list = []
        for _ in range(2):
            g = rng.standard_normal(2) + 1j * rng.standard_normal(2)
            g_list.append(g / np.linalg.norm(g))
        want = sum(
            np.log2(1 + sinr(h_list[k], beams, g_list[k], 7.5, k)) for k in range(2)
        )
        assert sum_rate(h_list, beams, g_list, 7.5) == pytest.approx(want, rel=1e-15)
