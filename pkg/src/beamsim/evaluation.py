"""Monte Carlo harness: scheduling, per-trial scheme evaluation, CSV output.

One trial draws a cell of ``k_cell`` user channels, runs alignment and
feedback for each, schedules a two-user pair under directional avoidance
(the second user's best transmit beam must differ from the first's), then
builds and scores every configured scheme on the true channels. Trials
are fully determined by ``(master_seed, trial_id)``, so any worker count
produces identical output.
"""

import csv
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import bounds as bounds_mod
from .channel import AOA_SECTOR, AOD_SECTOR, ArrayGeometry, SectorSpec, draw_channel
from .codebook import codebook_presets
from .feedback import build_report, reconstruct_row, truncate_report
from .precoders import (
    PrecoderSet,
    RankDeficientError,
    ge_beam,
    quantize_precoder,
    steer_best,
    zf_beams,
)
from .quantizers import BeamQuantSpec, FeedbackQuantSpec
from .rates import sinr, sum_rate

__all__ = [
    "NoEligibleUserError",
    "EmptyInputError",
    "SimConfig",
    "SchemeResult",
    "TrialRecord",
    "schedule_pair",
    "run_trials",
    "summarize",
    "write_csv",
    "read_csv",
    "sinr",
    "sum_rate",
    "CSV_HEADER",
    "SCHEMES",
]

# canonical execution/emission order; _q variants are RF-quantized copies.
# P-independent schemes report P = 0 in the CSV, steer reports P = 1.
SCHEMES = ("steer", "steer_q", "zf", "zf_q", "ge", "ge_q", "mrt_mrc_zf", "scalar_ub", "alt_opt")

CSV_HEADER = "trial_id,scheme,P,N,M,rho_db,sum_rate,rate_u1,rate_u2,flags"


class NoEligibleUserError(RuntimeError):
    """Every other user shares the first user's best transmit beam."""


class EmptyInputError(ValueError):
    """Summary requested over zero records."""


@dataclass(frozen=True)
class SimConfig:
    tx_geom: ArrayGeometry = ArrayGeometry(16, 4)
    rx_geom: ArrayGeometry = ArrayGeometry(2, 2)
    n_clusters: int = 6
    aod_sector: SectorSpec = AOD_SECTOR
    aoa_sector: SectorSpec = AOA_SECTOR
    k_cell: int = 10
    k: int = 2
    bs_codebook: str = "bs8"
    ue_codebook: str = "ue16"
    p: tuple = (1, 2, 4)
    rho_db: float = 10.0
    feedback_quant: FeedbackQuantSpec = FeedbackQuantSpec()
    noiseless_phase: bool = False
    beam_quant: BeamQuantSpec = None
    schemes: tuple = ("steer", "zf")
    trials: int = 100
    master_seed: int = 0
    out_path: str = "results.csv"
    workers: int = 1
    max_redraws: int = 50
    scalar_ub_opts: bounds_mod.ScalarUbOptions = field(default_factory=bounds_mod.ScalarUbOptions)
    alt_opt_opts: bounds_mod.AltOptOptions = field(default_factory=bounds_mod.AltOptOptions)

    def validate(self):
        if self.k != 2:
            raise ValueError("the scheduler pairs exactly two users; k must be 2")
        if self.k > self.k_cell:
            raise ValueError(f"k = {self.k} exceeds k_cell = {self.k_cell}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not self.p or any(int(x) != x or x < 1 for x in self.p):
            raise ValueError(f"p must be positive integers, got {self.p}")
        f_tr = codebook_presets(self.bs_codebook)
        g_tr = codebook_presets(self.ue_codebook)
        if max(self.p) > f_tr.size:
            raise ValueError(f"max p = {max(self.p)} exceeds codebook size {f_tr.size}")
        if f_tr.geom != self.tx_geom or g_tr.geom != self.rx_geom:
            raise ValueError("configured geometries do not match the codebook presets")
        unknown = set(self.schemes) - set(SCHEMES)
        if unknown:
            raise ValueError(f"unknown schemes {sorted(unknown)}; choose from {SCHEMES}")
        if any(s.endswith("_q") for s in self.schemes) and self.beam_quant is None:
            raise ValueError("quantized schemes requested but no beam_quant spec configured")
        if self.workers < 1 or self.max_redraws < 0 or self.n_clusters < 1:
            raise ValueError("workers, max_redraws and n_clusters must be positive")
        return self


@dataclass(frozen=True)
class SchemeResult:
    scheme: str
    p: int
    sum_rate: float
    user_rates: tuple
    flags: tuple = ()


@dataclass(frozen=True)
class TrialRecord:
    trial_id: int
    results: tuple
    users: tuple
    redraws: int = 0
    zf_fallback: bool = False
    alt_iters: int = None
    alt_converged: bool = None


def schedule_pair(reports, rng):
    """Pick the served pair: first user uniform, second uniform among users
    whose best transmit beam differs from the first's."""
    n = len(reports)
    i = int(rng.integers(n))
    eligible = [j for j in range(n)
                if j != i and reports[j].rows[0].n_idx != reports[i].rows[0].n_idx]
    if not eligible:
        raise NoEligibleUserError("all other users share the best transmit beam")
    j = eligible[int(rng.integers(len(eligible)))]
    return i, j


def _rates_for(h_pair, pset, g_pair, rho):
    rates = tuple(
        float(np.log2(1.0 + sinr(h_pair[k], pset.beams, g_pair[k], rho, k)))
        for k in range(len(h_pair))
    )
    return sum_rate(h_pair, pset.beams, g_pair, rho), rates


def run_one_trial(cfg, trial_id):
    """Deterministic single trial; the seed is (master_seed, trial_id)."""
    rng = np.random.default_rng((cfg.master_seed, trial_id))
    f_tr = codebook_presets(cfg.bs_codebook)
    g_tr = codebook_presets(cfg.ue_codebook)
    rho = 10.0 ** (cfg.rho_db / 10.0)
    p_max = max(cfg.p)

    redraws = 0
    while True:
        chans = [
            draw_channel(rng, cfg.tx_geom, cfg.rx_geom, cfg.n_clusters,
                         cfg.aod_sector, cfg.aoa_sector)
            for _ in range(cfg.k_cell)
        ]
        reports = [
            build_report(h, f_tr, g_tr, p_max, rho, cfg.feedback_quant, rng,
                         noiseless=cfg.noiseless_phase)
            for h in chans
        ]
        try:
            i, j = schedule_pair(reports, rng)
            break
        except NoEligibleUserError:
            redraws += 1
            if redraws > cfg.max_redraws:
                raise RuntimeError(
                    f"trial {trial_id}: no schedulable pair after {redraws} redraws"
                ) from None

    users = (i, j)
    h_pair = [chans[i], chans[j]]
    rep_pair = [reports[i], reports[j]]
    g_pair = [g_tr.beams[:, rep_pair[0].g_rx], g_tr.beams[:, rep_pair[1].g_rx]]
    rows_by_p = {
        p: np.stack([reconstruct_row(truncate_report(r, p), f_tr) for r in rep_pair])
        for p in cfg.p
    }

    trial_flags = (f"redraws={redraws}",) if redraws else ()
    results = []
    zf_fallback = False
    alt_iters = None
    alt_converged = None
    steer_set = None
    zf_sets = {}

    def emit(pset, scheme, p, flags=()):
        total, per_user = _rates_for(h_pair, pset, g_pair, rho)
        results.append(SchemeResult(scheme, p, total, per_user, trial_flags + tuple(flags)))

    want = [s for s in SCHEMES if s in cfg.schemes]
    need_steer = bool({"steer", "steer_q"} & set(cfg.schemes))
    need_zf = bool({"zf", "zf_q", "scalar_ub"} & set(cfg.schemes))
    if need_steer or need_zf:
        steer_set = steer_best(rep_pair, f_tr)
    if need_zf:
        for p in cfg.p:
            flags = ()
            try:
                pset = zf_beams(rows_by_p[p])
            except RankDeficientError:
                pset = replace(steer_set, scheme="zf")
                flags = ("zf_fallback",)
                zf_fallback = True
            zf_sets[p] = (pset, flags)

    for scheme in want:
        if scheme == "steer":
            emit(steer_set, "steer", 1)
        elif scheme == "steer_q":
            emit(quantize_precoder(steer_set, cfg.beam_quant), "steer_q", 1, ("quantized",))
        elif scheme == "zf":
            for p in cfg.p:
                pset, flags = zf_sets[p]
                emit(pset, "zf", p, flags)
        elif scheme == "zf_q":
            for p in cfg.p:
                pset, flags = zf_sets[p]
                emit(quantize_precoder(pset, cfg.beam_quant), "zf_q", p,
                     flags + ("quantized",))
        elif scheme == "ge":
            for p in cfg.p:
                emit(_ge_set(rows_by_p[p], rho), "ge", p)
        elif scheme == "ge_q":
            for p in cfg.p:
                emit(quantize_precoder(_ge_set(rows_by_p[p], rho), cfg.beam_quant),
                     "ge_q", p, ("quantized",))
        elif scheme == "mrt_mrc_zf":
            try:
                pset, g_mrt = bounds_mod.mrt_mrc_zf(h_pair, rho)
                total, per_user = _rates_for(h_pair, pset, g_mrt, rho)
                results.append(SchemeResult("mrt_mrc_zf", 0, total, per_user, trial_flags))
            except RankDeficientError:
                results.append(SchemeResult("mrt_mrc_zf", 0, 0.0, (0.0,) * cfg.k,
                                            trial_flags + ("rank_deficient",)))
        elif scheme == "scalar_ub":
            anchors = [zf_sets[p][0].beams for p in cfg.p]
            _, pset, rate = bounds_mod.scalar_ub(
                h_pair, g_pair, f_tr, rho, cfg.scalar_ub_opts,
                anchor_beams=anchors, rng=rng,
            )
            _, per_user = _rates_for(h_pair, pset, g_pair, rho)
            results.append(SchemeResult("scalar_ub", 0, rate, per_user, trial_flags))
        elif scheme == "alt_opt":
            pset, g_alt, rate, n_iters, conv = bounds_mod.alternating_opt(
                h_pair, rho, cfg.alt_opt_opts, rng
            )
            alt_iters, alt_converged = n_iters, conv
            _, per_user = _rates_for(h_pair, pset, g_alt, rho)
            flags = trial_flags + (f"iters={n_iters}", "converged" if conv else "not_converged")
            results.append(SchemeResult("alt_opt", 0, rate, per_user, flags))

    return TrialRecord(
        trial_id=trial_id,
        results=tuple(results),
        users=users,
        redraws=redraws,
        zf_fallback=zf_fallback,
        alt_iters=alt_iters,
        alt_converged=alt_converged,
    )


def _ge_set(rows, rho):
    k = rows.shape[0]
    eta = np.full((k, k), rho / k)
    beams = np.stack([ge_beam(m, rows, eta) for m in range(k)], axis=1)
    return PrecoderSet(beams=beams, scheme="ge")


def _trial_job(args):
    cfg, trial_id = args
    return run_one_trial(cfg, trial_id)


def run_trials(cfg, workers=None):
    """Run all configured trials and return (records, summary).

    Records come back ordered by trial_id whatever the worker count, and
    each trial's randomness is derived only from (master_seed, trial_id),
    so parallel runs are byte-identical to serial ones.
    """
    cfg.validate()
    workers = cfg.workers if workers is None else workers
    jobs = [(cfg, t) for t in range(cfg.trials)]
    if workers <= 1:
        records = [run_one_trial(cfg, t) for t in range(cfg.trials)]
    else:
        chunk = max(1, cfg.trials // (4 * workers))
        with ProcessPoolExecutor(max_workers=workers) as ex:
            records = list(ex.map(_trial_job, jobs, chunksize=chunk))
    records.sort(key=lambda r: r.trial_id)
    return records, summarize(records)


def summarize(records):
    """Percentile table (5/25/50/75/95) of sum rate per (scheme, P) group."""
    if not records:
        raise EmptyInputError("no records to summarize")
    groups = {}
    for rec in records:
        for res in rec.results:
            groups.setdefault((res.scheme, res.p), []).append(res.sum_rate)
    out = {}
    for key in sorted(groups):
        q = np.percentile(np.array(groups[key]), [5, 25, 50, 75, 95])
        out[key] = {"p5": q[0], "p25": q[1], "p50": q[2], "p75": q[3], "p95": q[4],
                    "count": len(groups[key])}
    return out


def _fmt(x):
    return f"{x:.12g}"


def write_csv(records, cfg, path_or_file):
    """Emit one CSV row per (trial, scheme, P) with a stable float format."""
    n = codebook_presets(cfg.bs_codebook).size
    m = codebook_presets(cfg.ue_codebook).size
    own = isinstance(path_or_file, (str, bytes))
    fh = open(path_or_file, "w", newline="") if own else path_or_file
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_HEADER.split(","))
        for rec in records:
            for res in rec.results:
                w.writerow([
                    rec.trial_id,
                    res.scheme,
                    res.p,
                    n,
                    m,
                    _fmt(cfg.rho_db),
                    _fmt(res.sum_rate),
                    _fmt(res.user_rates[0]),
                    _fmt(res.user_rates[1]),
                    ";".join(res.flags),
                ])
    finally:
        if own:
            fh.close()


def read_csv(path):
    """Read a results CSV back as a list of typed row dicts."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != CSV_HEADER.split(","):
            raise ValueError(f"unexpected CSV header {reader.fieldnames}")
        rows = []
        for r in reader:
            rows.append({
                "trial_id": int(r["trial_id"]),
                "scheme": r["scheme"],
                "P": int(r["P"]),
                "N": int(r["N"]),
                "M": int(r["M"]),
                "rho_db": float(r["rho_db"]),
                "sum_rate": float(r["sum_rate"]),
                "rate_u1": float(r["rate_u1"]),
                "rate_u2": float(r["rate_u2"]),
                "flags": r["flags"].split(";") if r["flags"] else [],
            })
    return rows
