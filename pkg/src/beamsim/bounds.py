"""Sum-rate upper bounds and the fully digital baseline.

Two bounds bracket the realizable limited-feedback schemes:

- ``scalar_ub`` searches the class of beams spanned by the transmit
  codebook (per-user combining weights delta) for the best true-channel
  sum rate, by projected finite-difference gradient ascent. The ZF beams
  are always included among the final candidates evaluated with the same
  rate function, so the result dominates the ZF scheme on every
  realization, by construction.
- ``alternating_opt`` alternates leakage-aware transmit beams (rank-one
  generalized eigenvector steps with a grid-searched leakage weight) and
  MMSE-style receive beams on the true channel. It converges monotonically
  but is only an empirical upper bound; callers record it per trial and
  never assume dominance.

``mrt_mrc_zf`` is the unconstrained digital reference: per-user dominant
left singular vectors for reception and zeroforcing on the exact
effective rows.
"""

from dataclasses import dataclass

import numpy as np

from . import linalg
from .precoders import PrecoderSet, _zf_columns
from .rates import sinr, sum_rate

__all__ = [
    "ScalarUbOptions",
    "AltOptOptions",
    "scalar_ub",
    "alternating_opt",
    "mrt_mrc_zf",
]


@dataclass(frozen=True)
class ScalarUbOptions:
    restarts: int = 2
    max_iters: int = 40
    step_init: float = 0.5
    grad_eps: float = 1e-6
    tol: float = 1e-4

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")


@dataclass(frozen=True)
class AltOptOptions:
    """eta_grid entries are multiples of rho/K (the per-beam power).

    init selects the starting receive beams: "matched" uses each user's
    dominant left singular vector (starts near the fixed point, so the
    iteration settles in a few steps), "random" draws unit vectors from
    the caller's rng (wanders for tens of iterations on coupled channels).
    """

    n_stop: int = 10
    eta_grid: tuple = (0.0, 0.1, 1.0, 10.0, 100.0)
    tol: float = 1e-3
    init: str = "matched"
    accelerate: bool = True

    def __post_init__(self):
        if self.n_stop < 1:
            raise ValueError("n_stop must be >= 1")
        if any(e < 0 for e in self.eta_grid):
            raise ValueError("eta_grid entries must be nonnegative")
        if self.init not in ("matched", "random"):
            raise ValueError("init must be 'matched' or 'random'")


def _as_matrix(h):
    return h.h if hasattr(h, "h") else np.asarray(h, dtype=complex)


def _effective_rows(h_list, g_list):
    return np.stack([g_list[k].conj() @ _as_matrix(h_list[k]) for k in range(len(h_list))])


def _rate_of_deltas(deltas, c, gram, rho):
    """Sum rate of normalized codebook combinations, batched.

    deltas: (batch, N, K); c[k] = g_k^H H_k F_cb; gram = F_cb^H F_cb.
    """
    k_users = deltas.shape[2]
    z = np.einsum("kn,bnm->bkm", c, deltas)
    norm2 = np.einsum("bnm,nq,bqm->bm", deltas.conj(), gram, deltas).real
    norm2 = np.maximum(norm2, 1e-300)
    p2 = np.abs(z) ** 2 / norm2[:, None, :]
    sig = np.einsum("bkk->bk", p2)
    interf = np.maximum(p2.sum(axis=2) - sig, 0.0)
    s = (rho / k_users) * sig / (1.0 + (rho / k_users) * interf)
    return np.log2(1.0 + s).sum(axis=1)


def _beams_of_delta(delta, f_cb):
    b = f_cb @ delta
    return b / np.linalg.norm(b, axis=0, keepdims=True)


def _project(delta, gram):
    """Rescale each user's weights to a unit-norm combined beam; the rate
    is invariant to this, it only keeps the ascent well scaled."""
    n2 = np.einsum("nm,nq,qm->m", delta.conj(), gram, delta).real
    return delta / np.sqrt(np.maximum(n2, 1e-300))


def _ascend(delta0, c, gram, rho, opts):
    n, k = delta0.shape
    delta = _project(delta0, gram)
    val = float(_rate_of_deltas(delta[None], c, gram, rho)[0])
    step = opts.step_init
    n_coord = 2 * n * k
    eye = np.eye(n_coord)
    for _ in range(opts.max_iters):
        # forward-difference gradient over all real/imag coordinates, batched
        pert = (eye[:, : n * k] + 1j * eye[:, n * k:]).reshape(n_coord, n, k)
        batch = delta[None] + opts.grad_eps * pert
        vals = _rate_of_deltas(batch, c, gram, rho)
        grad = (vals - val) / opts.grad_eps
        gn = np.linalg.norm(grad)
        if gn < 1e-12:
            break
        direction = (grad[: n * k] + 1j * grad[n * k:]).reshape(n, k)
        direction /= gn
        improved = False
        while step >= opts.tol:
            cand = _project(delta + step * direction, gram)
            cval = float(_rate_of_deltas(cand[None], c, gram, rho)[0])
            if cval > val:
                delta, val = cand, cval
                step *= 1.3
                improved = True
                break
            step *= 0.5
        if not improved:
            break
    return delta, val


def scalar_ub(h_list, g_list, f_tr, rho, opts=None, init_sets=None, anchor_beams=None, rng=None):
    """Best sum rate over per-user combinations of codebook beams.

    Ascends from structural initializations (least-squares coefficients of
    any ``anchor_beams``, the matched-filter rows) plus ``opts.restarts``
    random draws and any caller-provided ``init_sets`` (each an N x K
    coefficient matrix). Every anchor beam set is also scored as-is with
    the same rate function used for the realizable schemes, so the
    returned rate never falls below theirs.

    Returns ``(delta_star, PrecoderSet, sum_rate)``.
    """
    opts = opts or ScalarUbOptions()
    rng = rng or np.random.default_rng(0)
    f_cb = f_tr.beams
    n = f_cb.shape[1]
    k_users = len(h_list)
    rows = _effective_rows(h_list, g_list)
    c = rows @ f_cb
    gram = f_cb.conj().T @ f_cb

    inits = []
    final = []  # (delta, beams) candidates scored by the canonical rate
    for beams in anchor_beams or []:
        d = np.linalg.lstsq(f_cb, beams, rcond=None)[0]
        inits.append(d)
        final.append((d, np.asarray(beams)))
    matched = np.linalg.lstsq(f_cb, rows.conj().T, rcond=None)[0]
    inits.append(matched)
    inits.extend(np.asarray(d, dtype=complex) for d in (init_sets or []))
    for _ in range(opts.restarts):
        inits.append(
            (rng.standard_normal((n, k_users)) + 1j * rng.standard_normal((n, k_users)))
            / np.sqrt(2.0)
        )

    for d0 in inits:
        d, _ = _ascend(d0, c, gram, rho, opts)
        final.append((d, _beams_of_delta(d, f_cb)))

    best = None
    for d, beams in final:
        r = sum_rate(h_list, beams, g_list, rho)
        if best is None or r > best[2]:
            best = (d, beams, r)
    delta_star, beams_star, rate_star = best
    return delta_star, PrecoderSet(beams=beams_star, scheme="scalar_ub"), rate_star


def _slnr_fstep(h_list, g_list, rho, eta_scales, current=None):
    """One transmit-beam update sweep.

    For each user, build the rank-one generalized Rayleigh candidates for
    every leakage weight ``eta = scale * rho / K`` and keep the candidate
    (including the incumbent beam, when given) with the best sum rate
    against the other users' current beams. Updates are sequential in user
    order, so each accepted candidate can only raise the sum rate.
    """
    k_users = len(h_list)
    rows = _effective_rows(h_list, g_list)
    n_t = rows.shape[1]
    if current is None:
        beams = np.stack([rows[k].conj() / np.linalg.norm(rows[k]) for k in range(k_users)], axis=1)
    else:
        beams = current.copy()
    etas = []
    for k in range(k_users):
        cands = []
        for scale in eta_scales:
            eta = scale * rho / k_users
            b = np.eye(n_t, dtype=complex)
            for m in range(k_users):
                if m != k:
                    b += eta * np.outer(rows[m].conj(), rows[m])
            f = linalg.herm_solve(b, rows[k].conj())
            cands.append((eta, f / np.linalg.norm(f)))
        if current is not None:
            cands.append((None, current[:, k]))
        best = None
        for eta, f in cands:
            trial = beams.copy()
            trial[:, k] = f
            r = sum_rate(h_list, trial, g_list, rho)
            if best is None or r > best[0]:
                best = (r, eta, f)
        beams[:, k] = best[2]
        etas.append(best[1])
    return beams, etas


def _mmse_gstep(h_list, beams, rho):
    """Per-user receive beams maximizing SINR at fixed transmit beams."""
    k_users = len(h_list)
    g_list = []
    for k in range(k_users):
        hm = _as_matrix(h_list[k])
        n_r = hm.shape[0]
        b = np.eye(n_r, dtype=complex)
        for m in range(k_users):
            if m != k:
                x = hm @ beams[:, m]
                b += (rho / k_users) * np.outer(x, x.conj())
        g = linalg.herm_solve(b, hm @ beams[:, k])
        g_list.append(g / np.linalg.norm(g))
    return g_list


def alternating_opt(h_list, rho, opts=None, rng=None):
    """Alternating transmit/receive beam optimization on the true channel.

    Receive beams start per ``opts.init`` (matched dominant singular
    vectors by default, random unit vectors from ``rng`` otherwise); each
    iteration runs the leakage-aware transmit sweep then the MMSE receive
    update, both of which are monotone in sum rate, and stops once the
    rate gain drops below ``opts.tol`` or after ``opts.n_stop`` iterations.

    With ``opts.accelerate`` the loop watches the receive-beam history for
    a slow single-mode geometric contraction (the plain alternation can
    creep at ratios near 1 on strongly coupled channels) and, when it sees
    one, extrapolates the fixed point, maps it through one exact
    transmit/receive update pair, and adopts the result only if the sum
    rate improves. Every iterate returned or compared is still an exact
    output of the two update formulas.

    Returns ``(PrecoderSet, rx_beams, sum_rate, n_iters, converged)``.
    """
    opts = opts or AltOptOptions()
    rng = rng or np.random.default_rng(0)
    k_users = len(h_list)
    g_list = []
    for k in range(k_users):
        hm = _as_matrix(h_list[k])
        if opts.init == "random":
            g = rng.standard_normal(hm.shape[0]) + 1j * rng.standard_normal(hm.shape[0])
        else:
            g = np.linalg.svd(hm)[0][:, 0]
        g_list.append(g / np.linalg.norm(g))

    beams = None
    rate = -np.inf
    converged = False
    n_iters = 0
    history = []
    for it in range(1, opts.n_stop + 1):
        n_iters = it
        beams, _ = _slnr_fstep(h_list, g_list, rho, opts.eta_grid, current=beams)
        g_list = _mmse_gstep(h_list, beams, rho)
        new_rate = sum_rate(h_list, beams, g_list, rho)
        if it > 1 and abs(new_rate - rate) < opts.tol:
            rate = new_rate
            converged = True
            break
        rate = new_rate
        if opts.accelerate:
            history.append(_aligned_state(g_list, history))
            if len(history) == 3:
                adopted = _try_extrapolation(
                    h_list, rho, opts, history, beams, rate
                )
                if adopted is not None:
                    beams, g_list, rate = adopted
                    history = []
                else:
                    history = history[1:]
    return PrecoderSet(beams=beams, scheme="alt_opt"), g_list, rate, n_iters, converged


def _aligned_state(g_list, history):
    """Concatenate receive beams, phase-aligned per user to the last state."""
    if not history:
        return np.concatenate(g_list)
    offsets = np.cumsum([0] + [g.size for g in g_list])
    parts = []
    for k, g in enumerate(g_list):
        ref = history[-1][offsets[k]:offsets[k + 1]]
        ph = np.vdot(ref, g)
        parts.append(g * np.exp(-1j * np.angle(ph)) if abs(ph) > 0 else g)
    return np.concatenate(parts)


def _try_extrapolation(h_list, rho, opts, history, beams, rate):
    """One safeguarded fixed-point extrapolation from three receive states.

    Estimates the contraction ratio of the dominant mode from successive
    differences; only ratios in (0.5, 0.999) are worth jumping (faster
    modes settle on their own, ratios at 1 make the estimate unstable).
    The extrapolated receive state is passed through one exact
    transmit/receive update pair and adopted only if the rate improves.
    """
    d1 = history[1] - history[0]
    d2 = history[2] - history[1]
    den = np.real(np.vdot(d1, d1))
    if den <= 0:
        return None
    ratio = np.real(np.vdot(d1, d2)) / den
    if not 0.5 < ratio < 0.999:
        return None
    target = history[2] + d2 * (ratio / (1.0 - ratio))
    offsets = np.cumsum([0] + [_as_matrix(h).shape[0] for h in h_list])
    g_ext = []
    for k in range(len(h_list)):
        seg = target[offsets[k]:offsets[k + 1]]
        norm = np.linalg.norm(seg)
        if norm <= 0:
            return None
        g_ext.append(seg / norm)
    probe_beams, _ = _slnr_fstep(h_list, g_ext, rho, opts.eta_grid, current=beams)
    probe_g = _mmse_gstep(h_list, probe_beams, rho)
    probe_rate = sum_rate(h_list, probe_beams, probe_g, rho)
    if probe_rate <= rate:
        return None
    return probe_beams, probe_g, probe_rate


def mrt_mrc_zf(h_list, rho):
    """Fully digital reference: MRC receive beams, ZF on the exact rows.

    ``rho`` does not enter the construction (kept for uniform call shape);
    rates are evaluated by the caller. Propagates RankDeficientError.
    """
    g_list = []
    for h in h_list:
        hm = _as_matrix(h)
        a = hm @ hm.conj().T
        try:
            g = linalg.dominant_eigvec(a, tol=1e-8, max_iter=100000)
        except linalg.NoConvergenceError:
            # the top two eigenvalues are numerically tied; any vector in
            # their span is an equally good receive beam, take eigh's
            g = np.linalg.eigh(a)[1][:, -1]
        g_list.append(g)
    rows = _effective_rows(h_list, g_list)
    beams = _zf_columns(rows)
    return PrecoderSet(beams=beams, scheme="mrt_mrc_zf"), g_list
