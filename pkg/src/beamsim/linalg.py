"""Small dense Hermitian kernels used by the precoder and bound routines.

Everything here operates on plain complex numpy arrays of modest size
(antenna counts, so dimensions of a few hundred at most). Factorizations
come from ``numpy.linalg``; the dominant-eigenvector routine is a plain
power iteration so it can be cross-checked against ``numpy.linalg.eigh``
in the tests.
"""

import numpy as np

__all__ = [
    "SingularMatrixError",
    "NoConvergenceError",
    "herm_solve",
    "principal_sqrt_inv",
    "dominant_eigvec",
    "generalized_dominant_eigvec",
]

# relative tolerance for the Hermitian-input gate on every routine below
_HERM_RTOL = 1e-10


class SingularMatrixError(np.linalg.LinAlgError):
    """A matrix that must be positive definite is singular or indefinite."""


class NoConvergenceError(np.linalg.LinAlgError):
    """Iteration budget exhausted before the residual tolerance was met."""


def _hermitize(m, name):
    """Validate near-Hermitian input and return its exactly Hermitian part.

    Raises ``ValueError`` when the anti-Hermitian part exceeds ``_HERM_RTOL``
    relative to the Frobenius norm, so silently wrong inputs fail loudly.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"{name} must be a square matrix, got shape {m.shape}")
    scale = np.linalg.norm(m)
    skew = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
    if skew > _HERM_RTOL * max(scale, np.finfo(float).tiny):
        raise ValueError(f"{name} is not Hermitian (max asymmetry {skew:.3e})")
    return 0.5 * (m + m.conj().T)


def herm_solve(b, w):
    """Solve ``b x = w`` for Hermitian positive definite ``b``.

    Parameters
    ----------
    b : (n, n) complex ndarray
        Hermitian positive definite matrix. Positive definiteness is
        certified by attempting a Cholesky factorization.
    w : (n,) complex ndarray
        Right-hand side.

    Returns
    -------
    x : (n,) complex ndarray
        Solution; residual ``norm(b @ x - w) <= 1e-9 * norm(w)`` whenever
        the conditioning allows it (refinement stops early once met), and
        the backward-stable best effort otherwise.

    Raises
    ------
    SingularMatrixError
        If ``b`` is not positive definite (Cholesky factorization fails).
    """
    b = _hermitize(b, "b")
    w = np.asarray(w, dtype=complex)
    if w.shape != (b.shape[0],):
        raise ValueError(f"rhs shape {w.shape} does not match matrix {b.shape}")
    try:
        np.linalg.cholesky(b)
    except np.linalg.LinAlgError:
        raise SingularMatrixError("matrix is not positive definite") from None
    x = np.linalg.solve(b, w)
    bound = 1e-9 * np.linalg.norm(w)
    # a few iterative-refinement sweeps buy back the last digits on poorly
    # scaled systems; past condition ~1e8 the working-precision residual
    # floor eps*|B||x| sits above the bound and the loop just returns the
    # refined (backward-stable) iterate
    for _ in range(3):
        r = w - b @ x
        if np.linalg.norm(r) <= bound:
            break
        x = x + np.linalg.solve(b, r)
    return x


def principal_sqrt_inv(b):
    """Principal inverse square root of a Hermitian positive definite matrix.

    Returns the Hermitian ``s`` with ``s @ b @ s = I`` (equivalently
    ``s = b^{-1/2}``), computed from the eigendecomposition of ``b``.

    Raises
    ------
    SingularMatrixError
        If any eigenvalue of ``b`` is not strictly positive.
    """
    b = _hermitize(b, "b")
    vals, vecs = np.linalg.eigh(b)
    if vals[0] <= 0.0:
        raise SingularMatrixError(
            f"matrix is not positive definite (min eigenvalue {vals[0]:.3e})"
        )
    s = (vecs * (1.0 / np.sqrt(vals))) @ vecs.conj().T
    return 0.5 * (s + s.conj().T)


def dominant_eigvec(a, tol=1e-10, max_iter=10000):
    """Unit eigenvector of the largest eigenvalue of Hermitian PSD ``a``.

    Power iteration from a deterministic start. The all-ones start vector
    is tried first; if it happens to be annihilated by ``a`` (possible for
    rank-one matrices) the iteration restarts from a fixed ramp and then
    from the canonical basis vectors, so any nonzero PSD input converges.
    Stops when the Rayleigh residual ``norm(a v - lam v)`` falls below
    ``tol * lam``.

    Raises
    ------
    NoConvergenceError
        If ``max_iter`` total iterations do not reach the tolerance.
    ValueError
        If ``a`` is the zero matrix (no dominant direction exists).
    """
    a = _hermitize(a, "a")
    n = a.shape[0]
    scale = np.linalg.norm(a)
    if scale == 0.0:
        raise ValueError("zero matrix has no dominant eigenvector")

    starts = [np.ones(n, dtype=complex)]
    starts.append(np.arange(1, n + 1, dtype=complex) * np.exp(1j * np.arange(n) / max(n, 1)))
    starts.extend(np.eye(n, dtype=complex)[k] for k in range(n))

    spent = 0
    floor = np.finfo(float).eps * scale
    for v0 in starts:
        v = v0 / np.linalg.norm(v0)
        while spent < max_iter:
            av = a @ v
            lam = float(np.real(np.vdot(v, av)))
            if np.linalg.norm(av - lam * v) <= tol * max(lam, floor):
                return v
            nrm = np.linalg.norm(av)
            if nrm <= 1e-14 * scale:
                break  # start vector lies in the nullspace, try the next one
            v = av / nrm
            spent += 1
    raise NoConvergenceError(f"power iteration did not converge in {max_iter} iterations")


def generalized_dominant_eigvec(a, b, tol=1e-10, max_iter=10000):
    """Unit vector maximizing the generalized Rayleigh quotient.

    Maximizes ``(f^H a f) / (f^H b f)`` for Hermitian PSD ``a`` and
    Hermitian positive definite ``b`` by whitening: with ``s = b^{-1/2}``
    the maximizer is ``s v`` where ``v`` is the dominant eigenvector of
    ``s a s``. The result is normalized to unit Euclidean length.
    """
    s = principal_sqrt_inv(b)
    m = s @ np.asarray(a, dtype=complex) @ s
    v = dominant_eigvec(0.5 * (m + m.conj().T), tol=tol, max_iter=max_iter)
    f = s @ v
    return f / np.linalg.norm(f)
