"""Newman-style spectral bisection and a dense eigen-oracle.

Both work with the normalized adjacency ``L = D^-1/2 A D^-1/2``, whose
leading pair is known in closed form (``lambda_1 = 1``, ``s_1 ~ sqrt(d)``).
The second pair is found by power iteration on ``(L + I)/2`` with ``s_1``
projected out: the shift makes every eigenvalue nonnegative so the iteration
picks the second *largest* eigenvalue of L rather than the largest in
modulus.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.sparse as sp

from . import _kernels
from ._bisect import recursive_bisection
from .constants import (
    DEGENERATE_GAP_TOL,
    EIGEN_MAX_ITER,
    EIGEN_PLATEAU_ITER,
    EIGEN_PLATEAU_TOL,
    EIGEN_RESIDUAL_TOL,
    EIGVEC_CHANGE_TOL,
)
from .graph import Graph, GraphError, as_vertex_set, is_connected


class SpectralError(RuntimeError):
    """Power iteration failed; ``gap`` estimates lambda_2 - lambda_3."""

    def __init__(self, message: str, gap: Optional[float] = None):
        super().__init__(message if gap is None else f"{message} (estimated gap {gap:.3g})")
        self.gap = gap


@dataclass(frozen=True, eq=False)
class EigenPair:
    eigenvalue: float
    eigenvector: np.ndarray
    iterations: int = 0
    gap: Optional[float] = None
    degenerate: bool = False


def normalized_adjacency(g: Graph) -> sp.csr_array:
    inv_sqrt = 1.0 / np.sqrt(g.degree)
    return (sp.diags_array(inv_sqrt) @ g.to_scipy() @ sp.diags_array(inv_sqrt)).tocsr()


def canonical_sign(v: np.ndarray) -> np.ndarray:
    """Flip ``v`` so that its first clearly nonzero component is positive."""
    scale = np.max(np.abs(v)) if v.size else 0.0
    nz = np.flatnonzero(np.abs(v) > 1e-9 * scale)
    if nz.size and v[nz[0]] < 0:
        return -v
    return v


def _check_input(g: Graph) -> None:
    if g.n < 2:
        raise GraphError("need at least two vertices")
    if g.has_self_loops:
        raise GraphError("spectral bisection expects a graph without self-loops")
    if not is_connected(g):
        raise GraphError("spectral bisection expects a connected graph")


def _deflated_power(L, basis: list[np.ndarray], x: np.ndarray, max_iter: int, plateau: bool):
    """Power iteration on (L + I)/2 orthogonal to ``basis``.

    Returns ``(x, lam, iterations, converged, ratio)`` where ``ratio`` is the
    latest change-to-change quotient (about mu_3/mu_2 near convergence).
    """

    def project(y):
        for b in basis:
            y -= (b @ y) * b
        return y

    x = project(x.copy())
    x /= np.linalg.norm(x)
    prev_change = None
    ratio = 1.0
    for it in range(1, max_iter + 1):
        y = project(0.5 * (L @ x + x))
        norm = np.linalg.norm(y)
        if norm == 0.0:
            raise SpectralError("iterate collapsed to zero")
        y /= norm
        change = np.max(np.abs(y - x))
        if prev_change:
            ratio = change / prev_change
        prev_change = change
        x = y
        if change < EIGVEC_CHANGE_TOL:
            lx = L @ x
            lam = float(x @ lx)
            if np.max(np.abs(lx - lam * x)) <= EIGEN_RESIDUAL_TOL:
                return x, lam, it, True, ratio
        if plateau and it == EIGEN_PLATEAU_ITER and change > EIGEN_PLATEAU_TOL:
            return x, float(x @ (L @ x)), it, False, ratio
    return x, float(x @ (L @ x)), max_iter, False, ratio


def _gap_from_ratio(lam: float, ratio: float) -> float:
    mu2 = 0.5 * (lam + 1.0)
    return 2.0 * mu2 * max(0.0, 1.0 - min(ratio, 1.0))


def second_eigenpair(g: Graph, estimate_gap: bool = True) -> EigenPair:
    """Second-largest eigenpair of ``L`` with a canonical sign.

    With ``estimate_gap`` a second deflated run estimates lambda_3 and the
    pair is flagged ``degenerate`` when lambda_2 - lambda_3 is below
    ``DEGENERATE_GAP_TOL``.
    """
    _check_input(g)
    L = normalized_adjacency(g)
    s1 = np.sqrt(g.degree)
    s1 /= np.linalg.norm(s1)
    x0 = np.random.default_rng(0).standard_normal(g.n)
    x, lam, its, ok, ratio = _deflated_power(L, [s1], x0, EIGEN_MAX_ITER, plateau=True)
    if not ok:
        gap = _gap_from_ratio(lam, ratio)
        if its < EIGEN_MAX_ITER:
            raise SpectralError("second eigenvector oscillates; eigenvalue is (near) degenerate", gap)
        raise SpectralError(f"power iteration did not converge in {its} iterations", gap)
    x = canonical_sign(x)
    gap = None
    degenerate = False
    if estimate_gap and g.n >= 3:
        y0 = np.random.default_rng(1).standard_normal(g.n)
        y, lam3, _, _, _ = _deflated_power(L, [s1, x], y0, EIGEN_PLATEAU_ITER, plateau=False)
        gap = lam - lam3
        degenerate = gap < DEGENERATE_GAP_TOL
    return EigenPair(eigenvalue=lam, eigenvector=x, iterations=its, gap=gap, degenerate=degenerate)


def split_vector(g: Graph, pair: Optional[EigenPair] = None) -> np.ndarray:
    """``D^-1/2 s_2``: the vector whose signs define the spectral cut."""
    pair = pair or second_eigenpair(g, estimate_gap=False)
    return pair.eigenvector / np.sqrt(g.degree)


def _spectral_split(members, ptr, idx, w):
    k = members.size
    sub = Graph(k, ptr, idx, w, np.zeros(k))
    v = split_vector(sub)
    return (v < -1e-9 * np.max(np.abs(v))).astype(np.int64)


def newman_spectral_partition(g: Graph, c=None) -> list[np.ndarray]:
    """Recursive sign bisection by ``D^-1/2 s_2`` with modularity gating."""
    if g.has_self_loops:
        raise GraphError("spectral bisection expects a graph without self-loops")
    members = np.arange(g.n, dtype=np.int64) if c is None else as_vertex_set(c, g.n)
    if members.size == 0:
        raise GraphError("cannot partition an empty vertex set")
    return recursive_bisection(g, [members], _spectral_split)


# -- dense oracle ----------------------------------------------------------


def jacobi_eigh(a: np.ndarray, tol: float = 1e-14, max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns eigenvalues in descending order and unit eigenvectors as
    columns. Intended for the small matrices used as test oracles.
    """
    a = np.array(a, dtype=np.float64, copy=True)
    n = a.shape[0]
    if a.shape != (n, n) or not np.allclose(a, a.T, atol=1e-12):
        raise ValueError("matrix must be square and symmetric")
    v = np.eye(n)
    scale = max(np.linalg.norm(a), 1e-300)
    if not _kernels.jacobi_sweeps(a, v, tol * scale, max_sweeps):
        raise RuntimeError("Jacobi iteration did not converge")
    vals = np.diag(a).copy()
    order = np.argsort(-vals, kind="stable")
    return vals[order], v[:, order]


def dense_spectrum(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    """All eigenpairs of ``L`` for a small graph, descending."""
    if g.n > 200:
        raise ValueError("dense oracle is meant for small graphs")
    inv_sqrt = 1.0 / np.sqrt(g.degree)
    L = inv_sqrt[:, None] * g.to_dense() * inv_sqrt[None, :]
    return jacobi_eigh(L)
