"""Simple random walks: t-step rows of P = D^-1 A and the walk signature."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .graph import Graph, GraphError, is_connected


class WalkError(GraphError):
    pass


@dataclass(frozen=True, eq=False)
class WalkSignature:
    """``P^t[source] - phi`` on some graph; its signs drive a bisection."""

    source: int
    t: int
    values: np.ndarray


def check_walkable(g: Graph) -> None:
    """Raise unless ``g`` is connected, loop-free and has no isolated vertex."""
    if g.n == 0:
        raise WalkError("graph has no vertices")
    if g.has_self_loops:
        raise WalkError("random walks require a graph without self-loops")
    if g.n > 1 and np.any(g.degree <= 0):
        raise WalkError(f"vertex {int(np.flatnonzero(g.degree <= 0)[0])} is isolated")
    if not is_connected(g):
        raise WalkError("random walks require a connected graph")


def _check_args(g: Graph, i0: int, t: int, laziness: float) -> None:
    if not 0 <= i0 < g.n:
        raise WalkError(f"start vertex {i0} outside [0, {g.n})")
    if t < 0:
        raise WalkError("step count must be nonnegative")
    if not 0.0 <= laziness < 1.0:
        raise WalkError("laziness must lie in [0, 1)")


def stationary_distribution(g: Graph) -> np.ndarray:
    """``phi_i = d(i) / sum_k d(k)``."""
    check_walkable(g)
    if g.n == 1:
        return np.ones(1)
    return g.degree / g.total_weight_2m


def transition_row_power(g: Graph, i0: int, t: int, laziness: float = 0.0) -> np.ndarray:
    """Row ``i0`` of ``P^t`` by ``t`` sparse vector-matrix products.

    With ``laziness > 0`` each step stays put with that probability.
    """
    check_walkable(g)
    _check_args(g, i0, t, laziness)
    x = np.zeros(g.n)
    x[i0] = 1.0
    if g.n == 1 or t == 0:
        return x
    return _kernels.walk_steps(g.indptr, g.indices, g.weights, g.degree, x, int(t), float(laziness), x, False, False)


def walk_signature(g: Graph, i0: int, t: int, laziness: float = 0.0) -> WalkSignature:
    """``P^t[i0] - phi``.

    Computed as ``(e_i0 - phi) P^t`` (equal because ``phi P = phi``) with the
    stationary component projected out after every step. This avoids the
    cancellation of ``P^t[i0] - phi`` once the walk is close to mixing, so the
    signs stay meaningful far below double-precision resolution of ``phi``.
    """
    check_walkable(g)
    _check_args(g, i0, t, laziness)
    if t < 1:
        raise WalkError("walk signature needs at least one step")
    phi = stationary_distribution(g)
    x = -phi.copy()
    x[i0] += 1.0
    if g.n > 1:
        x = _kernels.walk_steps(g.indptr, g.indices, g.weights, g.degree, x, int(t), float(laziness), phi, True, False)
    return WalkSignature(source=int(i0), t=int(t), values=x)
