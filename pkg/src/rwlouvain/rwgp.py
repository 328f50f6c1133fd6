"""Random-walk graph partitioning.

A connected cluster is cut by the sign of ``P^t[i0] - phi`` computed on its
induced subgraph; the cut is kept only if it raises modularity, and both
halves are processed again. Variant 2 repairs each cut with single-vertex
moves between the halves before the acceptance test.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels, checks
from ._bisect import recursive_bisection
from .constants import REFINE_SWEEP_CAP, SIGN_TIE_RTOL
from .graph import Graph, GraphError, SubgraphMap, as_vertex_set
from .quality import Partition, modularity
from .walk import WalkError, check_walkable, walk_signature


@dataclass(frozen=True)
class RwgpConfig:
    """Parameters of one partitioning run.

    ``variant`` 1 is the plain sign split, 2 adds the two-way repair sweep.
    ``seed`` switches the start vertex from max-degree to a seeded random
    pick; ``laziness`` is the per-step holding probability of the walk.
    """

    t: int = 15
    variant: int = 2
    laziness: float = 0.0
    seed: Optional[int] = None
    max_sweeps: int = REFINE_SWEEP_CAP

    def __post_init__(self):
        if self.t < 1:
            raise ValueError("t must be at least 1")
        if self.variant not in (1, 2):
            raise ValueError("variant must be 1 or 2")
        if not 0.0 <= self.laziness < 1.0:
            raise ValueError("laziness must lie in [0, 1)")
        if self.max_sweeps < 1:
            raise ValueError("max_sweeps must be at least 1")


def sign_sides(values: np.ndarray) -> np.ndarray:
    """0 where the signature is >= 0 (ties included), 1 where negative.

    Entries within ``SIGN_TIE_RTOL`` of zero relative to the largest entry
    are rounding noise and count as ties.
    """
    scale = np.max(np.abs(values)) if values.size else 0.0
    return (values < -SIGN_TIE_RTOL * scale).astype(np.int64)


def bisect_by_walk(sub: SubgraphMap, i0: int, t: int, laziness: float = 0.0) -> tuple[np.ndarray, np.ndarray]:
    """Split the subgraph's vertices by signature sign, in parent ids."""
    g = sub.sub
    if g.has_self_loops:
        raise WalkError("random walks require a graph without self-loops")
    sig = walk_signature(g, i0, t, laziness)
    side = sign_sides(sig.values)
    return sub.to_parent[side == 0], sub.to_parent[side == 1]


def _refine_in_place(g: Graph, members, ptr, idx, w, side, max_sweeps) -> int:
    return int(
        _kernels.refine_sides(ptr, idx, w, g.degree[members], g.total_weight_2m, side, max_sweeps)
    )


def refine_two_way(g: Graph, c1, c2, max_sweeps: int = REFINE_SWEEP_CAP) -> tuple[np.ndarray, np.ndarray]:
    """Move vertices between two halves while that strictly raises modularity.

    Vertices are swept in ascending id order and moves apply immediately.
    Gains are measured against the whole of ``g``.
    """
    c1 = as_vertex_set(c1, g.n)
    c2 = as_vertex_set(c2, g.n)
    members = np.sort(np.concatenate([c1, c2]))
    if members.size == 0:
        return c1, c2
    if np.unique(members).size != members.size:
        raise GraphError("halves overlap")
    side = np.isin(members, c2).astype(np.int64)
    local = np.full(g.n, -1, dtype=np.int64)
    ptr, idx, w = _kernels.induced_csr(g.indptr, g.indices, g.weights, members, local)
    _refine_in_place(g, members, ptr, idx, w, side, max_sweeps)
    return members[side == 0], members[side == 1]


def _walk_split(g: Graph, cfg: RwgpConfig):
    rng = np.random.default_rng(cfg.seed) if cfg.seed is not None else None

    def split(members, ptr, idx, w):
        k = members.size
        deg = np.bincount(np.repeat(np.arange(k), np.diff(ptr)), weights=w, minlength=k)
        i0 = int(np.argmax(deg)) if rng is None else int(rng.integers(k))
        phi = deg / deg.sum()
        x = -phi
        x[i0] += 1.0
        x = _kernels.walk_steps(ptr, idx, w, deg, x, cfg.t, cfg.laziness, phi, True, True)
        side = sign_sides(x)
        if cfg.variant == 2:
            _refine_in_place(g, members, ptr, idx, w, side, cfg.max_sweeps)
        return side

    return split


def _require_loop_free(g: Graph) -> None:
    if g.has_self_loops:
        raise WalkError("random-walk partitioning requires a graph without self-loops")


def rwgp_partition(g: Graph, c=None, cfg: RwgpConfig = RwgpConfig()) -> list[np.ndarray]:
    """Partition ``c`` (default: all vertices) into clusters, each ascending."""
    _require_loop_free(g)
    members = np.arange(g.n, dtype=np.int64) if c is None else as_vertex_set(c, g.n)
    if members.size == 0:
        raise GraphError("cannot partition an empty vertex set")
    return recursive_bisection(g, [members], _walk_split(g, cfg))


def rwgp_refine_phase(g_ori: Graph, p: Partition, cfg: RwgpConfig) -> Partition:
    """Re-partition every community of ``p`` on the original graph."""
    _require_loop_free(g_ori)
    if p.n != g_ori.n:
        raise GraphError(f"partition covers {p.n} vertices, graph has {g_ori.n}")
    parts = recursive_bisection(g_ori, p.communities(), _walk_split(g_ori, cfg))
    refined = Partition.from_communities(g_ori.n, parts)
    if checks.enabled() and g_ori.total_weight_2m > 0:
        checks.assert_nondecreasing(modularity(g_ori, p), modularity(g_ori, refined), "refinement phase")
    return refined


__all__ = [
    "RwgpConfig",
    "bisect_by_walk",
    "check_walkable",
    "refine_two_way",
    "rwgp_partition",
    "rwgp_refine_phase",
    "sign_sides",
]
