"""Louvain modularity optimization and its random-walk refined variant.

Each level runs greedy local moving on the current (aggregated) graph, maps
the result back to original vertices and collapses communities into
supernodes for the next level. ``rwgp_louvain`` inserts a refinement step
between those two: every community is re-split by random-walk partitioning
on the original graph, and the next level aggregates the refined partition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from . import _kernels, checks
from .constants import DEFAULT_MAX_LEVELS, DEFAULT_MIN_GAIN, LOCAL_MOVE_PASS_CAP
from .graph import Graph, GraphError, aggregate
from .quality import Partition, modularity
from .rwgp import RwgpConfig, rwgp_refine_phase

SeedLike = Union[int, None, np.random.Generator]


@dataclass(frozen=True)
class LouvainConfig:
    seed: int = 0
    min_gain: float = DEFAULT_MIN_GAIN
    rwgp: Optional[RwgpConfig] = None
    max_levels: int = DEFAULT_MAX_LEVELS

    def __post_init__(self):
        if self.min_gain < 0:
            raise ValueError("min_gain must be nonnegative")
        if self.max_levels < 1:
            raise ValueError("max_levels must be at least 1")


@dataclass(frozen=True, eq=False)
class HierarchyResult:
    final: Partition
    trace: list = field(default_factory=list)  # modularity after each accepted level
    levels: int = 0

    @property
    def modularity(self) -> float:
        return self.trace[-1] if self.trace else float("nan")


def _rng(seed: SeedLike) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def _local_move(g: Graph, labels: np.ndarray, rng: np.random.Generator) -> tuple[np.ndarray, int]:
    m2 = g.total_weight_2m
    comm = np.array(labels, dtype=np.int64, copy=True)
    tot = np.bincount(comm, weights=g.degree, minlength=g.n)
    nbr_w = np.zeros(max(g.n, int(comm.max(initial=-1)) + 1))
    nbr_list = np.empty(g.n, dtype=np.int64)
    check = checks.enabled()
    q_prev = modularity(g, Partition(comm)) if check else 0.0
    passes = 0
    while passes < LOCAL_MOVE_PASS_CAP:
        order = rng.permutation(g.n)
        moved = _kernels.local_move_pass(
            g.indptr, g.indices, g.weights, g.degree, m2, comm, tot, order, nbr_w, nbr_list
        )
        passes += 1
        if check:
            q = modularity(g, Partition(comm))
            checks.assert_nondecreasing(q_prev, q, "local-moving pass")
            q_prev = q
        if moved == 0:
            break
    return comm, passes


def local_move_phase(g: Graph, p: Optional[Partition] = None, seed: SeedLike = 0) -> Partition:
    """Greedy single-vertex moves until a full pass changes nothing.

    Vertices are visited in a fresh seeded permutation each pass; a vertex
    moves only for a strictly positive modularity gain over staying.
    """
    if g.total_weight_2m <= 0:
        raise GraphError("local moving needs at least one edge")
    p = Partition.singletons(g.n) if p is None else p
    if p.n != g.n:
        raise GraphError(f"partition covers {p.n} vertices, graph has {g.n}")
    comm, _ = _local_move(g, p.assign, _rng(seed))
    return Partition(comm)


def _run(g: Graph, cfg: LouvainConfig, refine: Optional[RwgpConfig]) -> HierarchyResult:
    if g.total_weight_2m <= 0:
        raise GraphError("community detection needs at least one edge")
    rng = np.random.default_rng(cfg.seed)
    best = Partition.singletons(g.n)
    q_best = modularity(g, best)
    trace: list[float] = []
    current = g
    to_current = np.arange(g.n, dtype=np.int64)  # original vertex -> vertex of `current`
    for _ in range(cfg.max_levels):
        comm, _ = _local_move(current, np.arange(current.n, dtype=np.int64), rng)
        level = Partition(comm)
        expanded = Partition(level.assign[to_current])
        if refine is not None:
            expanded = rwgp_refine_phase(g, expanded, refine)
        q = modularity(g, expanded)
        gain = q - q_best
        if gain > 0:
            best, q_best = expanded, q
            trace.append(q)
        if gain <= cfg.min_gain:
            break
        if refine is None:
            current = aggregate(current, level)
            to_current = level.assign[to_current]
        else:
            current = aggregate(g, expanded)
            to_current = expanded.assign.copy()
        if checks.enabled():
            checks.assert_nondecreasing(q, modularity(current, Partition.singletons(current.n)), "aggregation")
    return HierarchyResult(final=best, trace=trace, levels=len(trace))


def louvain(g: Graph, cfg: LouvainConfig = LouvainConfig()) -> HierarchyResult:
    """Plain multi-level Louvain (``cfg.rwgp`` is ignored)."""
    return _run(g, cfg, None)


def rwgp_louvain(g: Graph, cfg: LouvainConfig = LouvainConfig(rwgp=RwgpConfig())) -> HierarchyResult:
    """Louvain with random-walk refinement of every level's communities."""
    if cfg.rwgp is None:
        raise ValueError("rwgp_louvain needs cfg.rwgp")
    if g.has_self_loops:
        raise GraphError("random-walk refinement requires a graph without self-loops")
    return _run(g, cfg, cfg.rwgp)
