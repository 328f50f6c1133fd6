"""Partition quality: modularity, the single-vertex insertion gain, and NMI.

Conventions: ``sigma_in`` of a community is twice its internal edge weight
(a self-loop of weight w counts 2w) and ``sigma_tot`` is the sum of member
degrees. With ``e_C = sigma_in / 2m`` and ``a_C = sigma_tot / 2m`` the
modularity is ``sum_C e_C - a_C**2``. Per-community values are always taken
against the full graph's 2m, so they add up to the partition total.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, GraphError, as_vertex_set


class Partition:
    """Assignment of every vertex to a community id in ``0..k-1``.

    Ids are made dense on construction, numbered by first appearance.
    """

    __slots__ = ("assign", "k")

    def __init__(self, labels):
        labels = np.asarray(labels).ravel()
        if labels.size == 0:
            self.assign = np.zeros(0, dtype=np.int64)
            self.k = 0
        else:
            _, first, inverse = np.unique(labels, return_index=True, return_inverse=True)
            rank = np.empty(first.size, dtype=np.int64)
            rank[np.argsort(first, kind="stable")] = np.arange(first.size)
            self.assign = rank[inverse.ravel()]
            self.k = int(first.size)
        self.assign.setflags(write=False)

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls(np.arange(n))

    @classmethod
    def whole(cls, n: int) -> "Partition":
        return cls(np.zeros(n, dtype=np.int64))

    @classmethod
    def from_communities(cls, n: int, communities) -> "Partition":
        parts = [np.asarray(c, dtype=np.int64).ravel() for c in communities]
        flat = np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)
        if flat.size != n or np.unique(flat).size != n or (n and (flat.min() < 0 or flat.max() >= n)):
            raise ValueError("communities must be disjoint and cover every vertex exactly once")
        labels = np.empty(n, dtype=np.int64)
        labels[flat] = np.repeat(np.arange(len(parts)), [p.size for p in parts])
        return cls(labels)

    @property
    def n(self) -> int:
        return int(self.assign.size)

    def __len__(self) -> int:
        return self.n

    def sizes(self) -> np.ndarray:
        return np.bincount(self.assign, minlength=self.k)

    def communities(self) -> list[np.ndarray]:
        """Members of each community, ascending, indexed by community id."""
        order = np.argsort(self.assign, kind="stable")
        return np.split(order, np.cumsum(self.sizes())[:-1])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return np.array_equal(self.assign, other.assign)

    def __repr__(self) -> str:
        return f"Partition(n={self.n}, k={self.k})"


def _check_partition(g: Graph, p: Partition) -> None:
    if p.n != g.n:
        raise GraphError(f"partition covers {p.n} vertices, graph has {g.n}")


def _require_edges(g: Graph) -> float:
    m2 = g.total_weight_2m
    if m2 <= 0:
        raise GraphError("modularity is undefined on a graph without edges")
    return m2


@dataclass
class CommunityStats:
    """Per-community running sums used by the insertion gain."""

    sigma_in: np.ndarray
    sigma_tot: np.ndarray
    m2: float

    @classmethod
    def from_partition(cls, g: Graph, p: Partition) -> "CommunityStats":
        _check_partition(g, p)
        comm = p.assign
        rows = g.row_ids()
        same = comm[rows] == comm[g.indices]
        sigma_in = np.bincount(comm[rows][same], weights=g.weights[same], minlength=p.k).astype(np.float64)
        sigma_in += 2.0 * np.bincount(comm, weights=g.self_loops, minlength=p.k)
        sigma_tot = np.bincount(comm, weights=g.degree, minlength=p.k).astype(np.float64)
        return cls(sigma_in=sigma_in, sigma_tot=sigma_tot, m2=g.total_weight_2m)

    def remove(self, g: Graph, i: int, c: int, k_i_in: float) -> None:
        """Take vertex ``i`` (with ``k_i_in`` weight into ``c``) out of ``c``."""
        self.sigma_in[c] -= 2.0 * k_i_in + 2.0 * g.self_loops[i]
        self.sigma_tot[c] -= g.degree[i]

    def insert(self, g: Graph, i: int, c: int, k_i_in: float) -> None:
        self.sigma_in[c] += 2.0 * k_i_in + 2.0 * g.self_loops[i]
        self.sigma_tot[c] += g.degree[i]


def modularity(g: Graph, p: Partition) -> float:
    """Newman-Girvan modularity of ``p``."""
    _check_partition(g, p)
    m2 = _require_edges(g)
    stats = CommunityStats.from_partition(g, p)
    return float(np.sum(stats.sigma_in / m2 - (stats.sigma_tot / m2) ** 2))


def community_modularity(g: Graph, c) -> float:
    """Contribution ``e_C - a_C**2`` of one vertex set, against the full 2m."""
    members = as_vertex_set(c, g.n)
    if members.size == 0:
        raise GraphError("community is empty")
    m2 = _require_edges(g)
    mask = np.zeros(g.n, dtype=bool)
    mask[members] = True
    rows = g.row_ids()
    inside = mask[rows] & mask[g.indices]
    sigma_in = g.weights[inside].sum() + 2.0 * g.self_loops[members].sum()
    sigma_tot = g.degree[members].sum()
    return float(sigma_in / m2 - (sigma_tot / m2) ** 2)


def split_gain(g: Graph, c1, c2) -> float:
    """``Q(C1) + Q(C2) - Q(C1 u C2)`` for disjoint ``c1``, ``c2``."""
    union = np.concatenate([np.asarray(c1, dtype=np.int64), np.asarray(c2, dtype=np.int64)])
    return community_modularity(g, c1) + community_modularity(g, c2) - community_modularity(g, union)


def delta_q_insert(g: Graph, stats: CommunityStats, i: int, c: int, k_i_in: float) -> float:
    """Modularity change from moving isolated vertex ``i`` into community ``c``.

    ``stats`` must not count ``i`` in ``c``. Evaluated term by term:
    ``[(S_in + 2k_in)/2m - ((S_tot + k_i)/2m)^2] - [S_in/2m - (S_tot/2m)^2 - (k_i/2m)^2]``.
    """
    if not 0 <= c < stats.sigma_tot.size:
        raise IndexError(f"community id {c} out of range")
    m2 = stats.m2
    s_in = stats.sigma_in[c]
    s_tot = stats.sigma_tot[c]
    k_i = g.degree[i]
    after = (s_in + 2.0 * k_i_in) / m2 - ((s_tot + k_i) / m2) ** 2
    before = s_in / m2 - (s_tot / m2) ** 2 - (k_i / m2) ** 2
    return float(after - before)


def weight_into(g: Graph, p: Partition, i: int, c: int) -> float:
    """Total weight of edges from ``i`` to members of ``c`` other than ``i``."""
    nbrs, ws = g.neighbors(i)
    return float(ws[p.assign[nbrs] == c].sum())


def move_gain(g: Graph, p: Partition, i: int, target: int) -> float:
    """Modularity change of relocating ``i`` from its community to ``target``.

    Composed of a removal (the negated insertion of ``i`` back into its own
    community minus itself) followed by an insertion into ``target``.
    """
    own = int(p.assign[i])
    if target == own:
        return 0.0
    stats = CommunityStats.from_partition(g, p)
    k_own = weight_into(g, p, i, own)
    stats.remove(g, i, own, k_own)
    removal = -delta_q_insert(g, stats, i, own, k_own)
    return removal + delta_q_insert(g, stats, i, target, weight_into(g, p, i, target))


def nmi(a, b) -> float:
    """Normalized mutual information ``2*MI / (H(a) + H(b))``.

    Two single-class labelings score 1; exactly one single-class labeling
    scores 0.
    """
    a = np.asarray(a).ravel()
    b = np.asarray(b).ravel()
    if a.size != b.size:
        raise ValueError(f"label vectors differ in length: {a.size} vs {b.size}")
    if a.size == 0:
        raise ValueError("label vectors are empty")
    n = a.size
    _, ai = np.unique(a, return_inverse=True)
    _, bi = np.unique(b, return_inverse=True)
    ai = ai.ravel().astype(np.int64)
    bi = bi.ravel().astype(np.int64)
    kb = int(bi.max()) + 1
    cells, counts = np.unique(ai * kb + bi, return_counts=True)
    pa = np.bincount(ai) / n
    pb = np.bincount(bi) / n
    ha = -np.sum(pa * np.log(pa))
    hb = -np.sum(pb * np.log(pb))
    if ha == 0.0 and hb == 0.0:
        return 1.0
    if ha == 0.0 or hb == 0.0:
        return 0.0
    pij = counts / n
    mi = np.sum(pij * np.log(pij / (pa[cells // kb] * pb[cells % kb])))
    return float(min(1.0, max(0.0, 2.0 * mi / (ha + hb))))
