"""Undirected weighted graphs in CSR form.

Vertices are dense integer ids ``0..n-1``. Off-diagonal adjacency is stored
symmetrically in CSR arrays; self-loops live in a separate per-vertex array.
A self-loop of weight ``w`` contributes ``2w`` to its vertex's degree, so
``sum(degree) == 2m`` holds on aggregated graphs as well.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np
import scipy.sparse as sp

from . import _kernels


class GraphError(ValueError):
    pass


class Graph:
    """Immutable undirected weighted graph.

    Use :func:`build_graph` or :meth:`Graph.from_arrays` to construct one;
    the initializer trusts its arguments.
    """

    def __init__(self, n, indptr, indices, weights, self_loops):
        self.n = int(n)
        self.indptr = _frozen(indptr, np.int64)
        self.indices = _frozen(indices, np.int64)
        self.weights = _frozen(weights, np.float64)
        self.self_loops = _frozen(self_loops, np.float64)
        deg = np.bincount(self.row_ids(), weights=self.weights, minlength=self.n)
        self.degree = _frozen(deg + 2.0 * self.self_loops, np.float64)
        self.total_weight_2m = float(self.degree.sum())

    @classmethod
    def from_arrays(cls, n: int, u, v, w=None) -> "Graph":
        """Build from parallel endpoint/weight arrays, merging duplicates."""
        n = int(n)
        if n < 0:
            raise GraphError("vertex count must be nonnegative")
        u = np.asarray(u, dtype=np.int64).ravel()
        v = np.asarray(v, dtype=np.int64).ravel()
        w = np.ones(u.shape[0]) if w is None else np.asarray(w, dtype=np.float64).ravel()
        if not (u.shape == v.shape == w.shape):
            raise GraphError("endpoint and weight arrays differ in length")
        if u.size:
            bad = (u < 0) | (u >= n) | (v < 0) | (v >= n)
            if bad.any():
                k = int(np.flatnonzero(bad)[0])
                raise GraphError(f"edge {k} ({u[k]}, {v[k]}) has a vertex outside [0, {n})")
            if not (w > 0).all() or not np.isfinite(w).all():
                k = int(np.flatnonzero(~((w > 0) & np.isfinite(w)))[0])
                raise GraphError(f"edge {k} has nonpositive weight {w[k]!r}")
        loop = u == v
        self_loops = np.bincount(u[loop], weights=w[loop], minlength=n) if n else np.zeros(0)
        uo, vo, wo = u[~loop], v[~loop], w[~loop]
        mat = sp.coo_array(
            (np.concatenate([wo, wo]), (np.concatenate([uo, vo]), np.concatenate([vo, uo]))),
            shape=(n, n),
        ).tocsr()
        mat.sum_duplicates()
        mat.sort_indices()
        return cls(n, mat.indptr, mat.indices, mat.data, self_loops)

    # -- basic queries -------------------------------------------------

    @property
    def num_edges(self) -> int:
        """Distinct edges, self-loops included."""
        return int(self.indices.size // 2 + np.count_nonzero(self.self_loops))

    @property
    def has_self_loops(self) -> bool:
        return bool(np.any(self.self_loops > 0))

    def neighbors(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        lo, hi = self.indptr[i], self.indptr[i + 1]
        return self.indices[lo:hi], self.weights[lo:hi]

    def weight(self, u: int, v: int) -> float:
        if u == v:
            return float(self.self_loops[u])
        nbrs, ws = self.neighbors(u)
        k = np.searchsorted(nbrs, v)
        if k < nbrs.size and nbrs[k] == v:
            return float(ws[k])
        return 0.0

    def row_ids(self) -> np.ndarray:
        """Source vertex of every CSR entry."""
        return np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.indptr))

    def edges(self) -> Iterator[tuple[int, int, float]]:
        """Each distinct edge once as ``(u, v, w)`` with ``u <= v``."""
        rows = self.row_ids()
        keep = rows < self.indices
        for a, b, w in zip(rows[keep].tolist(), self.indices[keep].tolist(), self.weights[keep].tolist()):
            yield a, b, w
        for a in np.flatnonzero(self.self_loops).tolist():
            yield a, a, float(self.self_loops[a])

    def to_scipy(self) -> sp.csr_array:
        """Adjacency matrix with self-loop weights on the diagonal."""
        mat = sp.csr_array((self.weights, self.indices, self.indptr), shape=(self.n, self.n))
        if self.has_self_loops:
            mat = (mat + sp.diags_array(self.self_loops)).tocsr()
        return mat

    def to_dense(self) -> np.ndarray:
        return self.to_scipy().toarray()

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.num_edges}, 2m={self.total_weight_2m:g})"


def _frozen(a, dtype) -> np.ndarray:
    out = np.array(a, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


def build_graph(n: int, edges: Iterable[tuple]) -> Graph:
    """Build a graph from ``(u, v[, w])`` triples; ``w`` defaults to 1."""
    rows = [tuple(e) for e in edges]
    if not rows:
        return Graph.from_arrays(n, [], [], [])
    u = [r[0] for r in rows]
    v = [r[1] for r in rows]
    w = [r[2] if len(r) > 2 else 1.0 for r in rows]
    return Graph.from_arrays(n, u, v, w)


def as_vertex_set(c, n: int) -> np.ndarray:
    """Validate a vertex collection: in range, no duplicates. Order is kept."""
    arr = np.asarray(c, dtype=np.int64).ravel()
    if arr.size and (arr.min() < 0 or arr.max() >= n):
        raise GraphError(f"vertex id outside [0, {n})")
    if np.unique(arr).size != arr.size:
        raise GraphError("vertex set contains duplicates")
    return arr


@dataclass(frozen=True, eq=False)
class SubgraphMap:
    """An induced subgraph plus the vertex correspondence to its parent."""

    sub: Graph
    to_parent: np.ndarray
    from_parent: np.ndarray  # parent id -> sub id, -1 where absent

    def lift(self, sub_ids) -> np.ndarray:
        return self.to_parent[np.asarray(sub_ids, dtype=np.int64)]


def induced_subgraph(g: Graph, c) -> SubgraphMap:
    """Subgraph on ``c``; sub vertex ``k`` is ``c[k]``."""
    members = as_vertex_set(c, g.n)
    if members.size == 0:
        raise GraphError("cannot induce a subgraph on an empty vertex set")
    local = np.full(g.n, -1, dtype=np.int64)
    ptr, idx, w = _kernels.induced_csr(g.indptr, g.indices, g.weights, members, local)
    # CSR rows must be sorted for Graph.weight lookups
    order = np.lexsort((idx, np.repeat(np.arange(members.size), np.diff(ptr))))
    sub = Graph(members.size, ptr, idx[order], w[order], g.self_loops[members])
    local[members] = np.arange(members.size)
    return SubgraphMap(sub=sub, to_parent=_frozen(members, np.int64), from_parent=_frozen(local, np.int64))


def connected_components(g: Graph) -> list[np.ndarray]:
    """Maximal connected vertex sets, each ascending, ordered by smallest member."""
    labels, ncomp = _kernels.component_labels(g.indptr, g.indices, g.n)
    return split_by_labels(np.arange(g.n, dtype=np.int64), labels, ncomp)


def split_by_labels(members: np.ndarray, labels: np.ndarray, k: int) -> list[np.ndarray]:
    order = np.argsort(labels, kind="stable")
    bounds = np.cumsum(np.bincount(labels, minlength=k))[:-1]
    return np.split(members[order], bounds)


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    _, ncomp = _kernels.component_labels(g.indptr, g.indices, g.n)
    return ncomp == 1


def aggregate(g: Graph, p) -> Graph:
    """Collapse each community of ``p`` into a supernode.

    Intra-community edges become the supernode's self-loop weight (so each
    contributes ``2w`` to its degree); inter-community weights are summed.
    ``p`` may be a :class:`~rwlouvain.quality.Partition` or a label array.
    """
    assign = np.asarray(getattr(p, "assign", p), dtype=np.int64)
    if assign.shape != (g.n,):
        raise GraphError(f"partition covers {assign.size} vertices, graph has {g.n}")
    if g.n == 0:
        return Graph(0, [0], [], [], [])
    if assign.min() < 0:
        raise GraphError("partition leaves vertices unassigned")
    _, dense = np.unique(assign, return_inverse=True)
    k = int(dense.max()) + 1
    cu = dense[g.row_ids()]
    cv = dense[g.indices]
    same = cu == cv
    # every intra edge appears twice in CSR, once per direction
    loops = np.bincount(cu[same], weights=g.weights[same], minlength=k) / 2.0
    loops += np.bincount(dense, weights=g.self_loops, minlength=k)
    mat = sp.coo_array((g.weights[~same], (cu[~same], cv[~same])), shape=(k, k)).tocsr()
    mat.sum_duplicates()
    mat.sort_indices()
    return Graph(k, mat.indptr, mat.indices, mat.data, loops)
