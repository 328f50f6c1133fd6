"""Small fixture graphs and brute-force oracles shared by the tests."""

from __future__ import annotations

import numpy as np

from rwlouvain import Graph, build_graph
from rwlouvain.graph import is_connected


def triangle() -> Graph:
    return build_graph(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)])


def path3() -> Graph:
    return build_graph(3, [(0, 1, 1), (1, 2, 1)])


def star3() -> Graph:
    return build_graph(4, [(0, 1, 1), (0, 2, 1), (0, 3, 1)])


def barbell() -> Graph:
    """Triangles {0,1,2} and {3,4,5} joined by the edge 2-3."""
    return build_graph(6, [(0, 1, 1), (1, 2, 1), (0, 2, 1), (3, 4, 1), (4, 5, 1), (3, 5, 1), (2, 3, 1)])


def two_triangles() -> Graph:
    return build_graph(6, [(0, 1, 1), (1, 2, 1), (0, 2, 1), (3, 4, 1), (4, 5, 1), (3, 5, 1)])


def complete(n: int) -> Graph:
    return build_graph(n, [(i, j, 1) for i in range(n) for j in range(i + 1, n)])


def two_k4() -> Graph:
    """Cliques {0..3} and {4..7} joined by the edge 3-4."""
    edges = [(i, j, 1) for i in range(4) for j in range(i + 1, 4)]
    edges += [(i + 4, j + 4, 1) for i, j, _ in edges]
    return build_graph(8, edges + [(3, 4, 1)])


def random_graph(rng: np.random.Generator, n: int, p: float, weighted: bool = False) -> Graph:
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(iu.size) < p
    w = rng.integers(1, 4, size=int(keep.sum())).astype(float) if weighted else None
    return Graph.from_arrays(n, iu[keep], ju[keep], w)


def random_connected_graph(rng: np.random.Generator, n: int, p: float, weighted: bool = False) -> Graph:
    while True:
        g = random_graph(rng, n, p, weighted)
        if is_connected(g) and np.all(g.degree > 0):
            return g


def dense_row_power(g: Graph, i0: int, t: int) -> np.ndarray:
    """Row ``i0`` of ``P^t`` from a dense matrix power."""
    a = g.to_dense()
    p = a / a.sum(axis=1, keepdims=True)
    return np.linalg.matrix_power(p, t)[i0]


def dense_modularity(g: Graph, labels) -> float:
    """Modularity from the dense modularity matrix; an independent oracle."""
    a = g.to_dense() + np.diag(g.self_loops)  # loop weight w counts 2w
    d = a.sum(axis=1)
    m2 = d.sum()
    labels = np.asarray(labels)
    same = labels[:, None] == labels[None, :]
    return float(((a - np.outer(d, d) / m2) * same).sum() / m2)


def all_partitions(n: int) -> np.ndarray:
    """Every set partition of ``n`` items as restricted growth strings, one per row."""
    rows = np.zeros((1, 1), dtype=np.int8)
    for _ in range(1, n):
        top = rows.max(axis=1) + 1
        reps = (top + 1).astype(np.int64)
        base = np.repeat(rows, reps, axis=0)
        offsets = np.concatenate([np.arange(r) for r in reps])
        rows = np.hstack([base, offsets[:, None].astype(np.int8)])
    return rows


def best_modularity(g: Graph) -> float:
    """Maximum modularity over all partitions (exhaustive; n <= 10)."""
    a = g.to_dense() + np.diag(g.self_loops)  # loop weight w counts 2w
    d = a.sum(axis=1)
    m2 = d.sum()
    b = (a - np.outer(d, d) / m2) / m2
    labels = all_partitions(g.n)
    best = -np.inf
    for chunk in np.array_split(labels, max(1, labels.shape[0] // 20000)):
        same = chunk[:, :, None] == chunk[:, None, :]
        best = max(best, float(np.max(np.tensordot(same, b, axes=([1, 2], [0, 1])))))
    return best


def bell(n: int) -> int:
    row = [1]
    for _ in range(n - 1):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[-1]


def gapped_family(seed: int, count: int, max_n: int = 30, min_gap: float = 0.05):
    """Random connected non-bipartite graphs with a clear second eigenvalue.

    Half are 2-3 block planted graphs, half Erdos-Renyi. Besides the gap
    lambda_2 - lambda_3 > ``min_gap`` each graph also has
    lambda_2 - |lambda_n| > ``min_gap``: the sign agreement needs
    |lambda_a / lambda_2| < 1 for every a >= 3, and a negative lambda_n of
    nearly the same modulus would otherwise still dominate small entries of
    s_2 at finite t.
    """
    from rwlouvain.spectral import dense_spectrum

    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        n = int(rng.integers(8, max_n + 1))
        if len(out) % 2 == 0:
            k = int(rng.integers(2, 4))
            labels = rng.integers(0, k, size=n)
            p_in, p_out = rng.uniform(0.4, 0.9), rng.uniform(0.02, 0.15)
            iu, ju = np.triu_indices(n, 1)
            prob = np.where(labels[iu] == labels[ju], p_in, p_out)
            keep = rng.random(iu.size) < prob
            g = Graph.from_arrays(n, iu[keep], ju[keep])
        else:
            g = random_graph(rng, n, float(rng.uniform(0.15, 0.5)))
        if not is_connected(g) or np.any(g.degree == 0):
            continue
        vals, vecs = dense_spectrum(g)
        if vals[-1] <= -1 + 1e-9:  # bipartite
            continue
        if vals[1] - vals[2] <= min_gap or vals[1] - abs(vals[-1]) <= min_gap:
            continue
        out.append((g, vals, vecs))
    return out
