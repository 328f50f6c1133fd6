"""Random graphs with planted communities and their ground truth."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .graph import Graph
from .quality import Partition

# Pair spaces up to this size are sampled with one Bernoulli draw per pair;
# larger ones draw the edge count first and then a uniform set of pairs.
_DENSE_PAIR_LIMIT = 4_000_000


@dataclass(frozen=True)
class PlantedSpec:
    l: int
    g: int
    p_in: float
    p_out: float
    seed: int = 0

    def __post_init__(self):
        if self.l < 1 or self.g < 1 or self.l * self.g < 2:
            raise ValueError("need l >= 1, g >= 1 and at least two vertices")
        _check_probabilities(self.p_in, self.p_out)

    @property
    def expected_degree(self) -> float:
        return self.p_in * (self.g - 1) + self.p_out * self.g * (self.l - 1)


@dataclass(frozen=True)
class GaussianPartitionSpec:
    """``sigma`` is the standard deviation of the community size."""

    N: int
    m_size: float
    sigma: float
    p_in: float
    p_out: float
    seed: int = 0

    def __post_init__(self):
        if self.N < 2:
            raise ValueError("N must be at least 2")
        if self.m_size < 1:
            raise ValueError("mean community size must be at least 1")
        if self.sigma < 0:
            raise ValueError("sigma must be nonnegative")
        _check_probabilities(self.p_in, self.p_out)


@dataclass(frozen=True, eq=False)
class LabeledGraph:
    graph: Graph
    truth: Partition


def _check_probabilities(p_in: float, p_out: float) -> None:
    for name, p in (("p_in", p_in), ("p_out", p_out)):
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"{name} must lie in [0, 1]")
    if p_out > p_in:
        warnings.warn(f"p_out ({p_out}) exceeds p_in ({p_in}); communities will be anti-assortative")


def _pair_ids(rng: np.random.Generator, n_pairs: int, p: float) -> np.ndarray:
    """Sorted ids of the pairs that get an edge, each independently with ``p``."""
    if n_pairs <= 0 or p <= 0.0:
        return np.zeros(0, dtype=np.int64)
    if p >= 1.0:
        return np.arange(n_pairs, dtype=np.int64)
    if n_pairs <= _DENSE_PAIR_LIMIT:
        return np.flatnonzero(rng.random(n_pairs) < p).astype(np.int64)
    k = int(rng.binomial(n_pairs, p))
    chosen = np.unique(rng.integers(0, n_pairs, size=k))
    while chosen.size < k:
        extra = rng.integers(0, n_pairs, size=k - chosen.size)
        chosen = np.unique(np.concatenate([chosen, extra]))
    return chosen


def _decode_pairs(ids: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Map id ``k`` to ``(i, j)``, ``i > j``, with ``k = i*(i-1)/2 + j``."""
    i = np.floor((1.0 + np.sqrt(1.0 + 8.0 * ids.astype(np.float64))) / 2.0).astype(np.int64)
    i[i * (i - 1) // 2 > ids] -= 1
    i[(i + 1) * i // 2 <= ids] += 1
    return i, ids - i * (i - 1) // 2


def planted_edges(rng: np.random.Generator, sizes, p_in: float, p_out: float) -> LabeledGraph:
    sizes = np.asarray(sizes, dtype=np.int64)
    n = int(sizes.sum())
    labels = np.repeat(np.arange(sizes.size), sizes)
    offsets = np.concatenate([[0], np.cumsum(sizes)[:-1]])
    us, vs = [], []
    for off, s in zip(offsets.tolist(), sizes.tolist()):
        i, j = _decode_pairs(_pair_ids(rng, s * (s - 1) // 2, p_in))
        us.append(i + off)
        vs.append(j + off)
    i, j = _decode_pairs(_pair_ids(rng, n * (n - 1) // 2, p_out))
    cross = labels[i] != labels[j]
    us.append(i[cross])
    vs.append(j[cross])
    graph = Graph.from_arrays(n, np.concatenate(us), np.concatenate(vs))
    return LabeledGraph(graph=graph, truth=Partition(labels))


def planted_l_partition(spec: PlantedSpec) -> LabeledGraph:
    """``l`` groups of ``g`` vertices; intra pairs linked with ``p_in``, others ``p_out``."""
    rng = np.random.default_rng(spec.seed)
    return planted_edges(rng, [spec.g] * spec.l, spec.p_in, spec.p_out)


def gaussian_sizes(rng: np.random.Generator, N: int, mean: float, sigma: float) -> list[int]:
    """Normal sizes rounded to the nearest integer, at least 1, summing to ``N``."""
    sizes = []
    total = 0
    while total < N:
        s = max(1, int(np.rint(rng.normal(mean, sigma) if sigma > 0 else mean)))
        sizes.append(s)
        total += s
    sizes[-1] -= total - N
    return sizes


def gaussian_random_partition(spec: GaussianPartitionSpec) -> LabeledGraph:
    rng = np.random.default_rng(spec.seed)
    sizes = gaussian_sizes(rng, spec.N, spec.m_size, spec.sigma)
    return planted_edges(rng, sizes, spec.p_in, spec.p_out)
