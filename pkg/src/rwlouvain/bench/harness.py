"""Seeded experiment grids and CSV reporting."""

from __future__ import annotations

import csv
import logging
import os
import sys
import time
from dataclasses import asdict, dataclass, field, fields
from typing import Any, Mapping, Optional, Sequence

import numpy as np

from ..constants import DEFAULT_MIN_GAIN
from ..gen import GaussianPartitionSpec, PlantedSpec, gaussian_random_partition, planted_l_partition
from ..graph import Graph
from ..louvain import LouvainConfig, louvain, rwgp_louvain
from ..quality import Partition, modularity, nmi
from ..rwgp import RwgpConfig, rwgp_partition
from ..spectral import newman_spectral_partition
from .io import load_edge_list, read_partition

log = logging.getLogger(__name__)

ALGORITHMS = ("louvain", "rwgp-louvain", "rwgp1", "rwgp2", "newman")
GENERATORS = ("planted", "gaussian", "file")
REQUIRED_PARAMS = {
    "planted": ("l", "g", "p_in", "p_out"),
    "gaussian": ("N", "m_size", "p_in", "p_out"),
    "file": ("path",),
}
COLUMNS = (
    "experiment",
    "seed",
    "algorithm",
    "n",
    "m",
    "p_in",
    "p_out",
    "modularity",
    "nmi",
    "wall_time_ms",
    "communities",
)


@dataclass(frozen=True)
class ExperimentSpec:
    """One benchmark cell, run for ``trials`` consecutive seeds.

    ``params`` holds generator parameters. Integer parameters may be given as
    ``[lo, hi]``, in which case each trial draws uniformly from that range,
    for grids such as ``l in [50, 70]``.
    """

    id: str = "experiment"
    generator: str = "planted"
    params: Mapping[str, Any] = field(default_factory=dict)
    algorithms: Sequence[str] = ("rwgp-louvain",)
    t: int = 15
    trials: int = 10
    seed_base: int = 0
    variant: int = 2
    laziness: float = 0.0
    min_gain: float = DEFAULT_MIN_GAIN

    def __post_init__(self):
        if self.generator not in GENERATORS:
            raise ValueError(f"unknown generator {self.generator!r}; choose from {', '.join(GENERATORS)}")
        if not self.algorithms:
            raise ValueError("algorithm list is empty")
        unknown = [a for a in self.algorithms if a not in ALGORITHMS]
        if unknown:
            raise ValueError(f"unknown algorithm(s) {unknown}; choose from {', '.join(ALGORITHMS)}")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.t < 1:
            raise ValueError("t must be at least 1")
        if self.variant not in (1, 2):
            raise ValueError("variant must be 1 or 2")
        if not 0.0 <= self.laziness < 1.0:
            raise ValueError("laziness must lie in [0, 1)")
        missing = [k for k in REQUIRED_PARAMS[self.generator] if k not in self.params]
        if missing:
            raise ValueError(f"{self.generator} generator needs parameter(s) {', '.join(missing)}")
        object.__setattr__(self, "algorithms", tuple(self.algorithms))
        object.__setattr__(self, "params", dict(self.params))

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> "ExperimentSpec":
        known = {f.name for f in fields(cls)}
        extra = set(data) - known
        if extra:
            raise ValueError(f"unknown experiment field(s): {sorted(extra)}")
        return cls(**data)


@dataclass(frozen=True)
class ResultRow:
    experiment: str
    seed: int
    algorithm: str
    n: int
    m: int
    p_in: Optional[float]
    p_out: Optional[float]
    modularity: float
    nmi: Optional[float]
    wall_time_ms: Optional[float]
    communities: int


class ExperimentError(RuntimeError):
    """Some trials failed; ``rows`` holds the ones that succeeded."""

    def __init__(self, failures, rows):
        lines = [f"trial seed {seed} / {algo}: {exc}" for seed, algo, exc in failures]
        super().__init__(f"{len(failures)} run(s) failed:\n  " + "\n  ".join(lines))
        self.failures = failures
        self.rows = rows


def detect(graph: Graph, algorithm: str, *, t: int = 15, seed: int = 0, variant: int = 2,
           laziness: float = 0.0, min_gain: float = DEFAULT_MIN_GAIN) -> Partition:
    """Run one named detector and return a partition of all vertices."""
    if algorithm == "louvain":
        return louvain(graph, LouvainConfig(seed=seed, min_gain=min_gain)).final
    if algorithm == "rwgp-louvain":
        cfg = LouvainConfig(seed=seed, min_gain=min_gain, rwgp=RwgpConfig(t=t, variant=variant, laziness=laziness))
        return rwgp_louvain(graph, cfg).final
    if algorithm in ("rwgp1", "rwgp2"):
        cfg = RwgpConfig(t=t, variant=int(algorithm[-1]), laziness=laziness)
        return Partition.from_communities(graph.n, rwgp_partition(graph, None, cfg))
    if algorithm == "newman":
        return Partition.from_communities(graph.n, newman_spectral_partition(graph))
    raise ValueError(f"unknown algorithm {algorithm!r}")


def _draw(value, rng: np.random.Generator):
    if isinstance(value, (list, tuple)):
        lo, hi = value
        return int(rng.integers(int(lo), int(hi) + 1))
    return value


def make_graph(spec: ExperimentSpec, seed: int):
    """Return ``(graph, truth or None, p_in, p_out)`` for one trial."""
    p = spec.params
    draw_rng = np.random.default_rng([seed, 1])
    if spec.generator == "planted":
        lg = planted_l_partition(
            PlantedSpec(l=int(_draw(p["l"], draw_rng)), g=int(_draw(p["g"], draw_rng)),
                        p_in=float(p["p_in"]), p_out=float(p["p_out"]), seed=seed)
        )
        return lg.graph, lg.truth, float(p["p_in"]), float(p["p_out"])
    if spec.generator == "gaussian":
        lg = gaussian_random_partition(
            GaussianPartitionSpec(N=int(_draw(p["N"], draw_rng)), m_size=float(_draw(p["m_size"], draw_rng)),
                                  sigma=float(p.get("sigma", 2.5)), p_in=float(p["p_in"]),
                                  p_out=float(p["p_out"]), seed=seed)
        )
        return lg.graph, lg.truth, float(p["p_in"]), float(p["p_out"])
    loaded = load_edge_list(p["path"])
    truth = read_partition(p["truth"], loaded.labels) if p.get("truth") else None
    return loaded.graph, truth, None, None


def run_experiment(spec: ExperimentSpec) -> list[ResultRow]:
    """Run every (trial, algorithm) pair; rows come out in trial, then algorithm order.

    A failing run is logged and skipped; if any failed, :class:`ExperimentError`
    is raised at the end carrying the successful rows.
    """
    rows: list[ResultRow] = []
    failures = []
    for trial in range(spec.trials):
        seed = spec.seed_base + trial
        try:
            graph, truth, p_in, p_out = make_graph(spec, seed)
        except Exception as exc:  # noqa: BLE001 - reported per trial
            log.error("trial seed %d: graph construction failed: %s", seed, exc)
            failures.append((seed, "<generate>", exc))
            continue
        for algo in spec.algorithms:
            try:
                start = time.perf_counter()
                part = detect(graph, algo, t=spec.t, seed=seed, variant=spec.variant,
                              laziness=spec.laziness, min_gain=spec.min_gain)
                elapsed = (time.perf_counter() - start) * 1e3
            except Exception as exc:  # noqa: BLE001 - reported per trial
                log.error("trial seed %d / %s failed: %s", seed, algo, exc)
                failures.append((seed, algo, exc))
                continue
            rows.append(
                ResultRow(
                    experiment=spec.id,
                    seed=seed,
                    algorithm=algo,
                    n=graph.n,
                    m=graph.num_edges,
                    p_in=p_in,
                    p_out=p_out,
                    modularity=modularity(graph, part),
                    nmi=None if truth is None else nmi(truth.assign, part.assign),
                    wall_time_ms=elapsed,
                    communities=part.k,
                )
            )
    if failures:
        raise ExperimentError(failures, rows)
    return rows


def spec_metadata(spec: ExperimentSpec) -> dict:
    meta = asdict(spec)
    meta["algorithms"] = ",".join(spec.algorithms)
    meta["seeds"] = f"{spec.seed_base}..{spec.seed_base + spec.trials - 1}"
    if spec.generator == "gaussian":
        meta["sigma_meaning"] = "standard deviation of community size"
    return meta


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.7g}"
    return str(value)


def emit_csv(rows: Sequence[ResultRow], destination, metadata: Optional[Mapping] = None,
             timing: bool = False) -> None:
    """Write rows as CSV, preceded by ``# key=value`` metadata comments.

    Wall times are written only with ``timing=True``; otherwise that column is
    left blank so identical runs produce identical bytes.
    """
    own = not hasattr(destination, "write")
    if own and os.fspath(destination) == "-":
        fh, own = sys.stdout, False
    else:
        fh = open(destination, "w", newline="", encoding="utf-8") if own else destination
    try:
        for key, value in (metadata or {}).items():
            fh.write(f"# {key}={_meta_value(value)}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(COLUMNS)
        for row in rows:
            values = asdict(row)
            if not timing:
                values["wall_time_ms"] = None
            writer.writerow([_fmt(values[c]) for c in COLUMNS])
    finally:
        if own:
            fh.close()


def _meta_value(value) -> str:
    if isinstance(value, Mapping):
        return ",".join(f"{k}:{_meta_value(v)}" for k, v in sorted(value.items()))
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(_meta_value(v) for v in value) + "]"
    return str(value)


def read_csv(source) -> list[dict]:
    """Parse a file written by :func:`emit_csv`, skipping metadata comments."""
    own = not hasattr(source, "read")
    fh = open(source, newline="", encoding="utf-8") if own else source
    try:
        lines = [line for line in fh if not line.startswith("#")]
    finally:
        if own:
            fh.close()
    return list(csv.DictReader(lines))
