"""Edge-list and partition file formats.

Edge lists hold one ``u v [w]`` edge per whitespace-separated line; lines
starting with ``#`` or ``%`` are comments. Labels are arbitrary strings,
numbered densely in order of first appearance. Partition files hold one
``label community_id`` line per vertex.
"""

from __future__ import annotations

import io
import os
import warnings
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, TextIO, Union

import numpy as np

from ..graph import Graph
from ..quality import Partition

Source = Union[str, os.PathLike, TextIO]


class EdgeListError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class LoadedGraph:
    graph: Graph
    labels: list  # vertex id -> original label
    self_loops_dropped: int = 0

    def index(self) -> dict:
        return {lab: i for i, lab in enumerate(self.labels)}


def karate_path() -> Path:
    """The bundled Zachary karate-club edge list."""
    return Path(str(resources.files("rwlouvain").joinpath("data/karate.txt")))


def resolve_graph_path(name: str) -> Path:
    return karate_path() if name == "karate" else Path(name)


def _open(source: Source):
    if hasattr(source, "read"):
        return source, False
    return open(resolve_graph_path(os.fspath(source)), encoding="utf-8"), True


def parse_edge_list(lines: Iterable[str]) -> LoadedGraph:
    index: dict[str, int] = {}
    us, vs, ws = [], [], []
    dropped = 0
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line[0] in "#%":
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise EdgeListError(f"line {lineno}: expected 'u v [w]', got {line!r}")
        weight = 1.0
        if len(parts) == 3:
            try:
                weight = float(parts[2])
            except ValueError:
                raise EdgeListError(f"line {lineno}: weight {parts[2]!r} is not a number") from None
            if not weight > 0 or not np.isfinite(weight):
                raise EdgeListError(f"line {lineno}: weight must be positive, got {parts[2]!r}")
        a = index.setdefault(parts[0], len(index))
        b = index.setdefault(parts[1], len(index))
        if a == b:
            dropped += 1
            continue
        us.append(a)
        vs.append(b)
        ws.append(weight)
    if not us:
        raise EdgeListError("edge list contains no edges")
    if dropped:
        warnings.warn(f"dropped {dropped} self-loop line(s)")
    graph = Graph.from_arrays(len(index), us, vs, ws)
    return LoadedGraph(graph=graph, labels=list(index), self_loops_dropped=dropped)


def load_edge_list(source: Source) -> LoadedGraph:
    """Read an edge list from a path (``"karate"`` names the bundled file) or a text stream."""
    fh, owned = _open(source)
    try:
        return parse_edge_list(fh)
    finally:
        if owned:
            fh.close()


def write_edge_list(path: Union[str, os.PathLike], graph: Graph, labels=None, header: str = "") -> None:
    labels = labels if labels is not None else [str(i) for i in range(graph.n)]
    with open(path, "w", encoding="utf-8") as fh:
        if header:
            for line in header.splitlines():
                fh.write(f"# {line}\n")
        for u, v, w in graph.edges():
            if w == 1.0:
                fh.write(f"{labels[u]} {labels[v]}\n")
            else:
                fh.write(f"{labels[u]} {labels[v]} {w!r}\n")


def format_partition(p: Partition, labels=None) -> str:
    labels = labels if labels is not None else [str(i) for i in range(p.n)]
    buf = io.StringIO()
    for lab, cid in zip(labels, p.assign.tolist()):
        buf.write(f"{lab} {cid}\n")
    return buf.getvalue()


def write_partition(path: Union[str, os.PathLike], p: Partition, labels=None) -> None:
    Path(path).write_text(format_partition(p, labels), encoding="utf-8")


def read_partition(source: Source, labels=None) -> Partition:
    """Parse a partition file; with ``labels`` the result follows that vertex order."""
    fh, owned = _open(source)
    try:
        assign: dict[str, str] = {}
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line[0] in "#%":
                continue
            parts = line.split()
            if len(parts) != 2:
                raise EdgeListError(f"line {lineno}: expected 'label community_id', got {line!r}")
            if parts[0] in assign:
                raise EdgeListError(f"line {lineno}: label {parts[0]!r} assigned twice")
            assign[parts[0]] = parts[1]
    finally:
        if owned:
            fh.close()
    if labels is None:
        return Partition(np.array(list(assign.values())))
    missing = [lab for lab in labels if lab not in assign]
    if missing:
        raise EdgeListError(f"partition file lacks {len(missing)} vertex label(s), e.g. {missing[0]!r}")
    return Partition(np.array([assign[lab] for lab in labels]))
