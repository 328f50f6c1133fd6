"""Recursive two-way splitting with the modularity acceptance test.

Shared by the random-walk partitioner and the spectral baseline; they differ
only in how a connected cluster is cut in two.
"""

from __future__ import annotations

from typing import Callable, Iterable

import numpy as np

from . import _kernels, checks
from .constants import SPLIT_ACCEPT_SLACK
from .graph import Graph

# split(members, ptr, idx, w) -> side array (0 = first cluster, 1 = second)
SplitFn = Callable[[np.ndarray, np.ndarray, np.ndarray, np.ndarray], np.ndarray]


class Workspace:
    """Scratch buffers reused across every cluster of one run."""

    def __init__(self, g: Graph):
        self.g = g
        self.local = np.full(g.n, -1, dtype=np.int64)

    def induce(self, members: np.ndarray):
        g = self.g
        return _kernels.induced_csr(g.indptr, g.indices, g.weights, members, self.local)


def _community_q(sigma_in: float, sigma_tot: float, m2: float) -> float:
    return sigma_in / m2 - (sigma_tot / m2) ** 2


def recursive_bisection(g: Graph, clusters: Iterable[np.ndarray], split: SplitFn) -> list[np.ndarray]:
    """Refine each cluster by recursive bisection; returns the final clusters.

    A disconnected cluster is first broken into its components without any
    acceptance test. A connected one is handed to ``split``; the cut is kept
    only when both halves are nonempty and their summed contribution beats
    the parent's by more than ``SPLIT_ACCEPT_SLACK``. Output is depth first,
    first half before second, clusters in input order.
    """
    m2 = g.total_weight_2m
    ws = Workspace(g)
    degree = g.degree
    loops = g.self_loops
    out: list[np.ndarray] = []
    stack = [np.sort(np.asarray(c, dtype=np.int64)) for c in clusters][::-1]
    while stack:
        members = stack.pop()
        k = members.size
        if k <= 1:
            if k:
                out.append(members)
            continue
        ptr, idx, w = ws.induce(members)
        labels, ncomp = _kernels.component_labels(ptr, idx, k)
        if ncomp > 1:
            order = np.argsort(labels, kind="stable")
            parts = np.split(members[order], np.cumsum(np.bincount(labels, minlength=ncomp))[:-1])
            stack.extend(parts[::-1])
            continue

        side = split(members, ptr, idx, w)
        n2 = int(side.sum())
        if n2 == 0 or n2 == k:
            out.append(members)
            continue
        member_loops = 2.0 * loops[members]
        s_in = _kernels.side_internal_weight(ptr, idx, w, side) + np.bincount(side, weights=member_loops, minlength=2)
        s_tot = np.bincount(side, weights=degree[members], minlength=2)
        q_parent = _community_q(w.sum() + member_loops.sum(), s_tot.sum(), m2)
        q_halves = _community_q(s_in[0], s_tot[0], m2) + _community_q(s_in[1], s_tot[1], m2)
        if q_halves > q_parent + SPLIT_ACCEPT_SLACK:
            c1 = members[side == 0]
            c2 = members[side == 1]
            if checks.enabled():
                _check_split(g, members, c1, c2)
            stack.append(c2)
            stack.append(c1)
        else:
            out.append(members)
    return out


def _check_split(g: Graph, parent, c1, c2) -> None:
    from .quality import community_modularity

    before = community_modularity(g, parent)
    after = community_modularity(g, c1) + community_modularity(g, c2)
    checks.assert_nondecreasing(before, after, "accepted split")
