"""Compiled inner loops over CSR arrays.

Every kernel takes raw ``indptr``/``indices``/``weights`` arrays (int64,
int64, float64) so that the Python layer stays thin and the per-call
overhead does not swamp the O(t*m) work on small clusters.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def walk_steps(indptr, indices, weights, degree, x, steps, laziness, phi, recentre, rescale):
    """Advance the row vector ``x`` by ``steps`` applications of the walk.

    One step is ``x <- laziness*x + (1-laziness) * x D^-1 A``. With
    ``recentre`` the stationary component ``sum(x)*phi`` is removed after each
    step (``x`` is then a deviation from ``phi``); otherwise ``x`` is rescaled
    to unit mass, which only corrects rounding drift. ``rescale`` keeps a
    recentred ``x`` at unit max-norm so long walks cannot underflow; only its
    direction is meaningful then.
    """
    n = x.shape[0]
    cur = x.copy()
    nxt = np.empty(n)
    for _ in range(steps):
        for j in range(n):
            nxt[j] = 0.0
        for u in range(n):
            xu = cur[u]
            if xu == 0.0:
                continue
            share = xu / degree[u]
            for e in range(indptr[u], indptr[u + 1]):
                nxt[indices[e]] += share * weights[e]
        if laziness > 0.0:
            for j in range(n):
                nxt[j] = laziness * cur[j] + (1.0 - laziness) * nxt[j]
        total = 0.0
        for j in range(n):
            total += nxt[j]
        if recentre:
            big = 0.0
            for j in range(n):
                nxt[j] -= total * phi[j]
                big = max(big, abs(nxt[j]))
            if rescale and big > 0.0:
                for j in range(n):
                    nxt[j] /= big
        else:
            for j in range(n):
                nxt[j] /= total
        cur, nxt = nxt, cur
    return cur


@njit(cache=True)
def induced_csr(indptr, indices, weights, members, local):
    """CSR arrays of the subgraph induced by ``members`` (sub id = position).

    ``local`` is caller-owned scratch of length n filled with -1; it is
    restored before returning so the same buffer serves every call.
    """
    k = members.shape[0]
    for a in range(k):
        local[members[a]] = a
    ptr = np.zeros(k + 1, dtype=np.int64)
    for a in range(k):
        u = members[a]
        cnt = 0
        for e in range(indptr[u], indptr[u + 1]):
            if local[indices[e]] >= 0:
                cnt += 1
        ptr[a + 1] = ptr[a] + cnt
    idx = np.empty(ptr[k], dtype=np.int64)
    w = np.empty(ptr[k])
    for a in range(k):
        u = members[a]
        pos = ptr[a]
        for e in range(indptr[u], indptr[u + 1]):
            b = local[indices[e]]
            if b >= 0:
                idx[pos] = b
                w[pos] = weights[e]
                pos += 1
    for a in range(k):
        local[members[a]] = -1
    return ptr, idx, w


@njit(cache=True)
def component_labels(indptr, indices, n):
    """Label connected components by BFS in vertex order.

    Component ids follow the smallest vertex they contain.
    """
    labels = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    ncomp = 0
    for s in range(n):
        if labels[s] >= 0:
            continue
        labels[s] = ncomp
        head = 0
        tail = 1
        queue[0] = s
        while head < tail:
            u = queue[head]
            head += 1
            for e in range(indptr[u], indptr[u + 1]):
                v = indices[e]
                if labels[v] < 0:
                    labels[v] = ncomp
                    queue[tail] = v
                    tail += 1
        ncomp += 1
    return labels, ncomp


@njit(cache=True)
def side_internal_weight(indptr, indices, weights, side):
    """Twice the intra-side edge weight for a two-way split of a subgraph."""
    out = np.zeros(2)
    for u in range(side.shape[0]):
        su = side[u]
        for e in range(indptr[u], indptr[u + 1]):
            if side[indices[e]] == su:
                out[su] += weights[e]
    return out


@njit(cache=True)
def refine_sides(indptr, indices, weights, degree, m2, side, max_sweeps):
    """Gauss-Seidel two-way repair of ``side`` (0/1) in place.

    ``degree`` holds full-graph degrees of the subgraph vertices and ``m2``
    the full graph's 2m, so gains are measured against the whole graph.
    A vertex switches side when inserting it into the other side gains
    strictly more than re-inserting it into its own side minus itself.
    Gains are compared as ``k_in*2m - sigma_tot*k_i``, a positive multiple
    of the modularity change that is exact for integer weights.
    Returns the number of sweeps performed.
    """
    k = side.shape[0]
    tot = np.zeros(2)
    for i in range(k):
        tot[side[i]] += degree[i]
    sweeps = 0
    while sweeps < max_sweeps:
        sweeps += 1
        moves = 0
        for i in range(k):
            s = side[i]
            o = 1 - s
            kin_own = 0.0
            kin_other = 0.0
            for e in range(indptr[i], indptr[i + 1]):
                j = indices[e]
                if j == i:
                    continue
                if side[j] == s:
                    kin_own += weights[e]
                else:
                    kin_other += weights[e]
            ki = degree[i]
            stay = kin_own * m2 - (tot[s] - ki) * ki
            move = kin_other * m2 - tot[o] * ki
            if stay < move:
                side[i] = o
                tot[s] -= ki
                tot[o] += ki
                moves += 1
        if moves == 0:
            break
    return sweeps


@njit(cache=True)
def local_move_pass(indptr, indices, weights, degree, m2, comm, tot, order, nbr_w, nbr_list):
    """One Louvain pass over ``order``; returns the number of vertices moved.

    ``comm`` and ``tot`` (per-community degree sums) are updated in place.
    ``nbr_w`` is zeroed scratch indexed by community, ``nbr_list`` scratch of
    length n. A vertex leaves its community only for a strictly larger gain;
    equal gains among other communities go to the smallest id.
    """
    moved = 0
    for pos in range(order.shape[0]):
        i = order[pos]
        ci = comm[i]
        ki = degree[i]
        cnt = 0
        for e in range(indptr[i], indptr[i + 1]):
            c = comm[indices[e]]
            if nbr_w[c] == 0.0:
                nbr_list[cnt] = c
                cnt += 1
            nbr_w[c] += weights[e]
        tot[ci] -= ki
        best_c = ci
        best = nbr_w[ci] * m2 - tot[ci] * ki
        for q in range(cnt):
            c = nbr_list[q]
            if c == ci:
                continue
            score = nbr_w[c] * m2 - tot[c] * ki
            if score > best or (score == best and best_c != ci and c < best_c):
                best = score
                best_c = c
        tot[best_c] += ki
        if best_c != ci:
            comm[i] = best_c
            moved += 1
        for q in range(cnt):
            nbr_w[nbr_list[q]] = 0.0
    return moved


@njit(cache=True)
def jacobi_sweeps(a, v, tol, max_sweeps):
    """Cyclic Jacobi rotations on symmetric ``a`` in place, accumulating into ``v``.

    Returns True once the off-diagonal Frobenius norm is at most ``tol``.
    """
    n = a.shape[0]
    for _ in range(max_sweeps):
        off = 0.0
        for p in range(n):
            for q in range(n):
                if p != q:
                    off += a[p, q] * a[p, q]
        if np.sqrt(off) <= tol:
            return True
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-30 * tol:
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(tau) > 1e150:
                    t = 0.5 / tau
                elif tau >= 0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
    return False
