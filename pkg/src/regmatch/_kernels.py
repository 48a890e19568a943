"""Hot inner loops: Hopcroft-Karp and Euler-tour edge orientation.

Both kernels are written as plain Python over numpy arrays and compiled with
numba's @njit by default.  Setting the environment variable
``REGMATCH_NO_NUMBA=1`` before import selects the interpreted numpy fallback
(same source, no compilation).  ``benchmarks/kernel_bench.py`` compares the
two paths.
"""

import os

import numpy as np

_INF = np.int64(1) << 60


def _hk_from_edges_py(n_left, n_right, edge_u, edge_v):
    """Maximum bipartite matching (Hopcroft-Karp) from a raw edge list.

    Returns (match_l, match_r, size, phases).  Unmatched entries are -1.
    Parallel edges are harmless duplicates.  Adjacency is processed in
    stored edge order, so the result is deterministic.
    """
    m = edge_u.shape[0]
    # counting-sort CSR of left -> right neighbours
    indptr = np.zeros(n_left + 1, np.int64)
    for i in range(m):
        indptr[edge_u[i] + 1] += 1
    for u in range(n_left):
        indptr[u + 1] += indptr[u]
    nbr = np.empty(m, np.int64)
    fill = indptr[:n_left].copy()
    for i in range(m):
        u = edge_u[i]
        nbr[fill[u]] = edge_v[i]
        fill[u] += 1

    match_l = np.full(n_left, -1, np.int64)
    match_r = np.full(n_right, -1, np.int64)
    dist = np.empty(n_left, np.int64)
    queue = np.empty(n_left, np.int64)
    stack_v = np.empty(n_left + 1, np.int64)
    stack_i = np.empty(n_left + 1, np.int64)
    taken = np.empty(n_left + 1, np.int64)
    size = 0
    phases = 0
    while True:
        # BFS layering from free left vertices
        qt = 0
        for u in range(n_left):
            if match_l[u] < 0:
                dist[u] = 0
                queue[qt] = u
                qt += 1
            else:
                dist[u] = _INF
        reachable_free = False
        qh = 0
        while qh < qt:
            u = queue[qh]
            qh += 1
            for i in range(indptr[u], indptr[u + 1]):
                w = match_r[nbr[i]]
                if w < 0:
                    reachable_free = True
                elif dist[w] == _INF:
                    dist[w] = dist[u] + 1
                    queue[qt] = w
                    qt += 1
        if not reachable_free:
            break
        phases += 1
        # maximal set of vertex-disjoint shortest augmenting paths
        for s in range(n_left):
            if match_l[s] >= 0:
                continue
            top = 0
            stack_v[0] = s
            stack_i[0] = indptr[s]
            while top >= 0:
                u = stack_v[top]
                i = stack_i[top]
                if i >= indptr[u + 1]:
                    dist[u] = _INF
                    top -= 1
                    continue
                stack_i[top] = i + 1
                v = nbr[i]
                w = match_r[v]
                if w < 0:
                    # augment along the stack
                    match_l[u] = v
                    match_r[v] = u
                    for t in range(top - 1, -1, -1):
                        pu = stack_v[t]
                        pv = taken[t]
                        match_l[pu] = pv
                        match_r[pv] = pu
                    size += 1
                    top = -1
                elif dist[w] == dist[u] + 1:
                    taken[top] = v
                    top += 1
                    stack_v[top] = w
                    stack_i[top] = indptr[w]
    return match_l, match_r, size, phases


def _euler_orientation_py(n_left, n_total, indptr, inc_eid, edge_u, edge_v):
    """Orient every edge along Euler tours of its connected component.

    ``indptr``/``inc_eid`` is a CSR incidence structure over the combined
    vertex set (left vertices 0..n_left-1, right vertices n_left..n_total-1).
    Requires all degrees even.  Returns a boolean array: True where the edge
    was traversed left-to-right.  Each closed trail contributes equal in- and
    out-degree at every vertex, so a d-regular input splits into two
    d/2-regular halves.
    """
    m = edge_u.shape[0]
    used = np.zeros(m, np.bool_)
    ptr = indptr[:n_total].copy()
    orient_lr = np.zeros(m, np.bool_)
    stack = np.empty(m + 2, np.int64)
    for s in range(n_total):
        top = 0
        stack[0] = s
        while top >= 0:
            x = stack[top]
            i = ptr[x]
            while i < indptr[x + 1] and used[inc_eid[i]]:
                i += 1
            ptr[x] = i
            if i == indptr[x + 1]:
                top -= 1
            else:
                e = inc_eid[i]
                used[e] = True
                ptr[x] = i + 1
                if x < n_left:
                    orient_lr[e] = True
                    y = edge_v[e] + n_left
                else:
                    y = edge_u[e]
                top += 1
                stack[top] = y
    return orient_lr


def _survival_count_py(n_left, n_right, edge_u, edge_v, keep):
    """Count trials (rows of the boolean keep matrix) whose kept-edge
    subgraph has a perfect matching.  Batched fast path for small graphs."""
    trials = keep.shape[0]
    m = edge_u.shape[0]
    eu = np.empty(m, np.int64)
    ev = np.empty(m, np.int64)
    count = 0
    for t in range(trials):
        cnt = 0
        for e in range(m):
            if keep[t, e]:
                eu[cnt] = edge_u[e]
                ev[cnt] = edge_v[e]
                cnt += 1
        _, _, size, _ = hk_from_edges(n_left, n_right, eu[:cnt], ev[:cnt])
        if size == n_left:
            count += 1
    return count


USING_NUMBA = os.environ.get("REGMATCH_NO_NUMBA", "") not in ("1", "true", "yes")

if USING_NUMBA:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover
        USING_NUMBA = False

if USING_NUMBA:
    hk_from_edges = njit(cache=True)(_hk_from_edges_py)
    euler_orientation = njit(cache=True)(_euler_orientation_py)
    survival_count = njit(cache=True)(_survival_count_py)
else:
    hk_from_edges = _hk_from_edges_py
    euler_orientation = _euler_orientation_py
    survival_count = _survival_count_py
