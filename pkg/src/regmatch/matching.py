"""Maximum and perfect matching algorithms.

Hopcroft-Karp and the Euler-split halving run on compiled kernels (see
_kernels); the brute-force oracle is a bitmask DP used only in tests and
small verifications.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .graph import BipartiteMultigraph, GraphError, Matching, regular_degree
from .sampling import sample_edge_ids, rate_schedule, upper_bound_rate


@dataclass
class MatchResult:
    """Outcome of the perfect-matching driver."""

    matching: Matching
    is_perfect: bool
    phases: int = 0
    sampled_edges: int = 0
    attempts: int = 0


def _hk_arrays(n_left, n_right, edge_u, edge_v):
    ml, mr, size, phases = _kernels.hk_from_edges(
        int(n_left), int(n_right),
        np.ascontiguousarray(edge_u, dtype=np.int64),
        np.ascontiguousarray(edge_v, dtype=np.int64))
    return ml, mr, int(size), int(phases)


def hopcroft_karp(g: BipartiteMultigraph, with_phases: bool = False):
    """Maximum-cardinality matching; deterministic (stored edge order)."""
    ml, mr, _, phases = _hk_arrays(g.n_left, g.n_right, g.edge_u, g.edge_v)
    matching = Matching(ml, mr)
    if with_phases:
        return matching, phases
    return matching


def brute_force_max_matching(g: BipartiteMultigraph) -> Matching:
    """Exhaustive maximum matching oracle (bitmask DP over right vertices)."""
    if g.n_left > 12 or g.n_right > 12:
        raise GraphError("brute-force oracle refuses graphs over 12 per side")
    n = g.n_left
    nbr_mask = [0] * n
    for u, v in zip(g.edge_u.tolist(), g.edge_v.tolist()):
        nbr_mask[u] |= 1 << v

    @lru_cache(maxsize=None)
    def best(i: int, used: int) -> int:
        if i == n:
            return 0
        b = best(i + 1, used)
        avail = nbr_mask[i] & ~used
        while avail:
            bit = avail & -avail
            avail ^= bit
            b = max(b, 1 + best(i + 1, used | bit))
        return b

    left = np.full(g.n_left, -1, dtype=np.int64)
    right = np.full(g.n_right, -1, dtype=np.int64)
    used = 0
    for i in range(n):
        target = best(i, used)
        if target == best(i + 1, used):
            continue
        avail = nbr_mask[i] & ~used
        while avail:
            bit = avail & -avail
            avail ^= bit
            if 1 + best(i + 1, used | bit) == target:
                v = bit.bit_length() - 1
                left[i] = v
                right[v] = i
                used |= bit
                break
    best.cache_clear()
    return Matching(left, right)


def _power_of_two(d: int) -> bool:
    return d >= 1 and d & (d - 1) == 0


def _euler_keep_lr(n_left, n_right, edge_u, edge_v):
    """Boolean mask of edges oriented left-to-right along Euler tours."""
    m = edge_u.shape[0]
    n_total = n_left + n_right
    endpoints = np.concatenate([edge_u, edge_v + n_left])
    order = np.argsort(endpoints, kind="stable")
    inc_eid = np.ascontiguousarray(order % m)
    counts = np.bincount(endpoints, minlength=n_total)
    indptr = np.concatenate(([0], np.cumsum(counts))).astype(np.int64)
    return _kernels.euler_orientation(int(n_left), int(n_total), indptr,
                                      inc_eid, edge_u, edge_v)


def euler_split_matching(g: BipartiteMultigraph) -> Matching:
    """Perfect matching by repeated Euler-tour degree halving.

    Requires d-regular input with d a power of two.  Each halving keeps the
    left-to-right oriented half, which is exactly (d/2)-regular; the d = 1
    residue is the matching.  Total work is proportional to m.
    """
    d = regular_degree(g)
    if d is None or not _power_of_two(d):
        raise GraphError("euler split requires a regular graph of power-of-2 degree")
    if g.n_left != g.n_right:
        raise GraphError("euler split requires a square graph")
    eu = np.ascontiguousarray(g.edge_u)
    ev = np.ascontiguousarray(g.edge_v)
    while d > 1:
        keep = _euler_keep_lr(g.n_left, g.n_right, eu, ev)
        eu = np.ascontiguousarray(eu[keep])
        ev = np.ascontiguousarray(ev[keep])
        d //= 2
    left = np.full(g.n_left, -1, dtype=np.int64)
    right = np.full(g.n_right, -1, dtype=np.int64)
    left[eu] = ev
    right[ev] = eu
    return Matching(left, right)


def euler_half(g: BipartiteMultigraph) -> BipartiteMultigraph:
    """One halving step: the left-to-right oriented half as a subgraph."""
    d = regular_degree(g)
    if d is None or d % 2 != 0:
        raise GraphError("euler halving requires regular even degree")
    keep = _euler_keep_lr(g.n_left, g.n_right, g.edge_u, g.edge_v)
    ids = np.nonzero(keep)[0]
    origin = ids if g.edge_origin is None else g.edge_origin[ids]
    return BipartiteMultigraph(g.n_left, g.n_right,
                               g.edge_u[ids], g.edge_v[ids], edge_origin=origin)


def find_perfect_matching(g: BipartiteMultigraph, c: float = 48.0,
                          seed: int = 0) -> MatchResult:
    """Perfect matching in a regular bipartite graph.

    Power-of-2 degree delegates to the Euler split.  Otherwise the graph is
    sampled at geometrically increasing rates starting from
    min(1, c*n*ln(n)/d^2) and Hopcroft-Karp runs on each sample until a
    perfect matching appears; the final rate 1 makes termination
    unconditional.  Deterministic given seed.
    """
    d = regular_degree(g)
    if d is None or d == 0:
        raise GraphError("find_perfect_matching requires a regular graph of degree >= 1")
    n = g.n_left
    if _power_of_two(d):
        return MatchResult(euler_split_matching(g), True,
                           phases=0, sampled_edges=0, attempts=0)
    p0 = upper_bound_rate(n, d, c)
    if p0 >= 1.0:
        matching, phases = hopcroft_karp(g, with_phases=True)
        return MatchResult(matching, matching.size == n,
                           phases=phases, sampled_edges=g.m, attempts=0)
    for attempt, p in enumerate(rate_schedule(p0), start=1):
        rng = np.random.default_rng(np.random.SeedSequence([seed, attempt]))
        ids = sample_edge_ids(g.m, p, rng)
        ml, mr, size, phases = _hk_arrays(n, g.n_right,
                                          g.edge_u[ids], g.edge_v[ids])
        if size == n:
            return MatchResult(Matching(ml, mr), True, phases=phases,
                               sampled_edges=int(ids.size), attempts=attempt)
    raise AssertionError("rate schedule ended at p=1 without a perfect matching")
