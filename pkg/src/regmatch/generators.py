"""Graph families: random regular, deficient blocks, chained lower-bound
instances, and disjoint unions.

All generators are deterministic functions of their parameters and seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from .graph import BipartiteMultigraph, GraphError


class ParameterError(ValueError):
    """Generator parameters outside the valid domain."""


def gen_random_regular(n: int, d: int, seed: int) -> BipartiteMultigraph:
    """d-regular bipartite multigraph on n+n vertices.

    Built as the edge-union of d independent uniformly random permutations
    of [n]; parallel edges are kept (multigraph semantics).
    """
    if not 1 <= d <= n:
        raise ParameterError(f"need 1 <= d <= n, got d={d}, n={n}")
    rng = np.random.default_rng(seed)
    eu = np.tile(np.arange(n, dtype=np.int64), d)
    ev = np.concatenate([rng.permutation(n) for _ in range(d)]).astype(np.int64)
    return BipartiteMultigraph(n, n, eu, ev)


def gen_random_regular_simple(n: int, d: int, seed: int,
                              max_steps: int = 100_000) -> BipartiteMultigraph:
    """Random simple d-regular bipartite graph on n+n vertices.

    Starts from d random permutations and repairs parallel edges by random
    position swaps inside the offending permutation.  Intended for small
    verification sweeps where parallel-edge pathologies must be excluded.
    """
    if not 1 <= d <= n:
        raise ParameterError(f"need 1 <= d <= n, got d={d}, n={n}")
    if d == n:
        # the complete graph is the only simple option
        eu = np.repeat(np.arange(n, dtype=np.int64), n)
        ev = np.tile(np.arange(n, dtype=np.int64), n)
        return BipartiteMultigraph(n, n, eu, ev)
    rng = np.random.default_rng(seed)
    rows = np.stack([rng.permutation(n) for _ in range(d)])
    for _ in range(max_steps):
        # columns where some value repeats across rows
        conflict = None
        for u in range(n):
            col = rows[:, u]
            if np.unique(col).size < d:
                vals, counts = np.unique(col, return_counts=True)
                dup = vals[counts > 1][0]
                r = int(np.nonzero(col == dup)[0][-1])
                conflict = (r, u)
                break
        if conflict is None:
            eu = np.tile(np.arange(n, dtype=np.int64), d)
            ev = rows.reshape(-1).astype(np.int64)
            return BipartiteMultigraph(n, n, eu, ev)
        r, u = conflict
        u2 = int(rng.integers(n))
        rows[r, u], rows[r, u2] = rows[r, u2], rows[r, u]
    raise ParameterError(
        f"could not reach a simple {d}-regular graph on {n}+{n} in {max_steps} steps")


def gen_h_block(d: int, k: int, seed: int = 0):
    """Block on d+d vertices with k degree-(d-1) vertices per side.

    The base graph is the circulant u_i ~ v_{(i+t) mod d}, t = 0..d-1, which
    contains the perfect matching t = 0; the first k of those matching edges
    are removed.  Deterministic; the seed parameter is accepted for interface
    uniformity and ignored.

    Returns (graph, deficient_left, deficient_right).
    """
    if d < 1:
        raise ParameterError(f"need d >= 1, got d={d}")
    if not 0 <= k <= d:
        raise ParameterError(f"need 0 <= k <= d, got k={k}, d={d}")
    edges = [(i, (i + t) % d) for t in range(d) for i in range(d)
             if not (t == 0 and i < k)]
    eu = np.array([e[0] for e in edges], dtype=np.int64)
    ev = np.array([e[1] for e in edges], dtype=np.int64)
    g = BipartiteMultigraph(d, d, eu, ev)
    deficient = list(range(k))
    return g, deficient, list(deficient)


@dataclass(frozen=True)
class LowerBoundMeta:
    """Parameters and vertex layout of the chained-block family."""

    n: int
    d: int
    gamma: int
    w_blocks: int
    k_list: Tuple[int, ...]
    chain_len: int
    u_index: int            # right-side index of the distinguished vertex u
    v_index: int            # left-side index of the distinguished vertex v
    block_offsets: Dict[Tuple[int, int], int]  # (i, j) -> vertex offset

    @property
    def total_vertices(self) -> int:
        return 2 * self.d * self.chain_len * self.w_blocks + 2


def lower_bound_survival(meta: LowerBoundMeta, p: float) -> float:
    """Analytic upper bound W * (p * max_j k_j)^(K+1) on survival probability."""
    if p <= 0:
        return 0.0
    return meta.w_blocks * (p * max(meta.k_list)) ** (meta.chain_len + 1)


def gen_lower_bound_family(n: int, d: int):
    """The chained-block d-regular family that defeats low-rate sampling.

    K(n)*W blocks, block (i, j) a copy of the k_j-deficient block; deficient
    V-side vertices of row i are matched in index order to deficient U-side
    vertices of row i+1; row 1's deficient U side connects to the
    distinguished vertex u, row K's deficient V side to v.

    Returns (graph, LowerBoundMeta).
    """
    if n < 2 or d < 1 or d > n:
        raise ParameterError(f"need n >= 2 and 1 <= d <= n, got n={n}, d={d}")
    ln_n = math.log(n)
    gamma = math.ceil(d * d * ln_n / n)
    w_blocks = math.ceil(d / gamma)
    k_list = tuple([gamma] * (w_blocks - 1) + [d - gamma * (w_blocks - 1)])
    if d >= math.sqrt(n / ln_n):
        chain_len = math.ceil(ln_n)
    else:
        chain_len = math.ceil(n / (d * d))

    offsets = {}
    for i in range(1, chain_len + 1):
        for j in range(1, w_blocks + 1):
            offsets[(i, j)] = ((i - 1) * w_blocks + (j - 1)) * d
    n_side = d * chain_len * w_blocks + 1
    v_index = n_side - 1   # left side
    u_index = n_side - 1   # right side

    eu: List[int] = []
    ev: List[int] = []
    for (i, j), off in offsets.items():
        k = k_list[j - 1]
        block, _, _ = gen_h_block(d, k)
        eu.extend((block.edge_u + off).tolist())
        ev.extend((block.edge_v + off).tolist())
        # deficient vertices are block-local 0..k-1 on both sides
        if i < chain_len:
            nxt = offsets[(i + 1, j)]
            for t in range(k):
                eu.append(nxt + t)
                ev.append(off + t)
        else:
            for t in range(k):
                eu.append(v_index)
                ev.append(off + t)
        if i == 1:
            for t in range(k):
                eu.append(off + t)
                ev.append(u_index)

    g = BipartiteMultigraph(n_side, n_side,
                            np.array(eu, dtype=np.int64),
                            np.array(ev, dtype=np.int64))
    meta = LowerBoundMeta(n=n, d=d, gamma=gamma, w_blocks=w_blocks,
                          k_list=k_list, chain_len=chain_len,
                          u_index=u_index, v_index=v_index,
                          block_offsets=offsets)
    assert sum(k_list) == d
    assert 2 * n_side == meta.total_vertices
    return g, meta


def disjoint_union(g1: BipartiteMultigraph,
                   g2: BipartiteMultigraph) -> BipartiteMultigraph:
    """Vertex-disjoint union with g2's indices offset past g1's."""
    eu = np.concatenate([g1.edge_u, g2.edge_u + g1.n_left])
    ev = np.concatenate([g1.edge_v, g2.edge_v + g1.n_right])
    return BipartiteMultigraph(g1.n_left + g2.n_left,
                               g1.n_right + g2.n_right, eu, ev)


def write_lower_bound_meta(meta: LowerBoundMeta, path) -> None:
    """Sidecar text file listing the family parameters."""
    with open(path, "w") as fh:
        fh.write(f"n {meta.n}\n")
        fh.write(f"d {meta.d}\n")
        fh.write(f"gamma {meta.gamma}\n")
        fh.write(f"W {meta.w_blocks}\n")
        fh.write(f"K {meta.chain_len}\n")
        fh.write("k_list " + ",".join(str(k) for k in meta.k_list) + "\n")
        fh.write(f"u_index {meta.u_index}\n")
        fh.write(f"v_index {meta.v_index}\n")
