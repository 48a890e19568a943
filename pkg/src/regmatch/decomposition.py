"""Desk-scale low-cut decomposition and its brute-force verification.

The procedure repeatedly removes the smallest vertex subset whose boundary
in the current residual is at most twice the cut floor d^2/(4n); once no
such subset remains, the residual becomes the final piece so the pieces
partition the vertex set.  All threshold comparisons use exact rationals.
This module is a verification artifact and never runs in the matching fast
path, so the subset search is an exhaustive bitmask scan.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np

from .graph import (BipartiteMultigraph, GraphError, VertexSet, cut_size,
                    induced_subgraph, regular_degree)

_MAX_VERTICES = 24
_CHUNK_BITS = 18


def alpha(n: int, d: int) -> Fraction:
    """Exact cut floor d^2 / (4n)."""
    if n < 1 or d < 1:
        raise GraphError(f"need n >= 1 and d >= 1, got n={n}, d={d}")
    return Fraction(d * d, 4 * n)


def _combined_endpoints(g: BipartiteMultigraph):
    return g.edge_u, g.edge_v + g.n_left


def _iter_mask_cuts(g: BipartiteMultigraph):
    """Yield (masks, cut_sizes, popcounts) over all 2^nv subset bitmasks.

    Bit i of a mask is left vertex i for i < n_left, else right vertex
    i - n_left.  Chunked to bound memory for larger vertex counts.
    """
    nv = g.n_left + g.n_right
    gu, gv = _combined_endpoints(g)
    shifts = np.arange(nv, dtype=np.int64)
    total = 1 << nv
    step = min(total, 1 << _CHUNK_BITS)
    for start in range(0, total, step):
        masks = np.arange(start, min(start + step, total), dtype=np.int64)
        bits = (masks[:, None] >> shifts) & 1
        cross = bits[:, gu] != bits[:, gv]
        cuts = cross.sum(axis=1)
        pops = bits.sum(axis=1)
        yield masks, cuts, pops


def _mask_to_vertex_set(g: BipartiteMultigraph, mask: int) -> VertexSet:
    left = frozenset(i for i in range(g.n_left) if (mask >> i) & 1)
    right = frozenset(j for j in range(g.n_right)
                      if (mask >> (g.n_left + j)) & 1)
    return VertexSet(left=left, right=right)


def _lex_less(a_mask: int, b_mask: int) -> bool:
    """Lexicographic order on sorted combined-index vertex lists."""
    diff = a_mask ^ b_mask
    low = diff & -diff
    return bool(a_mask & low)


def brute_force_min_cut(g: BipartiteMultigraph) -> int:
    """Minimum cut over proper nonempty vertex subsets, by exhaustion."""
    nv = g.n_left + g.n_right
    if nv > _MAX_VERTICES:
        raise GraphError(f"brute-force min cut refuses graphs over {_MAX_VERTICES} vertices")
    if nv < 2:
        raise GraphError("min cut needs at least 2 vertices")
    full = (1 << nv) - 1
    best = None
    for masks, cuts, _ in _iter_mask_cuts(g):
        sel = (masks != 0) & (masks != full)
        if np.any(sel):
            local = int(cuts[sel].min())
            best = local if best is None else min(best, local)
    return best


def smallest_low_cut_subset(h: BipartiteMultigraph,
                            threshold: Fraction) -> Optional[VertexSet]:
    """Minimum-cardinality proper nonempty subset with boundary <= threshold.

    Ties break to the lexicographically smallest vertex set (combined index
    order).  Returns None when no subset qualifies.
    """
    nv = h.n_left + h.n_right
    if nv > _MAX_VERTICES:
        raise GraphError(f"subset scan refuses graphs over {_MAX_VERTICES} vertices")
    if nv < 2:
        return None
    int_thr = int(threshold)  # cuts are integers: cut <= thr iff cut <= floor(thr)
    if Fraction(int_thr) > threshold:
        int_thr -= 1
    full = (1 << nv) - 1
    best_mask = None
    best_pop = None
    for masks, cuts, pops in _iter_mask_cuts(h):
        sel = (masks != 0) & (masks != full) & (cuts <= int_thr)
        for mask, pop in zip(masks[sel].tolist(), pops[sel].tolist()):
            if best_pop is None or pop < best_pop or (
                    pop == best_pop and _lex_less(mask, best_mask)):
                best_mask = mask
                best_pop = pop
    if best_mask is None:
        return None
    return _mask_to_vertex_set(h, best_mask)


@dataclass
class Piece:
    """One decomposition piece, with vertex ids in host-graph coordinates."""

    vertex_set: VertexSet
    subgraph: BipartiteMultigraph


@dataclass
class DecompositionResult:
    pieces: List[Piece]
    boundary_counts: List[int]   # one entry per extracted piece
    alpha: Fraction
    residual_is_piece: bool


def decompose(g: BipartiteMultigraph) -> DecompositionResult:
    """Run the extraction loop at threshold 2 * alpha until exhaustion.

    Deterministic (lexicographic tie-break inside the subset search); the
    final residual is appended as the last piece so the pieces partition the
    vertex set.
    """
    d = regular_degree(g)
    if d is None or d < 1:
        raise GraphError("decomposition requires a regular graph of degree >= 1")
    nv = g.n_left + g.n_right
    if nv > _MAX_VERTICES:
        raise GraphError(f"decomposition refuses graphs over {_MAX_VERTICES} vertices")
    a = alpha(g.n_left, d)
    threshold = 2 * a

    pieces: List[Piece] = []
    boundary: List[int] = []
    residual = g
    # residual vertex ids in original coordinates
    res_left = np.arange(g.n_left, dtype=np.int64)
    res_right = np.arange(g.n_right, dtype=np.int64)
    while True:
        x = smallest_low_cut_subset(residual, threshold)
        if x is None:
            vs = VertexSet(left=frozenset(res_left.tolist()),
                           right=frozenset(res_right.tolist()))
            pieces.append(Piece(vs, residual))
            return DecompositionResult(pieces, boundary, a, True)
        boundary.append(cut_size(residual, x))
        sub, sub_l, sub_r = induced_subgraph(residual, x)
        vs = VertexSet(left=frozenset(res_left[sub_l].tolist()),
                       right=frozenset(res_right[sub_r].tolist()))
        pieces.append(Piece(vs, sub))
        keep_l = sorted(set(range(residual.n_left)) - x.left)
        keep_r = sorted(set(range(residual.n_right)) - x.right)
        rest = VertexSet(left=frozenset(keep_l), right=frozenset(keep_r))
        residual, rl, rr = induced_subgraph(residual, rest)
        res_left = res_left[rl]
        res_right = res_right[rr]
        if res_left.size + res_right.size == 0:
            return DecompositionResult(pieces, boundary, a, False)


@dataclass
class DecompositionReport:
    violations: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_decomposition(g: BipartiteMultigraph,
                         r: DecompositionResult) -> DecompositionReport:
    """Check the structural guarantees of a decomposition of g.

    Per piece: min cut strictly above alpha (brute-force oracle) and
    boundary in the original graph at most d/2.  Globally: extracted
    boundaries sum to at most d/2, at most n/d pieces, and the vertex sets
    partition V(g).
    """
    report = DecompositionReport()
    d = regular_degree(g)
    if d is None:
        report.violations.append("host graph is not regular")
        return report
    n = g.n_left

    seen_l: set = set()
    seen_r: set = set()
    for idx, piece in enumerate(r.pieces):
        if piece.vertex_set.left & seen_l or piece.vertex_set.right & seen_r:
            report.violations.append(f"piece {idx}: overlaps earlier pieces")
        seen_l |= piece.vertex_set.left
        seen_r |= piece.vertex_set.right
        nv = len(piece.vertex_set)
        if nv >= 2:
            mc = brute_force_min_cut(piece.subgraph)
            if not Fraction(mc) > r.alpha:
                report.violations.append(
                    f"piece {idx}: min cut {mc} not above alpha {r.alpha}")
        bnd = cut_size(g, piece.vertex_set)
        if 2 * bnd > d:
            report.violations.append(
                f"piece {idx}: boundary {bnd} exceeds d/2 = {d}/2")
    if seen_l != set(range(g.n_left)) or seen_r != set(range(g.n_right)):
        report.violations.append("pieces do not cover the vertex set")
    if 2 * sum(r.boundary_counts) > d:
        report.violations.append(
            f"sum of extracted boundaries {sum(r.boundary_counts)} exceeds d/2")
    if len(r.pieces) * d > n:
        report.violations.append(
            f"piece count {len(r.pieces)} exceeds n/d = {n}/{d}")
    return report
