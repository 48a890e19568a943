"""Hall's theorem machinery: violator extraction, witness edge sets,
minimal relevant pairs, and the witness-to-cut injection check.

A pair always has a ⊆ U and b ⊆ V.  Left pairs require |a| > |b| with
witness edges a → V∖b; right pairs require |a| < |b| with witness edges
U∖a → b.  Right-side minimality mirrors the left definition under a
U <-> V swap, so the enumeration routines work in a generic orientation
and flip coordinates at the boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import List, Optional, Tuple

import numpy as np

from .graph import BipartiteMultigraph, GraphError, Matching, VertexSet
from .matching import hopcroft_karp


@dataclass(frozen=True)
class RelevantPair:
    """A candidate Hall counterexample (a ⊆ U, b ⊆ V)."""

    side: str
    a: frozenset
    b: frozenset

    def __post_init__(self):
        if self.side not in ("left", "right"):
            raise ValueError(f"side must be 'left' or 'right', got {self.side!r}")
        object.__setattr__(self, "a", frozenset(self.a))
        object.__setattr__(self, "b", frozenset(self.b))

    @property
    def is_relevant(self) -> bool:
        if self.side == "left":
            return len(self.a) > len(self.b)
        return len(self.a) < len(self.b)


@dataclass(frozen=True)
class WitnessEdgeSet:
    pair: RelevantPair
    edge_ids: frozenset


def _membership(g, pair):
    in_a = np.zeros(g.n_left, dtype=bool)
    in_b = np.zeros(g.n_right, dtype=bool)
    if pair.a:
        idx = np.fromiter(pair.a, dtype=np.int64)
        if idx.min() < 0 or idx.max() >= g.n_left:
            raise GraphError("pair has left index out of range")
        in_a[idx] = True
    if pair.b:
        idx = np.fromiter(pair.b, dtype=np.int64)
        if idx.min() < 0 or idx.max() >= g.n_right:
            raise GraphError("pair has right index out of range")
        in_b[idx] = True
    return in_a, in_b


def witness_edge_set(g: BipartiteMultigraph, pair: RelevantPair) -> WitnessEdgeSet:
    """Edges a → V∖b (left pair) or U∖a → b (right pair), as edge ids."""
    if not pair.is_relevant:
        raise GraphError("pair is not relevant (cardinality condition fails)")
    in_a, in_b = _membership(g, pair)
    if pair.side == "left":
        keep = in_a[g.edge_u] & ~in_b[g.edge_v]
    else:
        keep = ~in_a[g.edge_u] & in_b[g.edge_v]
    return WitnessEdgeSet(pair, frozenset(np.nonzero(keep)[0].tolist()))


def boundary_edge_ids(g: BipartiteMultigraph, pair: RelevantPair) -> frozenset:
    """Edge ids crossing the boundary of a ∪ b (exactly one endpoint inside)."""
    in_a, in_b = _membership(g, pair)
    cross = in_a[g.edge_u] != in_b[g.edge_v]
    return frozenset(np.nonzero(cross)[0].tolist())


def extract_hall_violator(g: BipartiteMultigraph, m: Matching):
    """Hall violator (A, N(A)) from a maximum matching, if one exists.

    A collects the left vertices reachable by alternating paths from
    unmatched left vertices; at a maximum matching |N(A)| < |A| and every
    vertex of N(A) is matched into A.  Returns None when every left vertex
    is matched; raises if an augmenting path shows the matching was not
    maximum.
    """
    free = [u for u in range(g.n_left) if m.left_partner[u] < 0]
    if not free:
        return None
    seen_l = np.zeros(g.n_left, dtype=bool)
    seen_r = np.zeros(g.n_right, dtype=bool)
    seen_l[free] = True
    queue = list(free)
    while queue:
        u = queue.pop()
        for v in g.left_neighbors(u):
            v = int(v)
            if seen_r[v]:
                continue
            seen_r[v] = True
            w = int(m.right_partner[v])
            if w < 0:
                raise GraphError("matching is not maximum: augmenting path found")
            if not seen_l[w]:
                seen_l[w] = True
                queue.append(w)
    a = frozenset(np.nonzero(seen_l)[0].tolist())
    neighbors = frozenset(np.nonzero(seen_r)[0].tolist())
    return (VertexSet(left=a), VertexSet(right=neighbors))


def _oriented_edges(g: BipartiteMultigraph, side: str):
    """Edge endpoints with the driving side first (transpose for right)."""
    if side == "left":
        return g.n_left, g.n_right, g.edge_u.tolist(), g.edge_v.tolist()
    return g.n_right, g.n_left, g.edge_v.tolist(), g.edge_u.tolist()


def _make_pair(side: str, a_drive: frozenset, b_drive: frozenset) -> RelevantPair:
    """Build a pair from driving-side coordinates (flip back for right)."""
    if side == "left":
        return RelevantPair("left", a_drive, b_drive)
    return RelevantPair("right", b_drive, a_drive)


def enumerate_minimal_relevant_pairs(g: BipartiteMultigraph,
                                     side: str) -> List[RelevantPair]:
    """All minimal relevant pairs of one side, by exhaustive scan.

    A pair is minimal when no relevant pair with a strictly smaller driving
    set has its witness set contained in this pair's witness set.  Minimality
    is decided by a pure double loop over all relevant pairs; this is a test
    oracle, so no pruning.  Refuses sides larger than 5.
    """
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    if g.n_left > 5 or g.n_right > 5:
        raise GraphError("exhaustive pair enumeration refuses sides over 5")
    n_a, n_b, eu, ev = _oriented_edges(g, side)

    def witness_bits(a_mask: int, b_mask: int) -> int:
        bits = 0
        for eid, (u, v) in enumerate(zip(eu, ev)):
            if (a_mask >> u) & 1 and not (b_mask >> v) & 1:
                bits |= 1 << eid
        return bits

    pairs = []  # (a_mask, b_mask, witness bitmask) in driving coordinates
    for a_mask in range(1 << n_a):
        ka = bin(a_mask).count("1")
        for b_mask in range(1 << n_b):
            if ka > bin(b_mask).count("1"):
                pairs.append((a_mask, b_mask, witness_bits(a_mask, b_mask)))

    out = []
    for a_mask, b_mask, wit in pairs:
        dominated = False
        for a2, _, wit2 in pairs:
            if a2 != a_mask and a2 & a_mask == a2 and wit2 & ~wit == 0:
                dominated = True
                break
        if not dominated:
            a = frozenset(i for i in range(n_a) if (a_mask >> i) & 1)
            b = frozenset(j for j in range(n_b) if (b_mask >> j) & 1)
            out.append(_make_pair(side, a, b))
    return out


def minimal_witness_sets(g: BipartiteMultigraph, side: str,
                         max_side: int = 12) -> List[WitnessEdgeSet]:
    """Minimal witness sets via the subset-neighbourhood criterion.

    A relevant pair (A, B) is dominated exactly when some nonempty proper
    subset A' of the driving set satisfies |N(A') ∩ B| < |A'| (take
    B' = N(A') ∩ B); consequently minimal pairs have |A| = |B| + 1.
    Equivalent to the exhaustive enumeration but usable on larger sides;
    the equivalence is tested on small graphs.
    """
    n_a, n_b, eu, ev = _oriented_edges(g, side)
    if n_a > max_side or n_b > max_side:
        raise GraphError(f"minimal witness enumeration refuses sides over {max_side}")
    nbr = [0] * n_a
    for u, v in zip(eu, ev):
        nbr[u] |= 1 << v

    out = []
    for ka in range(1, n_a + 1):
        for a_tuple in combinations(range(n_a), ka):
            for b_tuple in combinations(range(n_b), ka - 1):
                b_mask = 0
                for j in b_tuple:
                    b_mask |= 1 << j
                if _drive_minimal(a_tuple, nbr, b_mask):
                    pair = _make_pair(side, frozenset(a_tuple), frozenset(b_tuple))
                    ids = [eid for eid, (u, v) in enumerate(zip(eu, ev))
                           if u in a_tuple and not (b_mask >> v) & 1]
                    out.append(WitnessEdgeSet(pair, frozenset(ids)))
    return out


def _drive_minimal(a_tuple, nbr, b_mask) -> bool:
    members = list(a_tuple)
    ka = len(members)
    for sub in range(1, (1 << ka) - 1):
        n_sub = 0
        size = 0
        for t in range(ka):
            if (sub >> t) & 1:
                n_sub |= nbr[members[t]]
                size += 1
        if bin(n_sub & b_mask).count("1") < size:
            return False
    return True


@dataclass
class InjectionReport:
    ok: bool
    counterexample: Optional[Tuple[RelevantPair, RelevantPair, frozenset]] = None


def verify_witness_cut_injection(g: BipartiteMultigraph) -> InjectionReport:
    """Distinct minimal witness sets must map to distinct boundary cuts.

    Boundaries are compared as edge-id sets, the strongest reading.  Both
    sides are checked.  Requires a graph with a perfect matching and sides
    of at most 5 (exhaustive enumeration underneath).
    """
    if g.n_left != g.n_right or hopcroft_karp(g).size != g.n_left:
        raise GraphError("injection check requires a graph with a perfect matching")
    for side in ("left", "right"):
        seen = {}  # boundary edge-id set -> (witness edge-id set, pair)
        for pair in enumerate_minimal_relevant_pairs(g, side):
            wit = witness_edge_set(g, pair).edge_ids
            boundary = boundary_edge_ids(g, pair)
            if boundary in seen and seen[boundary][0] != wit:
                return InjectionReport(False, (seen[boundary][1], pair, boundary))
            seen.setdefault(boundary, (wit, pair))
    return InjectionReport(True)
