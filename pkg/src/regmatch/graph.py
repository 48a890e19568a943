"""Bipartite multigraph core: construction, cuts, matchings, text I/O.

Vertices are dense 0-based indices per side.  Edge identities are stable:
edge i of the edge list is the same edge for the graph's lifetime, and
parallel edges are distinct edges.  Graphs are immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np


class GraphError(ValueError):
    """Invalid graph construction or a graph-shaped precondition failure."""


@dataclass(frozen=True)
class VertexSet:
    """Side-tagged vertex subset of U ∪ V."""

    left: frozenset = frozenset()
    right: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "left", frozenset(self.left))
        object.__setattr__(self, "right", frozenset(self.right))

    def __len__(self):
        return len(self.left) + len(self.right)


class BipartiteMultigraph:
    """CSR-backed bipartite multigraph with stable edge identities.

    ``edge_origin`` optionally maps each edge back to an edge id of a host
    graph (set by sampling and induced-subgraph construction).
    """

    __slots__ = (
        "n_left", "n_right", "edge_u", "edge_v", "edge_origin",
        "left_indptr", "left_adj", "left_eid",
        "right_indptr", "right_adj", "right_eid",
    )

    def __init__(self, n_left, n_right, edge_u, edge_v, edge_origin=None):
        edge_u = np.ascontiguousarray(edge_u, dtype=np.int64)
        edge_v = np.ascontiguousarray(edge_v, dtype=np.int64)
        if edge_u.shape != edge_v.shape or edge_u.ndim != 1:
            raise GraphError("edge endpoint arrays must be 1-d and equal length")
        self.n_left = int(n_left)
        self.n_right = int(n_right)
        self.edge_u = edge_u
        self.edge_v = edge_v
        self.edge_origin = (
            None if edge_origin is None
            else np.ascontiguousarray(edge_origin, dtype=np.int64)
        )
        self._build_csr()
        self.edge_u.setflags(write=False)
        self.edge_v.setflags(write=False)

    def _build_csr(self):
        m = self.edge_u.shape[0]
        order = np.argsort(self.edge_u, kind="stable")
        self.left_eid = order
        self.left_adj = self.edge_v[order]
        counts = np.bincount(self.edge_u, minlength=self.n_left)
        self.left_indptr = np.concatenate(([0], np.cumsum(counts)))
        order = np.argsort(self.edge_v, kind="stable")
        self.right_eid = order
        self.right_adj = self.edge_u[order]
        counts = np.bincount(self.edge_v, minlength=self.n_right)
        self.right_indptr = np.concatenate(([0], np.cumsum(counts)))

    @property
    def m(self) -> int:
        return self.edge_u.shape[0]

    def left_degrees(self) -> np.ndarray:
        return np.diff(self.left_indptr)

    def right_degrees(self) -> np.ndarray:
        return np.diff(self.right_indptr)

    def left_neighbors(self, u: int) -> np.ndarray:
        return self.left_adj[self.left_indptr[u]:self.left_indptr[u + 1]]

    def right_neighbors(self, v: int) -> np.ndarray:
        return self.right_adj[self.right_indptr[v]:self.right_indptr[v + 1]]

    def edges(self):
        """Iterate (u, v) pairs in edge-id order."""
        return zip(self.edge_u.tolist(), self.edge_v.tolist())

    def __repr__(self):
        return (f"BipartiteMultigraph(n_left={self.n_left}, "
                f"n_right={self.n_right}, m={self.m})")


@dataclass
class Matching:
    """Vertex-disjoint edge set given by mutually inverse partner maps.

    Unmatched vertices carry partner -1.
    """

    left_partner: np.ndarray
    right_partner: np.ndarray

    @property
    def size(self) -> int:
        return int(np.count_nonzero(self.left_partner >= 0))

    def pairs(self):
        """Matched (u, v) pairs in increasing u order."""
        us = np.nonzero(self.left_partner >= 0)[0]
        return [(int(u), int(self.left_partner[u])) for u in us]


def build_graph(n_left: int, n_right: int,
                edges: Sequence[Tuple[int, int]]) -> BipartiteMultigraph:
    """Construct a graph, validating every endpoint index."""
    if n_left < 0 or n_right < 0:
        raise GraphError("vertex counts must be nonnegative")
    eu = np.array([e[0] for e in edges], dtype=np.int64)
    ev = np.array([e[1] for e in edges], dtype=np.int64)
    bad = np.nonzero((eu < 0) | (eu >= n_left) | (ev < 0) | (ev >= n_right))[0]
    if bad.size:
        i = int(bad[0])
        raise GraphError(
            f"edge {i} = ({int(eu[i])}, {int(ev[i])}): index out of range "
            f"for sides ({n_left}, {n_right})")
    return BipartiteMultigraph(n_left, n_right, eu, ev)


def regular_degree(g: BipartiteMultigraph) -> Optional[int]:
    """The common degree d if the graph is d-regular on both sides, else None."""
    if g.n_left == 0 and g.n_right == 0:
        return 0
    degs_l = g.left_degrees()
    degs_r = g.right_degrees()
    if degs_l.size == 0 or degs_r.size == 0:
        return None
    d = int(degs_l[0])
    if np.all(degs_l == d) and np.all(degs_r == d):
        return d
    return None


def cut_size(g: BipartiteMultigraph, s: VertexSet) -> int:
    """Number of edges with exactly one endpoint in s, counting multiplicity."""
    in_l = np.zeros(g.n_left, dtype=bool)
    in_r = np.zeros(g.n_right, dtype=bool)
    if s.left:
        idx = np.fromiter(s.left, dtype=np.int64)
        if idx.size and (idx.min() < 0 or idx.max() >= g.n_left):
            raise GraphError("vertex set has left index out of range")
        in_l[idx] = True
    if s.right:
        idx = np.fromiter(s.right, dtype=np.int64)
        if idx.size and (idx.min() < 0 or idx.max() >= g.n_right):
            raise GraphError("vertex set has right index out of range")
        in_r[idx] = True
    return int(np.count_nonzero(in_l[g.edge_u] != in_r[g.edge_v]))


def complement(g: BipartiteMultigraph, s: VertexSet) -> VertexSet:
    return VertexSet(
        left=frozenset(range(g.n_left)) - s.left,
        right=frozenset(range(g.n_right)) - s.right,
    )


def matching_from_pairs(g: BipartiteMultigraph,
                        pairs: Iterable[Tuple[int, int]]) -> Matching:
    left = np.full(g.n_left, -1, dtype=np.int64)
    right = np.full(g.n_right, -1, dtype=np.int64)
    for u, v in pairs:
        if not (0 <= u < g.n_left and 0 <= v < g.n_right):
            raise GraphError(f"matching pair ({u}, {v}) out of range")
        if left[u] >= 0 or right[v] >= 0:
            raise GraphError(f"matching pair ({u}, {v}) reuses a vertex")
        left[u] = v
        right[v] = u
    return Matching(left, right)


def validate_perfect_matching(g: BipartiteMultigraph, m: Matching) -> bool:
    """True iff m matches every vertex and every matched pair is a g-edge."""
    if g.n_left != g.n_right:
        raise GraphError("perfect matching requires a square graph")
    if np.any(m.left_partner < 0) or np.any(m.right_partner < 0):
        return False
    us = np.arange(g.n_left)
    if np.any(m.right_partner[m.left_partner[us]] != us):
        return False
    edge_set = set(zip(g.edge_u.tolist(), g.edge_v.tolist()))
    return all((int(u), int(m.left_partner[u])) in edge_set for u in us)


def induced_subgraph(g: BipartiteMultigraph, s: VertexSet):
    """Subgraph induced by s, with dense reindexed sides.

    Returns (subgraph, left_ids, right_ids): sorted original indices of the
    kept vertices.  The subgraph's edge_origin maps back to g's edge ids.
    """
    left_ids = np.array(sorted(s.left), dtype=np.int64)
    right_ids = np.array(sorted(s.right), dtype=np.int64)
    in_l = np.zeros(g.n_left, dtype=bool)
    in_r = np.zeros(g.n_right, dtype=bool)
    in_l[left_ids] = True
    in_r[right_ids] = True
    keep = in_l[g.edge_u] & in_r[g.edge_v]
    new_l = np.full(g.n_left, -1, dtype=np.int64)
    new_r = np.full(g.n_right, -1, dtype=np.int64)
    new_l[left_ids] = np.arange(left_ids.size)
    new_r[right_ids] = np.arange(right_ids.size)
    origin = np.nonzero(keep)[0]
    if g.edge_origin is not None:
        origin = g.edge_origin[origin]
    sub = BipartiteMultigraph(
        left_ids.size, right_ids.size,
        new_l[g.edge_u[keep]], new_r[g.edge_v[keep]],
        edge_origin=origin,
    )
    return sub, left_ids, right_ids


def write_graph(g: BipartiteMultigraph, path) -> None:
    """Write the text graph format (header + one `u v` line per edge)."""
    with open(path, "w") as fh:
        fh.write(f"bipartite {g.n_left} {g.n_right} {g.m}\n")
        for u, v in zip(g.edge_u.tolist(), g.edge_v.tolist()):
            fh.write(f"{u} {v}\n")


def read_graph(path) -> BipartiteMultigraph:
    """Read the text graph format; `#`-prefixed comment lines are ignored."""
    lines = []
    with open(path) as fh:
        for raw in fh:
            line = raw.strip()
            if line and not line.startswith("#"):
                lines.append(line)
    if not lines:
        raise GraphError(f"{path}: empty graph file")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "bipartite":
        raise GraphError(f"{path}: bad header {lines[0]!r}")
    n_left, n_right, m = int(head[1]), int(head[2]), int(head[3])
    if len(lines) - 1 != m:
        raise GraphError(f"{path}: header promises {m} edges, found {len(lines) - 1}")
    edges = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"{path}: bad edge line {line!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return build_graph(n_left, n_right, edges)
