from fractions import Fraction

import numpy as np
import pytest

from regmatch.decomposition import (alpha, brute_force_min_cut, decompose,
                                    smallest_low_cut_subset,
                                    verify_decomposition)
from regmatch.generators import (disjoint_union, gen_random_regular,
                                 gen_random_regular_simple)
from regmatch.graph import GraphError, build_graph, cut_size

from conftest import complete_bipartite


def two_k33():
    return disjoint_union(complete_bipartite(3, 3), complete_bipartite(3, 3))


def test_alpha_exact():
    assert alpha(6, 3) == Fraction(9, 24) == Fraction(3, 8)
    assert alpha(4096, 2048) == Fraction(2048 * 2048, 4 * 4096)
    with pytest.raises(GraphError):
        alpha(0, 3)


def test_brute_force_min_cut():
    assert brute_force_min_cut(complete_bipartite(3, 3)) == 3
    assert brute_force_min_cut(two_k33()) == 0
    path = build_graph(2, 2, [(0, 0), (1, 0), (1, 1)])
    assert brute_force_min_cut(path) == 1
    with pytest.raises(GraphError):
        brute_force_min_cut(complete_bipartite(13, 13))


def test_smallest_low_cut_subset_picks_component():
    g = two_k33()
    s = smallest_low_cut_subset(g, 2 * alpha(6, 3))  # threshold 3/4 < 1
    # both components qualify with cut 0; lexicographic tie-break takes the
    # one containing left vertex 0
    assert s.left == {0, 1, 2} and s.right == {0, 1, 2}


def test_smallest_low_cut_subset_none_when_expander():
    assert smallest_low_cut_subset(complete_bipartite(3, 3), Fraction(3, 4)) is None


def test_smallest_prefers_fewest_vertices():
    # pendant structure: isolating left vertex 1 cuts a single edge
    g = build_graph(2, 2, [(0, 0), (0, 1), (1, 1)])
    s = smallest_low_cut_subset(g, Fraction(1))
    assert len(s) == 1


def test_decompose_two_components():
    r = decompose(two_k33())
    assert len(r.pieces) == 2
    assert r.boundary_counts == [0]
    assert r.alpha == Fraction(3, 8)
    assert r.residual_is_piece
    assert verify_decomposition(two_k33(), r).ok


def test_decompose_expander_single_piece(k44):
    r = decompose(k44)
    assert len(r.pieces) == 1
    assert r.boundary_counts == []
    assert verify_decomposition(k44, r).ok


def test_decompose_perfect_matching_graph():
    g = build_graph(4, 4, [(i, i) for i in range(4)])
    r = decompose(g)
    assert len(r.pieces) == 4
    assert all(len(p.vertex_set) == 2 for p in r.pieces)
    assert verify_decomposition(g, r).ok


def test_decompose_requires_regular():
    with pytest.raises(GraphError):
        decompose(build_graph(2, 2, [(0, 0), (0, 1), (1, 0)]))


def test_decompose_refuses_large():
    with pytest.raises(GraphError):
        decompose(gen_random_regular(16, 2, seed=0))


def test_verify_detects_missing_piece():
    r = decompose(two_k33())
    r.pieces.pop()
    report = verify_decomposition(two_k33(), r)
    assert not report.ok
    assert any("cover" in v for v in report.violations)


def test_verify_detects_bad_alpha():
    g = two_k33()
    r = decompose(g)
    r.alpha = Fraction(100)  # min cut of each K_{3,3} piece is 3 < 100
    assert not verify_decomposition(g, r).ok


def test_decompose_deterministic():
    g = disjoint_union(complete_bipartite(2, 2), complete_bipartite(2, 2))
    a = decompose(g)
    b = decompose(g)
    assert [p.vertex_set for p in a.pieces] == [p.vertex_set for p in b.pieces]


@pytest.mark.parametrize("seed", range(25))
def test_decompose_properties_random_simple(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 7))
    d = int(rng.integers(1, n + 1))
    g = gen_random_regular_simple(n, d, seed=seed)
    r = decompose(g)
    report = verify_decomposition(g, r)
    assert report.ok, report.violations
    # pieces partition both sides
    left = sorted(i for p in r.pieces for i in p.vertex_set.left)
    right = sorted(j for p in r.pieces for j in p.vertex_set.right)
    assert left == list(range(n)) and right == list(range(n))
    # extracted boundaries match the recorded counts in number
    assert len(r.boundary_counts) == len(r.pieces) - (1 if r.residual_is_piece else 0)
