from itertools import combinations

import numpy as np
import pytest

from regmatch.graph import GraphError, build_graph, cut_size, VertexSet
from regmatch.matching import brute_force_max_matching, hopcroft_karp
from regmatch.sampling import SamplingConfig, sample_edges
from regmatch.generators import gen_random_regular
from regmatch.witness import (RelevantPair, boundary_edge_ids,
                              enumerate_minimal_relevant_pairs,
                              extract_hall_violator, minimal_witness_sets,
                              verify_witness_cut_injection, witness_edge_set)

from conftest import complete_bipartite, random_bipartite


def test_relevant_pair_validation():
    with pytest.raises(ValueError):
        RelevantPair("middle", frozenset(), frozenset())
    assert RelevantPair("left", {0, 1}, {0}).is_relevant
    assert not RelevantPair("left", {0}, {0}).is_relevant
    assert RelevantPair("right", {0}, {0, 1}).is_relevant


def test_witness_edge_set_left(k22):
    pair = RelevantPair("left", {0, 1}, {0})
    ws = witness_edge_set(k22, pair)
    # edges from {0,1} avoiding right vertex 0
    expect = {eid for eid in range(k22.m) if int(k22.edge_v[eid]) != 0}
    assert ws.edge_ids == frozenset(expect)


def test_witness_edge_set_right(k22):
    pair = RelevantPair("right", {0}, {0, 1})
    ws = witness_edge_set(k22, pair)
    expect = {eid for eid in range(k22.m) if int(k22.edge_u[eid]) != 0}
    assert ws.edge_ids == frozenset(expect)


def test_witness_edge_set_rejects_irrelevant(k22):
    with pytest.raises(GraphError):
        witness_edge_set(k22, RelevantPair("left", {0}, {0, 1}))


def test_boundary_matches_cut_size(k33):
    pair = RelevantPair("left", {0, 1}, {2})
    ids = boundary_edge_ids(k33, pair)
    assert len(ids) == cut_size(k33, VertexSet(left=pair.a, right=pair.b))


def test_minimal_pairs_k22(k22):
    pairs = enumerate_minimal_relevant_pairs(k22, "left")
    got = {(tuple(sorted(p.a)), tuple(sorted(p.b))) for p in pairs}
    assert got == {((0,), ()), ((1,), ()),
                   ((0, 1), (0,)), ((0, 1), (1,))}
    # the right side mirrors under the U <-> V swap
    rpairs = enumerate_minimal_relevant_pairs(k22, "right")
    rgot = {(tuple(sorted(p.b)), tuple(sorted(p.a))) for p in rpairs}
    assert rgot == got


def test_minimal_pairs_have_tight_cardinality():
    rng = np.random.default_rng(0)
    for _ in range(30):
        g = random_bipartite(rng, max_side=4, density=0.6)
        for side in ("left", "right"):
            for p in enumerate_minimal_relevant_pairs(g, side):
                big, small = (p.a, p.b) if side == "left" else (p.b, p.a)
                assert len(big) == len(small) + 1


def test_enumeration_refuses_large_sides():
    with pytest.raises(GraphError):
        enumerate_minimal_relevant_pairs(complete_bipartite(6, 2), "left")


@pytest.mark.parametrize("seed", range(40))
def test_fast_enumerator_agrees_with_exhaustive(seed):
    g = random_bipartite(np.random.default_rng(seed), max_side=5, density=0.5)
    for side in ("left", "right"):
        oracle = {(p.a, p.b) for p in enumerate_minimal_relevant_pairs(g, side)}
        fast = {(w.pair.a, w.pair.b) for w in minimal_witness_sets(g, side)}
        assert fast == oracle
        for w in minimal_witness_sets(g, side):
            assert w.edge_ids == witness_edge_set(g, w.pair).edge_ids


def test_witness_sets_nonempty_on_pm_graphs():
    # with a perfect matching present, every relevant pair keeps a witness edge
    for seed in range(20):
        g = gen_random_regular(4, 2, seed=seed)
        for side in ("left", "right"):
            for w in minimal_witness_sets(g, side):
                if len(w.pair.a if side == "left" else w.pair.b) > 0:
                    assert len(w.edge_ids) > 0


def test_subgraph_pm_iff_hits_all_witness_sets(k33):
    """Exhaustive: an edge subset of K_{3,3} has a perfect matching exactly
    when it meets every minimal witness set of both sides."""
    wsets = [w.edge_ids for side in ("left", "right")
             for w in minimal_witness_sets(k33, side)]
    m = k33.m
    for mask in range(1 << m):
        kept = [eid for eid in range(m) if (mask >> eid) & 1]
        sub = build_graph(3, 3, [(int(k33.edge_u[e]), int(k33.edge_v[e]))
                                 for e in kept])
        has_pm = brute_force_max_matching(sub).size == 3
        hits_all = all(any(e in ws for e in kept) for ws in wsets)
        assert has_pm == hits_all


def test_extract_hall_violator_basic():
    g = build_graph(2, 2, [(0, 0), (1, 0)])
    m = hopcroft_karp(g)
    a, nbrs = extract_hall_violator(g, m)
    assert a.left == {0, 1} and nbrs.right == {0}


def test_extract_hall_violator_none_when_saturated(k22):
    assert extract_hall_violator(k22, hopcroft_karp(k22)) is None


def test_extract_hall_violator_rejects_non_maximum(k22):
    from regmatch.graph import matching_from_pairs
    with pytest.raises(GraphError, match="not maximum"):
        extract_hall_violator(k22, matching_from_pairs(k22, []))


def test_hall_violator_deficiency_identity():
    rng = np.random.default_rng(5)
    checked = 0
    for seed in range(200):
        g = sample_edges(gen_random_regular(6, 3, seed=seed),
                         SamplingConfig(p=0.4, seed=seed))
        m = hopcroft_karp(g)
        if m.size == g.n_left:
            continue
        a, nbrs = extract_hall_violator(g, m)
        assert len(nbrs.right) < len(a.left)
        assert len(a.left) - len(nbrs.right) == g.n_left - m.size
        checked += 1
    assert checked > 50


def test_injection_requires_perfect_matching():
    g = build_graph(2, 2, [(0, 0), (1, 0)])
    with pytest.raises(GraphError):
        verify_witness_cut_injection(g)


@pytest.mark.parametrize("seed", range(30))
def test_injection_on_random_regular(seed):
    g = gen_random_regular(4, 2, seed=seed)
    assert verify_witness_cut_injection(g).ok


def test_injection_on_complete_graphs(k22, k33):
    assert verify_witness_cut_injection(k22).ok
    assert verify_witness_cut_injection(k33).ok
