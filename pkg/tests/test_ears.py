from dataclasses import replace

import pytest

from helpers import C4, C6, K33, THETA, fixture, path4
from mcbip.census import enumerate_bipartite
from mcbip.core import BipGraph, edge_subgraph, induced_subgraph, remove
from mcbip.ears import Ear, find_ear_decomposition, find_ear_decomposition_through, verify_ear_decomposition
from mcbip.errors import NotMatchingCovered, PreconditionFailed
from mcbip.matching import conformal_cycle_through, is_matching_covered, is_minimal_mc


@pytest.fixture(scope="module")
def mc_graphs():
    return [g for g in enumerate_bipartite(10) if is_matching_covered(g)]


def test_c4_has_no_ears():
    dec = find_ear_decomposition(C4)
    assert len(dec.cycle.vertices) == 4 and dec.ear_count == 0
    assert verify_ear_decomposition(C4, dec) == []


def test_fig1_has_four_ears():
    g = fixture("fig1_ear_example")
    dec = find_ear_decomposition(g)
    assert dec.ear_count == g.m - g.n == 4
    assert verify_ear_decomposition(g, dec) == []


def test_theta_one_ear_of_length_three():
    dec = find_ear_decomposition(THETA)
    assert len(dec.cycle.vertices) == 6
    assert [e.length for e in dec.ears] == [3]


def test_not_matching_covered_is_refused():
    with pytest.raises(NotMatchingCovered):
        find_ear_decomposition(path4())


def test_through_theta_central_cycle():
    centre = [v for v, d in THETA.degrees().items() if d == 3][0]
    cyc = conformal_cycle_through(THETA, centre, THETA.incident(centre)[0])
    dec = find_ear_decomposition_through(THETA, cyc.vertices, cyc.edge_ids)
    assert set(dec.cycle.edge_ids) == set(cyc.edge_ids)
    assert verify_ear_decomposition(THETA, dec) == []


def test_through_k33_four_cycle():
    u = next(iter(K33.vertices()))
    cyc = conformal_cycle_through(K33, u, K33.incident(u)[0])
    dec = find_ear_decomposition_through(K33, cyc.vertices, cyc.edge_ids)
    assert dec.ear_count == 3
    assert dec.prefix_edges(0) == frozenset(cyc.edge_ids)
    assert verify_ear_decomposition(K33, dec) == []


def test_through_whole_c6():
    dec = find_ear_decomposition_through(C6, list(C6.vertices()), range(C6.m))
    assert dec.ear_count == 0


def test_through_rejects_bad_subgraphs():
    with pytest.raises(PreconditionFailed, match="matching covered"):
        find_ear_decomposition_through(K33, None, [0])
    # the 4-cycle A2 B2 A3 B3 is matching covered but deleting it strands A0, A1
    g = BipGraph(4, 4, ((0, 2), (0, 3), (1, 1), (1, 3), (2, 0), (2, 2), (2, 3), (3, 0), (3, 1), (3, 2), (3, 3)))
    assert is_matching_covered(g)
    with pytest.raises(PreconditionFailed, match="conformal"):
        find_ear_decomposition_through(g, None, [5, 6, 9, 10])


def test_verifier_accepts_reversed_ear_and_flags_even_ear():
    dec = find_ear_decomposition(THETA)
    ear = dec.ears[0]
    flipped = replace(dec, ears=(Ear(ear.vertices[::-1], ear.edge_ids[::-1]),))
    assert verify_ear_decomposition(THETA, flipped) == []
    two = Ear(ear.vertices[:3], ear.edge_ids[:2])
    bad = replace(dec, ears=(two,))
    problems = verify_ear_decomposition(THETA, bad)
    assert any("even length" in p for p in problems)


def test_all_small_matching_covered_graphs(mc_graphs):
    assert len(mc_graphs) > 400
    for g in mc_graphs:
        dec = find_ear_decomposition(g)
        assert dec.ear_count == g.m - g.n
        assert verify_ear_decomposition(g, dec, check_prefixes=g.n <= 8) == []


def test_trivial_ears_are_removable(mc_graphs):
    for g in mc_graphs:
        for ear in find_ear_decomposition(g).ears:
            if ear.length == 1:
                assert is_matching_covered(remove(g, edges=ear.edge_ids).graph)


def test_prefixes_of_minimal_graphs_are_induced(mc_graphs):
    checked = 0
    for g in mc_graphs:
        if not is_minimal_mc(g):
            continue
        dec = find_ear_decomposition(g)
        for i in range(dec.ear_count + 1):
            verts = dec.prefix_vertices(i)
            assert induced_subgraph(g, verts).graph.m == edge_subgraph(g, dec.prefix_edges(i)).graph.m
        checked += 1
    assert checked >= 5
