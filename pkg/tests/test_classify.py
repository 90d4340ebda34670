import pytest

from helpers import C4, C6, K33, THETA, fixture, path4
from mcbip.classify import (
    check_bounds,
    classify_extremal,
    counting_identities,
    degree_profile,
    e2_is_perfect_matching_of_v2,
    high_degree_forest,
    max_induced_matching,
)
from mcbip.construct import leaf_matching
from mcbip.core import Tree
from mcbip.errors import DegreeTooLow, NotMinimal, PreconditionFailed

# tree whose leaf matching is the 28-vertex H2 fixture
FIG3_TREE = Tree(14, ((0, 9), (1, 9), (2, 10), (3, 10), (4, 9), (4, 10), (4, 11), (5, 10), (6, 11), (7, 11), (8, 11), (8, 12), (8, 13)))


def test_degree_profile_examples():
    p = degree_profile(C4)
    assert (len(p.v2), len(p.e2), len(p.v3)) == (4, 4, 0)
    p = degree_profile(THETA)
    assert (len(p.v2), len(p.e2), len(p.v3), len(p.e3), len(p.e32)) == (6, 3, 2, 0, 6)
    p = degree_profile(K33)
    assert (len(p.v2), len(p.e3)) == (0, 9)


def test_degree_profile_rejects_low_degree():
    with pytest.raises(DegreeTooLow) as info:
        degree_profile(path4())
    assert info.value.witness.index in (0, 1)


@pytest.mark.parametrize("name", ["fig3_halin_leaf_matching", "fig4_minimal_not_leaf_matching", "fig5a_h0_member", "theta"])
def test_profile_partition_invariants(name):
    g = fixture(name)
    p = degree_profile(g)
    assert p.v2 | p.v3 == set(g.vertices()) and not p.v2 & p.v3
    assert p.e2 | p.e3 | p.e32 == set(range(g.m))
    assert len(p.e2) + len(p.e3) + len(p.e32) == g.m
    boundary_v3 = {e for e in range(g.m) if len(set(g.ends(e)) & p.v3) == 1}
    assert p.e32 == boundary_v3


def test_theta_classification():
    rep = classify_extremal(THETA)
    assert all(rep.as_dict().values())
    assert set(rep.slacks.values()) == {0}
    assert (rep.n, rep.m, rep.v2, rep.e2, rep.v3, rep.e3, rep.e32) == (8, 9, 6, 3, 2, 0, 6)


def test_cycles():
    rep = classify_extremal(C4)
    assert rep.as_dict() == {"h0": False, "h1": False, "h2": True, "h3": True, "h4": False}
    rep = classify_extremal(C6)
    assert rep.h4 and not rep.h2


def test_non_minimal_is_refused():
    with pytest.raises(NotMinimal):
        classify_extremal(K33)
    with pytest.raises(NotMinimal):
        classify_extremal(path4())
    with pytest.raises(NotMinimal):
        check_bounds(K33)


def test_bounds_theta_tight():
    rep = check_bounds(THETA)
    assert rep.all_hold
    assert all(b.slack == 0 for b in rep.bounds)
    assert len(rep.induced_matching) >= THETA.m - THETA.n + 2


def test_bounds_c4_exemptions():
    rep = check_bounds(C4)
    assert rep["v2_lower"].slack == 0
    assert rep["size_upper"].exempt and rep["size_upper"].slack < 0
    assert rep.all_hold


def test_fig5a_is_tight_for_e2():
    g = fixture("fig5a_h0_member")
    rep = check_bounds(g)
    assert rep["e2_lower"].slack == 0
    assert len(degree_profile(g).e2) == g.m - g.n + 2 == 6


def test_induced_matching_search():
    # a matching of all 2-edges of THETA is induced
    p = degree_profile(THETA)
    assert len(max_induced_matching(THETA, p.e2)) == 3
    # opposite edges of C6 form an induced matching, three edges cannot
    assert len(max_induced_matching(C6, range(C6.m))) == 2


def test_counting_identities():
    assert counting_identities(THETA).all_hold
    vals = counting_identities(THETA).values
    assert vals["v3"] == (2, 2) and vals["e32"] == (6, 6) and vals["e3"] == (0, 0)
    g = leaf_matching(FIG3_TREE)[0]
    assert counting_identities(g).all_hold
    with pytest.raises(PreconditionFailed):
        counting_identities(C4)


def test_fig3_tree_and_fixture_agree():
    from mcbip.core import is_isomorphic

    assert is_isomorphic(leaf_matching(FIG3_TREE)[0], fixture("fig3_halin_leaf_matching"))


def test_e2_lemma_and_forest():
    for name in ("fig3_halin_leaf_matching", "fig8b_h2_retract", "fig9b_h4_retract", "theta"):
        g = fixture(name)
        assert e2_is_perfect_matching_of_v2(g)
        assert high_degree_forest(g)
    assert not high_degree_forest(K33)
