import pytest

from helpers import C4, C6, FIG13_TREE, K33, THETA, complete, cycle
from mcbip.construct import (
    J,
    double_star_graph,
    k_leaf_matching,
    k_leaf_matching_counts,
    leaf_matching,
    replace_edge_with_J,
)
from mcbip.core import Tree, components, is_isomorphic, remove
from mcbip.errors import BadParams, DegreeMismatch, TrivialTree
from mcbip.kext import is_k_extendable, nontrivial_cuts_of_size
from mcbip.matching import is_minimal_mc
from mcbip.trees import enumerate_trees, tree_predicates


def test_leaf_matching_examples():
    assert is_isomorphic(leaf_matching(Tree.path(2))[0], C4)
    assert is_isomorphic(leaf_matching(Tree.star(3))[0], THETA)
    for p in range(2, 8):
        g = leaf_matching(Tree.star(p))[0]
        assert (g.n, g.m) == (2 * (p + 1), 3 * p)
    with pytest.raises(TrivialTree):
        leaf_matching(Tree(1, ()))


def test_witness_replays():
    for t in (Tree.path(5), Tree.star(4), FIG13_TREE):
        for k in (1, 2):
            g, w = k_leaf_matching(t, k)
            assert w.replay() == g
            assert len(w.parts["H"]) == k
            assert len(w.pairing) == len(t.leaves)


def test_leaf_matching_is_minimal_for_all_small_trees():
    for t in enumerate_trees(9, min_n=2):
        g = leaf_matching(t)[0]
        assert is_minimal_mc(g)


def test_counts_formula():
    for t in enumerate_trees(8, min_n=2):
        for k in (1, 2, 3):
            g = k_leaf_matching(t, k)[0]
            assert (g.n, g.m) == k_leaf_matching_counts(t, k)
            assert g.a_count == g.b_count


def test_k_leaf_matching_of_star_is_J():
    g = k_leaf_matching(Tree.star(4), 3)[0]
    assert (g.n, g.m) == (14, 28)
    assert is_isomorphic(g, J(3, 4))
    for p in range(1, 5):
        for r in range(max(p, 2), 6):
            assert is_isomorphic(k_leaf_matching(Tree.star(r), p)[0], J(p, r))


def test_k_equal_one_is_leaf_matching():
    for t in enumerate_trees(7, min_n=2):
        assert k_leaf_matching(t, 1)[0] == leaf_matching(t)[0]


def test_fig13_product():
    g = k_leaf_matching(FIG13_TREE, 2)[0]
    assert (g.n, g.m) == (22, 33)
    assert is_k_extendable(g, 2, engine="hall")


def test_J_examples():
    g = J(0, 3)
    assert (g.n, g.m) == (6, 3) and len(components(g)) == 3
    assert is_isomorphic(J(1, 2), C6)
    assert is_isomorphic(J(1, 1), C4)
    g = J(2, 4)
    assert (g.n, g.m) == (12, 20)
    with pytest.raises(BadParams):
        J(3, 2)


def test_double_star_examples():
    g = double_star_graph(4, 5, 2)
    assert (g.n, g.m) == (22, 39)
    assert is_isomorphic(g, k_leaf_matching(Tree.double_star(4, 5), 2)[0])
    assert is_isomorphic(double_star_graph(2, 2, 1), cycle(8))
    with pytest.raises(BadParams):
        double_star_graph(1, 3, 1)


def test_double_star_matches_k_leaf_matching():
    for p in range(2, 6):
        for q in range(2, 6):
            for k in range(1, 4):
                ref = k_leaf_matching(Tree.double_star(p, q), k)[0]
                assert is_isomorphic(double_star_graph(p, q, k), ref), (p, q, k)


def test_replace_edge_in_c6():
    g = replace_edge_with_J(C6, 0, 1, 2)
    # three edges at u or v go, J(1, 2) = C6 and two attaching edges come in
    assert (g.n, g.m) == (10, 11)
    assert is_k_extendable(g, 1)
    assert is_minimal_mc(g)


def test_replace_edge_fig17_instance():
    k44 = complete(4, 4)
    g = replace_edge_with_J(k44, 0, 3, 4)
    assert g.n == k44.n - 2 + 14 == 20
    assert g.m == k44.m - 7 + 28 + 6
    assert is_k_extendable(k44, 3, engine="hall")
    assert is_k_extendable(g, 3, engine="hall")


def test_replace_edge_preserves_extendability_on_products():
    # short stars K1,3 give products that are not 2-extendable, so start at five vertices
    for t in enumerate_trees(7, ("r_tree", 3), min_n=5):
        g = k_leaf_matching(t, 2)[0]
        assert is_k_extendable(g, 2, engine="hall")
        deg = g.degrees()
        e = next(e for e in range(g.m) if all(deg[x] == 3 for x in g.ends(e)))
        for r in (2, 3):
            assert is_k_extendable(replace_edge_with_J(g, e, 2, r), 2, engine="hall")


def test_replace_edge_errors():
    with pytest.raises(DegreeMismatch):
        replace_edge_with_J(K33, 0, 1, 2)
    with pytest.raises(BadParams):
        replace_edge_with_J(C6, 0, 1, 1)


def test_copies_of_tree_edges_form_2k_cuts():
    for k in (1, 2, 3):
        for t in enumerate_trees(7, ("r_tree", k + 1), min_n=3):
            if tree_predicates(t).is_star and t.n - 1 < 2 * k:
                continue
            g, w = k_leaf_matching(t, k)
            for part in ("H", "H'"):
                for u, v in t.edges:
                    ids = set()
                    for mp in w.parts[part]:
                        ids.update(g.edges_between(mp[u], mp[v]))
                    assert len(ids) == k
                    mirror = "H'" if part == "H" else "H"
                    for mp in w.parts[mirror]:
                        ids.update(g.edges_between(mp[u], mp[v]))
                    assert len(ids) == 2 * k
                    rest = remove(g, edges=ids).graph
                    assert len(components(rest)) == 2


def test_cut_search_finds_copy_cuts_on_J():
    g, w = k_leaf_matching(Tree.star(4), 2)
    cuts = set(nontrivial_cuts_of_size(g, 4))
    for u, v in Tree.star(4).edges:
        ids = frozenset(e for part in ("H", "H'") for mp in w.parts[part] for e in g.edges_between(mp[u], mp[v]))
        assert ids in cuts
