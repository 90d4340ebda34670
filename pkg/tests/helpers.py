"""Small graphs, fixture loading and hypothesis strategies shared by the tests."""

from __future__ import annotations

import random
from pathlib import Path

from hypothesis import strategies as st

from mcbip.construct import leaf_matching
from mcbip.core import BipGraph, Tree, is_connected
from mcbip.graphio import read_graph

FIXTURES = Path(__file__).parent / "fixtures"


def fixture(name: str) -> BipGraph:
    return read_graph(FIXTURES / f"{name}.bip")


def cycle(n: int) -> BipGraph:
    """Even cycle A0 B0 A1 B1 ... on ``n`` vertices."""
    h = n // 2
    edges = [(i, i) for i in range(h)] + [((i + 1) % h, i) for i in range(h)]
    return BipGraph(h, h, tuple(edges))


def complete(p: int, q: int) -> BipGraph:
    return BipGraph(p, q, tuple((i, j) for i in range(p) for j in range(q)))


def path4() -> BipGraph:
    """a0 - b0 - a1 - b1."""
    return BipGraph(2, 2, ((0, 0), (1, 0), (1, 1)))


C4 = cycle(4)
C6 = cycle(6)
C8 = cycle(8)
K33 = complete(3, 3)
K13 = complete(1, 3)
THETA = leaf_matching(Tree.star(3))[0]

# 8-vertex cubic Halin tree drawn for the 2-leaf matching example
FIG13_TREE = Tree(8, ((0, 1), (0, 2), (0, 3), (2, 4), (2, 5), (3, 6), (3, 7)))


def random_graph(rng: random.Random, a: int, b: int, p: float) -> BipGraph:
    return BipGraph(a, b, tuple((i, j) for i in range(a) for j in range(b) if rng.random() < p))


@st.composite
def bip_graphs(draw, max_side: int = 5, min_side: int = 1, multi: bool = False) -> BipGraph:
    a = draw(st.integers(min_side, max_side))
    b = draw(st.integers(min_side, max_side))
    pairs = [(i, j) for i in range(a) for j in range(b)]
    chosen = draw(st.lists(st.sampled_from(pairs), max_size=3 * len(pairs), unique=not multi))
    return BipGraph(a, b, tuple(chosen))


@st.composite
def balanced_graphs(draw, max_side: int = 5, min_side: int = 2, multi: bool = False) -> BipGraph:
    a = draw(st.integers(min_side, max_side))
    pairs = [(i, j) for i in range(a) for j in range(a)]
    chosen = draw(st.lists(st.sampled_from(pairs), max_size=3 * len(pairs), unique=not multi))
    return BipGraph(a, a, tuple(sorted(chosen)))


@st.composite
def mc_graphs(draw, max_side: int = 5, min_side: int = 2) -> BipGraph:
    """Union of random perfect matchings, so every edge is allowed; a Hamiltonian cycle joins components."""
    a = draw(st.integers(min_side, max_side))
    perms = draw(st.lists(st.permutations(range(a)), min_size=1, max_size=4))
    edges = {(i, p[i]) for p in perms for i in range(a)}
    g = BipGraph(a, a, tuple(sorted(edges)))
    if not is_connected(g):
        edges |= {(i, i) for i in range(a)} | {(i, (i + 1) % a) for i in range(a)}
        g = BipGraph(a, a, tuple(sorted(edges)))
    return g


@st.composite
def trees(draw, max_n: int = 12, min_n: int = 2) -> Tree:
    """Random labelled tree from a Pruefer-like attachment sequence."""
    n = draw(st.integers(min_n, max_n))
    parents = [draw(st.integers(0, i - 1)) for i in range(1, n)]
    return Tree(n, tuple((p, i) for i, p in zip(range(1, n), parents)))


# --- transformation-calculus generators -------------------------------------------


def two_edges(g: BipGraph) -> list[int]:
    """Ids of simple edges whose ends both have degree two."""
    deg = g.degrees()
    out = []
    for e in range(g.m):
        x, y = g.ends(e)
        if deg[x] == deg[y] == 2 and len(g.edges_between(x, y)) == 1:
            out.append(e)
    return out


def is_h2(g: BipGraph) -> bool:
    from mcbip.classify import degree_classes
    from mcbip.matching import is_minimal_mc

    if not is_minimal_mc(g):
        return False
    return len(degree_classes(g).v2) == 2 * (g.m - g.n + 2)


def splice_pool() -> list[BipGraph]:
    """Small graphs with a 2-edge, matching covered or not."""
    from mcbip.census import enumerate_bipartite
    from mcbip.trees import enumerate_trees

    graphs = [g for g in enumerate_bipartite(8) if two_edges(g)]
    graphs += [leaf_matching(t)[0] for t in enumerate_trees(6, min_n=2)]
    return graphs


def halin_products(max_n: int = 10) -> list[BipGraph]:
    from mcbip.trees import enumerate_trees

    return [leaf_matching(t)[0] for t in enumerate_trees(max_n, "halin", min_n=2)]


def random_split(g: BipGraph, rng: random.Random, restricted: bool):
    """A random vertex with a random partition of its edges, or None if nothing qualifies."""
    cands = [v for v in g.vertices() if g.degree(v) >= (4 if restricted else 2)]
    if not cands:
        return None
    v = rng.choice(cands)
    inc = list(g.incident(v))
    rng.shuffle(inc)
    lo = 2 if restricted else 1
    cut = rng.randint(lo, len(inc) - lo)
    return v, inc[:cut], inc[cut:]


def h0_members(products: list[BipGraph], rng: random.Random, count: int) -> list[BipGraph]:
    """Restricted bisplits of Halin leaf matchings: each keeps its retract.

    C4 is skipped since the 2-edge extremal class excludes it.
    """
    from mcbip.transform import bisplit

    products = [g for g in products if g.n > 4]
    out = []
    while len(out) < count:
        g = rng.choice(products)
        for _ in range(rng.randint(1, 3)):
            pick = random_split(g, rng, True)
            if pick is None:
                break
            g = bisplit(g, *pick, restricted=True).graph
        out.append(g)
    return out


def spliced_pairs(pool: list[BipGraph], rng: random.Random, count: int):
    """Yield ``(g1, g2, splice)`` for random pairs with random 2-edges."""
    from mcbip.transform import SpliceSpec, two_edge_splice

    for _ in range(count):
        g1, g2 = rng.choice(pool), rng.choice(pool)
        e1, e2 = rng.choice(two_edges(g1)), rng.choice(two_edges(g2))
        yield g1, g2, two_edge_splice(SpliceSpec(g1, e1, g2, e2))


def first_shore(g1: BipGraph) -> set:
    """Vertices of a splice that came from ``g1`` (they come first in each class)."""
    from mcbip.core import A, B, Vertex

    return {Vertex(A, i) for i in range(g1.a_count - 1)} | {Vertex(B, j) for j in range(g1.b_count - 1)}
