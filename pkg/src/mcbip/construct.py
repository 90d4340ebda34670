"""Generators for leaf matchings, k-leaf matchings, J(p, r), double stars and edge replacement.

Products of a tree get their bipartition from a proper 2-colouring of the
tree (vertex 0 coloured A) on the first side and the inverted colouring on
the mirror side, which is what makes the leaf-pairing edges cross classes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import A, B, BipGraph, Tree, Vertex, remove
from .errors import BadParams, DegreeMismatch, TrivialTree
from .trees import enumerate_trees

__all__ = [
    "ConstructionWitness",
    "leaf_matching",
    "k_leaf_matching",
    "J",
    "double_star_graph",
    "replace_edge_with_J",
    "enumerate_trees",
    "k_leaf_matching_counts",
]


@dataclass(frozen=True)
class ConstructionWitness:
    """How a graph was built.

    ``parts`` maps a part name to a list of dicts, one per copy, sending tree
    vertices to host vertices; for k-leaf matchings ``parts["H"][i]`` is the
    i-th copy inside ``H`` (leaves are shared between copies) and
    ``parts["H'"]`` likewise for the mirror side.  ``pairing`` lists the ids
    of the leaf-pairing edges.
    """

    kind: str
    params: dict
    parts: dict = field(default_factory=dict)
    pairing: tuple = ()

    def replay(self) -> BipGraph:
        if self.kind in ("leaf_matching", "k_leaf_matching"):
            return k_leaf_matching(self.params["tree"], self.params["k"])[0]
        raise BadParams(f"cannot replay {self.kind!r}")


def k_leaf_matching_counts(t: Tree, k: int) -> tuple[int, int]:
    """Order and size of the k-leaf matching of ``t``: ``2(|L| + k|V-L|)`` and ``2k|E| + |L|``."""
    leaves = len(t.leaves)
    return 2 * (leaves + k * (t.n - leaves)), 2 * k * (t.n - 1) + leaves


def k_leaf_matching(t: Tree, k: int) -> tuple[BipGraph, ConstructionWitness]:
    """``k`` copies of ``t`` with corresponding leaves fused, a mirror copy, and the leaf pairing."""
    if t.n < 2:
        raise TrivialTree("the tree must have at least two vertices")
    if k < 1:
        raise BadParams("k must be at least 1")
    color = t.two_coloring()
    leaves = set(t.leaves)
    counts = {A: 0, B: 0}

    def place(side: str) -> Vertex:
        v = Vertex(side, counts[side])
        counts[side] += 1
        return v

    copies = {"H": [dict() for _ in range(k)], "H'": [dict() for _ in range(k)]}

    def fill(part: str, side: str, want: int) -> None:
        for v in range(t.n):
            if color[v] != want:
                continue
            if v in leaves:
                x = place(side)
                for i in range(k):
                    copies[part][i][v] = x
            else:
                for i in range(k):
                    copies[part][i][v] = place(side)

    # class A: colour-0 vertices of H, then colour-1 vertices of H'; class B the rest
    fill("H", A, 0)
    fill("H'", A, 1)
    fill("H", B, 1)
    fill("H'", B, 0)
    edges = []
    for part in ("H", "H'"):
        for i in range(k):
            mp = copies[part][i]
            for u, v in t.edges:
                x, y = mp[u], mp[v]
                if x.side == B:
                    x, y = y, x
                edges.append((x.index, y.index))
    pairing = []
    for leaf in sorted(leaves):
        x, y = copies["H"][0][leaf], copies["H'"][0][leaf]
        if x.side == B:
            x, y = y, x
        pairing.append(len(edges))
        edges.append((x.index, y.index))
    g = BipGraph(counts[A], counts[B], tuple(edges))
    kind = "leaf_matching" if k == 1 else "k_leaf_matching"
    return g, ConstructionWitness(kind, {"tree": t, "k": k}, copies, tuple(pairing))


def leaf_matching(t: Tree) -> tuple[BipGraph, ConstructionWitness]:
    """Two copies of ``t`` joined by a perfect matching between corresponding leaves."""
    return k_leaf_matching(t, 1)


def J(p: int, r: int) -> BipGraph:
    """The p-leaf matching of the star ``K_{1,r}``, built from its four vertex groups.

    A = A_u (p centre copies) + A_r (r mirror leaves); B = B_r (r leaves) +
    B_v (p mirror centre copies).  A_u is complete to B_r, A_r complete to
    B_v, and A_r is matched to B_r.  ``J(0, r)`` is a perfect matching on
    ``2r`` vertices; ``J(1, 1)`` is C4 because ``K_{1,1} = K_2`` has no centre.
    """
    if p < 0 or r < 0 or p > r:
        raise BadParams("need 0 <= p <= r")
    if p == 0:
        return BipGraph(r, r, tuple((i, i) for i in range(r)))
    if r == 1:
        return BipGraph(2, 2, ((0, 0), (0, 1), (1, 0), (1, 1)))
    edges = [(i, j) for i in range(p) for j in range(r)]
    edges += [(p + j, r + i) for j in range(r) for i in range(p)]
    edges += [(p + j, j) for j in range(r)]
    return BipGraph(p + r, r + p, tuple(edges))


def double_star_graph(p: int, q: int, k: int) -> BipGraph:
    """k-leaf matching of the double star with centre degrees ``p`` and ``q``, built from four matchings.

    M1..M4 are matchings of sizes ``p-1, k, q-1, k`` with classes A_i, B_i;
    every vertex of A_i is joined to every vertex of B_{i+1} (indices mod 4).
    """
    if p < 2 or q < 2 or k < 1:
        raise BadParams("need p, q >= 2 and k >= 1")
    sizes = [p - 1, k, q - 1, k]
    offsets = [sum(sizes[:i]) for i in range(4)]
    total = sum(sizes)
    edges = []
    for i in range(4):
        edges.extend((offsets[i] + j, offsets[i] + j) for j in range(sizes[i]))
    for i in range(4):
        nxt = (i + 1) % 4
        for x in range(sizes[i]):
            for y in range(sizes[nxt]):
                edges.append((offsets[i] + x, offsets[nxt] + y))
    return BipGraph(total, total, tuple(edges))


def replace_edge_with_J(g: BipGraph, uv: int, p: int, r: int) -> BipGraph:
    """Delete the ends of ``uv`` and attach ``J(p, r)`` in their place.

    ``N(u) - v`` is matched onto the centre copies A_u in increasing order and
    ``N(v) - u`` onto B_v.  Both ends must have degree ``p + 1`` with distinct
    neighbours, and ``r >= max(p, 2)`` so that the star has a centre.
    """
    if p < 1 or r < max(p, 2):
        raise BadParams("need p >= 1 and r >= max(p, 2)")
    u, v = g.ends(uv)
    nu = sorted(g.neighbors(u))
    nv = sorted(g.neighbors(v))
    if len(nu) != p + 1 or len(nv) != p + 1:
        raise DegreeMismatch(f"ends of edge {uv} must both have degree {p + 1}")
    if len(set(nu)) != len(nu) or len(set(nv)) != len(nv):
        raise DegreeMismatch("ends of the replaced edge must have distinct neighbours")
    rest = remove(g, [u, v])
    back = rest.from_parent()
    h = rest.graph
    a0, b0 = h.a_count, h.b_count
    edges = list(h.edges)
    jg = J(p, r)
    edges.extend((a0 + a, b0 + b) for a, b in jg.edges)
    for i, w in enumerate(x for x in nu if x != v):
        edges.append((a0 + i, back[w].index))
    for i, w in enumerate(x for x in nv if x != u):
        edges.append((back[w].index, b0 + r + i))
    return BipGraph(a0 + p + r, b0 + r + p, tuple(edges))
