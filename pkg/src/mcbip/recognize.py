"""Structural recognizers for the five extremal classes.

The classes cut out by the vertex count and the size bound are recognised
through leaf matchings: delete the 2-edges, expect two trees without
degree-two vertices whose leaves are the degree-two vertices of the host, and
check that the pairing of leaves extends to an isomorphism between the trees.
The classes cut out by 2-edge counts reduce to these through the partial
retract.  Nothing here assumes minimality; the recognizers are meant to be
cross-checked against the degree-count flags of :mod:`mcbip.classify`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .classify import degree_classes, is_cycle
from .core import BipGraph, Tree, Vertex, components, remove
from .errors import GraphError
from .transform import Retract, partial_retract
from .trees import tree_isomorphism, tree_predicates

__all__ = [
    "tree_predicates",
    "tree_isomorphism",
    "LeafMatchingWitness",
    "recognize_leaf_matching",
    "recognize_h2",
    "recognize_h3",
    "recognize_h4",
    "RetractRecognition",
    "recognize_h0",
    "recognize_h1",
]


@dataclass(frozen=True)
class LeafMatchingWitness:
    """Two copies of a tree inside the host joined by a leaf pairing.

    ``map1``/``map2`` send tree vertices to host vertices, ``iso`` is the
    tree isomorphism from the first copy to the second and ``pairing`` lists
    the host edge ids joining each leaf ``l`` to ``iso[l]``.
    """

    tree1: Tree
    tree2: Tree
    map1: dict
    map2: dict
    iso: dict
    pairing: frozenset

    @property
    def tree(self) -> Tree:
        return self.tree1

    def check(self, g: BipGraph) -> bool:
        """Re-validate the witness against the host graph."""
        t1, t2 = self.tree1, self.tree2
        if sorted(self.iso) != list(range(t1.n)) or sorted(self.iso.values()) != list(range(t2.n)):
            return False
        e2 = {tuple(sorted((self.iso[u], self.iso[v]))) for u, v in t1.edges}
        if e2 != {tuple(sorted(e)) for e in t2.edges}:
            return False
        for t, mp in ((t1, self.map1), (t2, self.map2)):
            for u, v in t.edges:
                if not g.has_edge(mp[u], mp[v]):
                    return False
        seen = set()
        for leaf in t1.leaves:
            eids = g.edges_between(self.map1[leaf], self.map2[self.iso[leaf]])
            if not eids:
                return False
            seen.add(eids[0])
        return seen == set(self.pairing) and 2 * t1.n == g.n and 2 * (t1.n - 1) + len(t1.leaves) == g.m


def _tree_from_component(sub) -> tuple[Tree, dict[int, Vertex]]:
    h = sub.graph
    verts = list(h.vertices())
    idx = {v: i for i, v in enumerate(verts)}
    edges = tuple((idx[h.ends(e)[0]], idx[h.ends(e)[1]]) for e in range(h.m))
    return Tree(len(verts), edges), {i: sub.vertex_map[v] for i, v in enumerate(verts)}


def _cycle_order(g: BipGraph) -> list[Vertex]:
    start = Vertex("A", 0)
    order = [start]
    prev = None
    cur = start
    while True:
        nxt = [w for w in g.neighbors(cur) if w != prev]
        prev, cur = cur, nxt[0]
        if cur == start:
            return order
        order.append(cur)


def _cycle_witness(g: BipGraph, half: int) -> LeafMatchingWitness:
    """C4 as the leaf matching of K2, or C6 as that of K_{1,2}."""
    c = _cycle_order(g)
    if half == 2:
        t = Tree(2, ((0, 1),))
        map1 = {0: c[0], 1: c[1]}
        map2 = {0: c[3], 1: c[2]}
        iso = {0: 0, 1: 1}
        pairs = [(c[0], c[3]), (c[1], c[2])]
    else:
        t = Tree(3, ((0, 1), (0, 2)))
        map1 = {0: c[0], 1: c[1], 2: c[5]}
        map2 = {0: c[3], 1: c[2], 2: c[4]}
        iso = {0: 0, 1: 1, 2: 2}
        pairs = [(c[1], c[2]), (c[5], c[4])]
    pairing = frozenset(g.edges_between(x, y)[0] for x, y in pairs)
    return LeafMatchingWitness(t, t, map1, map2, iso, pairing)


def recognize_leaf_matching(g: BipGraph) -> LeafMatchingWitness | None:
    """Witness that ``g`` is the leaf matching of a Halin tree, or None."""
    if not g.is_simple or g.n < 4:
        return None
    if is_cycle(g, 4):
        return _cycle_witness(g, 2)
    dc = degree_classes(g)
    hits: dict[Vertex, int] = {}
    for e in dc.e2:
        for v in g.ends(e):
            hits[v] = hits.get(v, 0) + 1
    if set(hits) != set(dc.v2) or any(c != 1 for c in hits.values()):
        return None
    comps = components(remove(g, edges=dc.e2).graph)
    if len(comps) != 2:
        return None
    trees = []
    for sub in comps:
        h = sub.graph
        if h.m != h.n - 1 or h.n < 2:
            return None
        t, mp = _tree_from_component(sub)
        leaves = {mp[v] for v in t.leaves}
        if any(t.degree(v) == 2 for v in range(t.n)) or leaves != {mp[v] for v in range(t.n)} & dc.v2:
            return None
        trees.append((t, mp))
    (t1, m1), (t2, m2) = trees
    back2 = {v: i for i, v in m2.items()}
    constraint = {}
    for leaf in t1.leaves:
        host = m1[leaf]
        e = next(f for f in g.incident(host) if f in dc.e2)
        partner = g.other_end(e, host)
        if partner not in back2:
            return None
        constraint[leaf] = back2[partner]
    iso = tree_isomorphism(t1, t2, constraint)
    if iso is None:
        return None
    return LeafMatchingWitness(t1, t2, m1, m2, iso, frozenset(dc.e2))


def recognize_h2(g: BipGraph) -> LeafMatchingWitness | None:
    w = recognize_leaf_matching(g)
    return w if w is not None and tree_predicates(w.tree).is_halin else None


def recognize_h3(g: BipGraph) -> LeafMatchingWitness | None:
    w = recognize_leaf_matching(g)
    return w if w is not None and tree_predicates(w.tree).is_cubic_halin else None


def recognize_h4(g: BipGraph) -> LeafMatchingWitness | None:
    if is_cycle(g, 6):
        return _cycle_witness(g, 3)
    w = recognize_leaf_matching(g)
    return w if w is not None and tree_predicates(w.tree).is_star else None


@dataclass(frozen=True)
class RetractRecognition:
    verdict: bool
    retract: Retract | None = None
    witness: LeafMatchingWitness | None = None
    reason: str = ""

    def __bool__(self):
        return self.verdict


def _retract_or_none(g: BipGraph) -> tuple[Retract | None, str]:
    try:
        return partial_retract(g), ""
    except GraphError as exc:
        return None, f"retract failed: {exc}"


def recognize_h0(g: BipGraph) -> RetractRecognition:
    """Member of the 2-edge extremal class iff not C4 and the partial retract is a Halin leaf matching."""
    if is_cycle(g, 4):
        return RetractRecognition(False, reason="C4 is excluded")
    r, why = _retract_or_none(g)
    if r is None:
        return RetractRecognition(False, reason=why)
    w = recognize_h2(r.graph)
    return RetractRecognition(w is not None, r, w, "" if w else "retract is not a Halin leaf matching")


def recognize_h1(g: BipGraph) -> RetractRecognition:
    """Member iff the partial retract is a star leaf matching and the maximum degree is 3."""
    r, why = _retract_or_none(g)
    if r is None:
        return RetractRecognition(False, reason=why)
    w = recognize_h4(r.graph)
    ok = w is not None and g.max_degree == 3
    reason = "" if ok else ("maximum degree is not 3" if w is not None else "retract is not a star leaf matching")
    return RetractRecognition(ok, r, w, reason)
