"""Bicontraction, bisplitting, retracts, balanced 2-cuts and 2-edge splicing."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import NamedTuple

from .core import A, B, BipGraph, EdgeCut, Vertex, _component_sets, boundary, induced_subgraph, other_side
from .errors import (
    BadPartition,
    NotBalanced2Cut,
    NotDegreeTwo,
    NotFound,
    NotPresent,
    ParallelNeighbors,
    PreconditionFailed,
    RestrictionViolated,
)

__all__ = [
    "Contraction",
    "bicontract",
    "Split",
    "bisplit",
    "RetractStep",
    "Retract",
    "partial_retract",
    "find_balanced_2cut_with",
    "two_cuts_containing",
    "Decomposition",
    "two_cut_decompose",
    "SpliceSpec",
    "two_edge_splice",
]


class Contraction(NamedTuple):
    graph: BipGraph
    merged: Vertex
    vertex_map: dict  # old vertex -> new vertex (the contracted vertex is absent)
    parallel_created: int


def _relabel(g: BipGraph, drop: set[Vertex], fuse: dict[Vertex, Vertex]) -> tuple[dict[Vertex, Vertex], int, int]:
    """Index map after deleting ``drop``; vertices in ``fuse`` follow their target."""
    counts = {A: 0, B: 0}
    vmap: dict[Vertex, Vertex] = {}
    for v in g.vertices():
        if v in drop or v in fuse:
            continue
        vmap[v] = Vertex(v.side, counts[v.side])
        counts[v.side] += 1
    for v, t in fuse.items():
        vmap[v] = vmap[t]
    return vmap, counts[A], counts[B]


def _rebuild(g: BipGraph, vmap: dict[Vertex, Vertex], skip: set[int], a_count: int, b_count: int) -> BipGraph:
    edges = []
    for eid in range(g.m):
        if eid in skip:
            continue
        x, y = g.ends(eid)
        edges.append((vmap[x].index, vmap[y].index))
    return BipGraph(a_count, b_count, tuple(edges))


def bicontract(g: BipGraph, v: Vertex, restricted: bool = False) -> Contraction:
    """Merge a degree-two vertex with its two neighbours.

    The merged vertex takes the place of the neighbour with the smaller index;
    it lies in the class opposite to ``v``.
    """
    if not g.has_vertex(v):
        raise NotPresent(f"vertex {v!r} is not in the graph")
    inc = g.incident(v)
    if len(inc) != 2:
        raise NotDegreeTwo(f"vertex {v!r} has degree {len(inc)}")
    v1, v2 = sorted(g.other_end(e, v) for e in inc)
    if v1 == v2:
        raise ParallelNeighbors(f"both edges at {v!r} go to {v1!r}")
    if restricted and (g.degree(v1) < 3 or g.degree(v2) < 3):
        raise RestrictionViolated(f"a neighbour of {v!r} has degree 2")
    vmap, a_count, b_count = _relabel(g, {v}, {v2: v1})
    merged = vmap[v1]
    new = _rebuild(g, vmap, set(inc), a_count, b_count)
    others1 = {g.other_end(e, v1) for e in g.incident(v1)} - {v}
    others2 = {g.other_end(e, v2) for e in g.incident(v2)} - {v}
    return Contraction(new, merged, vmap, len(others1 & others2))


class Split(NamedTuple):
    graph: BipGraph
    middle: Vertex
    v1: Vertex
    v2: Vertex


def bisplit(g: BipGraph, v: Vertex, f1, f2, restricted: bool = False) -> Split:
    """Split ``v`` into ``v1`` (keeping ``f1``) and ``v2`` (keeping ``f2``) joined through a new degree-two vertex.

    ``v1`` keeps the index of ``v``; ``v2`` and the middle vertex are appended
    to their classes and the two new edges are appended to the edge list.
    """
    if not g.has_vertex(v):
        raise NotPresent(f"vertex {v!r} is not in the graph")
    f1, f2 = set(f1), set(f2)
    inc = set(g.incident(v))
    if not f1 or not f2 or f1 & f2 or (f1 | f2) != inc:
        raise BadPartition("f1 and f2 must be nonempty and partition the edges at the vertex")
    if len(inc) < 2:
        raise BadPartition("vertex needs degree at least 2")
    if restricted and (len(inc) < 4 or len(f1) < 2 or len(f2) < 2):
        raise RestrictionViolated("a restricted split needs degree >= 4 and two edges on each side")
    side = v.side
    counts = {A: g.a_count, B: g.b_count}
    v2 = Vertex(side, counts[side])
    counts[side] += 1
    mid_side = other_side(side)
    mid = Vertex(mid_side, counts[mid_side])
    counts[mid_side] += 1
    edges = []
    for eid, (a, b) in enumerate(g.edges):
        if eid in f2:
            if side == A:
                a = v2.index
            else:
                b = v2.index
        edges.append((a, b))
    for end in (v, v2):
        edges.append((end.index, mid.index) if side == A else (mid.index, end.index))
    return Split(BipGraph(counts[A], counts[B], tuple(edges)), mid, v, v2)


@dataclass(frozen=True)
class RetractStep:
    vertex: Vertex  # degree-two vertex, in the indexing of the graph before this step
    merged: Vertex  # resulting vertex, in the indexing after this step
    parallel_created: int


@dataclass(frozen=True)
class Retract:
    graph: BipGraph
    steps: tuple = ()
    vertex_map: dict = field(default_factory=dict)  # original vertex -> final vertex (contracted ones absent)


def _isolated_deg2(g: BipGraph) -> list[Vertex]:
    deg = g.degrees()
    out = []
    for v in g.vertices():
        if deg[v] != 2:
            continue
        if all(deg[w] >= 3 for w in g.neighbors(v)):
            out.append(v)
    return out


def partial_retract(g: BipGraph, rng: random.Random | None = None) -> Retract:
    """Bicontract degree-two vertices with no degree-two neighbour until none remain.

    Candidates are taken in increasing vertex order, or in random order when
    ``rng`` is given; the result does not depend on the order up to
    isomorphism.
    """
    steps = []
    total = {v: v for v in g.vertices()}
    cur = g
    while True:
        cands = _isolated_deg2(cur)
        if not cands:
            break
        v = rng.choice(cands) if rng is not None else cands[0]
        res = bicontract(cur, v, restricted=True)
        steps.append(RetractStep(v, res.merged, res.parallel_created))
        total = {o: res.vertex_map[t] for o, t in total.items() if t in res.vertex_map}
        cur = res.graph
    return Retract(cur, tuple(steps), total)


def two_cuts_containing(g: BipGraph, e: int) -> list[EdgeCut]:
    """Every 2-edge cut ``{e, f}`` whose removal disconnects ``g``."""
    if not 0 <= e < g.m:
        raise NotPresent(f"edge id {e} is not in the graph")
    out = []
    for f in range(g.m):
        if f == e:
            continue
        comps = _component_sets(g, frozenset({e, f}))
        if len(comps) < 2:
            continue
        x = g.ends(e)[0]
        shore = next(c for c in comps if x in c)
        cut = boundary(g, shore)
        if cut.edge_ids == frozenset({e, f}):
            out.append(cut)
    return out


def find_balanced_2cut_with(g: BipGraph, e: int) -> EdgeCut:
    """A nontrivial balanced 2-cut through the 3-edge ``e``.

    Such a cut always exists in graphs attaining the degree-two vertex bound.
    """
    if not 0 <= e < g.m:
        raise NotPresent(f"edge id {e} is not in the graph")
    deg = g.degrees()
    x, y = g.ends(e)
    if deg[x] < 3 or deg[y] < 3:
        raise PreconditionFailed(f"edge {e} is not a 3-edge")
    for cut in two_cuts_containing(g, e):
        if cut.is_balanced and not cut.is_trivial:
            return cut
    raise NotFound(f"no balanced nontrivial 2-cut contains edge {e}")


class Decomposition(NamedTuple):
    g1: BipGraph
    g2: BipGraph
    map1: dict  # vertex of g1 -> vertex of g (new ear vertices absent)
    map2: dict
    two_edge1: int  # id of the new 2-edge u1v1 in g1
    two_edge2: int


def _side_with_ear(g: BipGraph, shore: set[Vertex], a_end: Vertex, b_end: Vertex):
    sub = induced_subgraph(g, shore)
    back = sub.from_parent()
    h = sub.graph
    u = Vertex(A, h.a_count)
    v = Vertex(B, h.b_count)
    a1 = back[a_end]
    b1 = back[b_end]
    edges = list(h.edges) + [(a1.index, v.index), (u.index, v.index), (u.index, b1.index)]
    out = BipGraph(h.a_count + 1, h.b_count + 1, tuple(edges))
    return out, dict(sub.vertex_map), len(edges) - 2


def two_cut_decompose(g: BipGraph, cut: EdgeCut) -> Decomposition:
    """Split ``g`` along a nontrivial balanced 2-cut into two smaller graphs.

    Each shore ``X`` gets a path ``a - v - u - b`` where ``a`` (in A) and ``b``
    (in B) are the ends of the cut edges inside ``X``; ``uv`` is the new 2-edge.
    """
    if cut.size != 2 or not cut.is_balanced or cut.is_trivial:
        raise NotBalanced2Cut("expected a nontrivial balanced 2-cut")
    if boundary(g, cut.shore).edge_ids != cut.edge_ids:
        raise NotBalanced2Cut("cut does not match the graph")
    x = set(cut.shore)
    y = set(g.vertices()) - x
    ends_in_x = {}
    ends_in_y = {}
    for e in cut.edge_ids:
        p, q = g.ends(e)
        if p in x:
            ends_in_x[A], ends_in_y[B] = p, q
        else:
            ends_in_x[B], ends_in_y[A] = q, p
    g1, m1, t1 = _side_with_ear(g, x, ends_in_x[A], ends_in_x[B])
    g2, m2, t2 = _side_with_ear(g, y, ends_in_y[A], ends_in_y[B])
    return Decomposition(g1, g2, m1, m2, t1, t2)


@dataclass(frozen=True)
class SpliceSpec:
    """Two graphs, each with a designated 2-edge ``u_i v_i`` (``u_i`` in A)."""

    g1: BipGraph
    e1: int
    g2: BipGraph
    e2: int

    def __post_init__(self):
        for g, e in ((self.g1, self.e1), (self.g2, self.e2)):
            u, v = g.ends(e)
            if g.degree(u) != 2 or g.degree(v) != 2:
                raise NotDegreeTwo(f"edge {e} is not a 2-edge")
            if len(g.edges_between(u, v)) != 1:
                raise ParallelNeighbors(f"edge {e} has a parallel copy")

    @staticmethod
    def _frame(g: BipGraph, e: int) -> tuple[Vertex, Vertex, Vertex, Vertex]:
        u, v = g.ends(e)
        a = next(g.other_end(f, v) for f in g.incident(v) if f != e)
        b = next(g.other_end(f, u) for f in g.incident(u) if f != e)
        return u, v, a, b


def two_edge_splice(spec: SpliceSpec) -> BipGraph:
    """Delete ``u_i, v_i`` from both graphs and add the edges ``a1 b2`` and ``a2 b1``.

    Surviving vertices of ``g1`` come first in each class, then those of
    ``g2``; the two new edges are appended last.
    """
    parts = []
    a_off = b_off = 0
    edges = []
    maps = []
    for g, e in ((spec.g1, spec.e1), (spec.g2, spec.e2)):
        u, v, a, b = SpliceSpec._frame(g, e)
        keep = [w for w in g.vertices() if w not in (u, v)]
        vmap = {}
        ca = cb = 0
        for w in keep:
            if w.side == A:
                vmap[w] = Vertex(A, a_off + ca)
                ca += 1
            else:
                vmap[w] = Vertex(B, b_off + cb)
                cb += 1
        for eid, (x, y) in enumerate(g.edges):
            p, q = Vertex(A, x), Vertex(B, y)
            if p in vmap and q in vmap:
                edges.append((vmap[p].index, vmap[q].index))
        parts.append((vmap[a], vmap[b]))
        maps.append(vmap)
        a_off += ca
        b_off += cb
    (a1, b1), (a2, b2) = parts
    edges.append((a1.index, b2.index))
    edges.append((a2.index, b1.index))
    return BipGraph(a_off, b_off, tuple(edges))
