"""Bipartite ear decompositions of matching-covered graphs.

Growth invariant: the current subgraph ``H`` is matching covered and
conformal, and ``outside`` is a perfect matching of ``G - V(H)``.  To absorb
the smallest edge ``e = uv`` leaving ``H``, take a perfect matching ``M`` of
``G`` through ``e`` and walk ``u, v, N(v), M(N(v)), ...`` alternating between
``outside`` and ``M`` until an ``M``-edge lands back in ``H``.  The walk is an
odd path whose interior is paired up by ``outside``, so the remaining
``outside`` edges still match ``G - V(H ∪ P)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import BipGraph, Vertex, edge_subgraph, remove
from .errors import NotMatchingCovered, PreconditionFailed
from .matching import (
    Cycle,
    _alternating_cycle,
    _cycle_from_edges,
    _pm_containing,
    has_perfect_matching,
    is_matching_covered,
    mc_failure,
    perfect_matching,
)

__all__ = [
    "Ear",
    "EarDecomposition",
    "find_ear_decomposition",
    "find_ear_decomposition_through",
    "verify_ear_decomposition",
]


@dataclass(frozen=True)
class Ear:
    """An odd path given by its vertex sequence and the edge ids along it."""

    vertices: tuple
    edge_ids: tuple

    @property
    def length(self) -> int:
        return len(self.edge_ids)

    @property
    def interior(self) -> tuple:
        return self.vertices[1:-1]


@dataclass(frozen=True)
class EarDecomposition:
    cycle: Cycle
    ears: tuple = field(default_factory=tuple)

    @property
    def ear_count(self) -> int:
        return len(self.ears)

    def prefix_edges(self, i: int) -> frozenset:
        """Edge ids of the cycle plus the first ``i`` ears."""
        out = set(self.cycle.edge_ids)
        for ear in self.ears[:i]:
            out.update(ear.edge_ids)
        return frozenset(out)

    def prefix_vertices(self, i: int) -> frozenset:
        out = set(self.cycle.vertices)
        for ear in self.ears[:i]:
            out.update(ear.vertices)
        return frozenset(out)


def _initial_cycle(g: BipGraph) -> tuple[Cycle, dict[Vertex, int]]:
    e0 = 0
    u, w = g.ends(e0)
    m1 = _pm_containing(g, e0)
    candidates = [f for f in g.incident(u) if f != e0 and g.other_end(f, u) != w]
    candidates += [f for f in g.incident(u) if f != e0 and g.other_end(f, u) == w]
    m2 = _pm_containing(g, candidates[0])
    cycle = _cycle_from_edges(g, u, _alternating_cycle(g, m1, m2, u))
    on_cycle = set(cycle.vertices)
    outside = {}
    for e in m1.edge_ids:
        x, y = g.ends(e)
        if x not in on_cycle:
            outside[x] = e
            outside[y] = e
    return cycle, outside


def _grow(g: BipGraph, cycle: Cycle, ears: list[Ear], h_vertices: set, h_edges: set,
          outside: dict[Vertex, int]) -> EarDecomposition:
    while len(h_edges) < g.m:
        e = next(f for f in range(g.m)
                 if f not in h_edges and (g.ends(f)[0] in h_vertices or g.ends(f)[1] in h_vertices))
        x, y = g.ends(e)
        if x in h_vertices and y in h_vertices:
            ears.append(Ear((x, y), (e,)))
            h_edges.add(e)
            continue
        start, v = (x, y) if x in h_vertices else (y, x)
        pm = _pm_containing(g, e)
        pm_at = {z: f for f in pm.edge_ids for z in g.ends(f)}
        verts = [start, v]
        eids = [e]
        while True:
            f = outside[v]
            eids.append(f)
            v = g.other_end(f, v)
            verts.append(v)
            f = pm_at[v]
            eids.append(f)
            v = g.other_end(f, v)
            verts.append(v)
            if v in h_vertices:
                break
        for z in verts[1:-1]:
            del outside[z]
        ears.append(Ear(tuple(verts), tuple(eids)))
        h_vertices.update(verts)
        h_edges.update(eids)
    return EarDecomposition(cycle, tuple(ears))


def find_ear_decomposition(g: BipGraph) -> EarDecomposition:
    """Ear decomposition whose initial cycle passes through edge 0."""
    reason = mc_failure(g)
    if reason is not None:
        raise NotMatchingCovered(reason, witness=reason)
    cycle, outside = _initial_cycle(g)
    return _grow(g, cycle, [], set(cycle.vertices), set(cycle.edge_ids), outside)


def find_ear_decomposition_through(g: BipGraph, h_vertices, h_edge_ids) -> EarDecomposition:
    """Ear decomposition of ``g`` in which the subgraph ``H = (h_vertices, h_edge_ids)`` appears as a prefix.

    ``H`` must be matching covered and conformal in ``g``.
    """
    reason = mc_failure(g)
    if reason is not None:
        raise NotMatchingCovered(reason, witness=reason)
    sub = edge_subgraph(g, h_edge_ids)
    if h_vertices is not None and set(h_vertices) != set(sub.vertex_map.values()):
        raise PreconditionFailed("matching covered: the vertex set is not spanned by the edges")
    if not is_matching_covered(sub.graph):
        raise PreconditionFailed("matching covered: the given subgraph is not matching covered")
    h_vertices = set(sub.vertex_map.values())
    rest = remove(g, list(h_vertices))
    pm = perfect_matching(rest.graph)
    if pm is None:
        raise PreconditionFailed("conformal: deleting the subgraph leaves no perfect matching")
    inner = find_ear_decomposition(sub.graph)
    vm, em = sub.vertex_map, sub.edge_map
    cycle = Cycle(tuple(vm[v] for v in inner.cycle.vertices), tuple(em[e] for e in inner.cycle.edge_ids))
    ears = [Ear(tuple(vm[v] for v in ear.vertices), tuple(em[e] for e in ear.edge_ids)) for ear in inner.ears]
    outside = {}
    for f in pm.edge_ids:
        pf = rest.edge_map[f]
        for z in g.ends(pf):
            outside[z] = pf
    return _grow(g, cycle, ears, set(h_vertices), set(em.values()), outside)


def _check_path(g: BipGraph, verts, eids) -> str | None:
    if len(verts) != len(eids) + 1:
        return "vertex and edge sequences disagree in length"
    for i, e in enumerate(eids):
        if not 0 <= e < g.m:
            return f"edge id {e} is not in the graph"
        if set(g.ends(e)) != {verts[i], verts[i + 1]}:
            return f"edge {e} does not join {verts[i]!r} and {verts[i + 1]!r}"
    if len(set(eids)) != len(eids):
        return "repeated edge"
    return None


def verify_ear_decomposition(g: BipGraph, dec: EarDecomposition, check_prefixes: bool = True) -> list[str]:
    """Problems found in ``dec``; an empty list means it is valid."""
    problems = []
    cyc = dec.cycle
    closed = list(cyc.vertices) + [cyc.vertices[0]] if cyc.vertices else []
    msg = _check_path(g, closed, list(cyc.edge_ids))
    if msg:
        problems.append(f"cycle: {msg}")
        return problems
    if len(cyc.edge_ids) % 2 or len(set(cyc.vertices)) != len(cyc.vertices):
        problems.append("initial subgraph is not an even cycle")
    seen_v = set(cyc.vertices)
    seen_e = set(cyc.edge_ids)
    for i, ear in enumerate(dec.ears):
        msg = _check_path(g, ear.vertices, ear.edge_ids)
        if msg:
            problems.append(f"ear {i}: {msg}")
            continue
        if ear.length % 2 == 0:
            problems.append(f"ear {i}: even length {ear.length}")
        if ear.vertices[0] not in seen_v or ear.vertices[-1] not in seen_v:
            problems.append(f"ear {i}: an end is not in the earlier union")
        inner = ear.interior
        if len(set(inner)) != len(inner) or any(v in seen_v for v in inner):
            problems.append(f"ear {i}: interior meets earlier vertices")
        if any(e in seen_e for e in ear.edge_ids):
            problems.append(f"ear {i}: reuses an earlier edge")
        seen_v.update(ear.vertices)
        seen_e.update(ear.edge_ids)
    if len(seen_e) != g.m or len(seen_v) != g.n:
        problems.append("the union does not cover the whole graph")
    if check_prefixes and not problems:
        for i in range(len(dec.ears) + 1):
            verts = dec.prefix_vertices(i)
            if not has_perfect_matching(remove(g, list(verts)).graph):
                problems.append(f"prefix {i} is not conformal")
            if not is_matching_covered(edge_subgraph(g, dec.prefix_edges(i)).graph):
                problems.append(f"prefix {i} is not matching covered")
    return problems
