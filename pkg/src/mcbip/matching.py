"""Perfect matchings, Hall certificates and matching-covered tests.

A connected bipartite graph on at least four vertices is matching covered
when every edge lies in some perfect matching.  Edge matchability is decided
by deleting both ends and testing the remainder for a perfect matching;
:func:`allowed_edges` gives the same answer for all edges at once through the
strongly connected components of the alternating orientation.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator

from .core import A, B, BipGraph, Matching, Vertex, is_connected, remove
from .errors import NoSuchCycle, NotMatchingCovered, NotPresent

__all__ = [
    "max_matching",
    "maximum_matching",
    "perfect_matching",
    "has_perfect_matching",
    "MatchabilityCertificate",
    "is_matchable",
    "HallViolator",
    "hall_violator",
    "is_matchable_edge",
    "allowed_edges",
    "is_matching_covered",
    "mc_failure",
    "is_removable",
    "removable_edges",
    "is_minimal_mc",
    "is_conformal",
    "PerfectMatchings",
    "enumerate_perfect_matchings",
    "Cycle",
    "conformal_cycle_through",
    "conformal_cycle_through_vertex_avoiding_edge",
    "masks_have_perfect_matching",
]

_INF = float("inf")


def max_matching(g: BipGraph) -> Matching:
    """Hopcroft-Karp; among parallel edges the smallest id is used."""
    inc_a, _ = g._incidence
    # adjacency of A-vertices: (b, edge id) in increasing edge-id order
    adj = [[(g.edges[e][1], e) for e in inc_a[a]] for a in range(g.a_count)]
    mate_a = [-1] * g.a_count  # edge id
    mate_b = [-1] * g.b_count  # edge id
    dist = [0.0] * g.a_count

    def bfs() -> bool:
        queue = deque()
        for a in range(g.a_count):
            if mate_a[a] < 0:
                dist[a] = 0
                queue.append(a)
            else:
                dist[a] = _INF
        found = False
        while queue:
            a = queue.popleft()
            for b, _ in adj[a]:
                e = mate_b[b]
                if e < 0:
                    found = True
                else:
                    a2 = g.edges[e][0]
                    if dist[a2] == _INF:
                        dist[a2] = dist[a] + 1
                        queue.append(a2)
        return found

    def dfs(a: int) -> bool:
        for b, eid in adj[a]:
            e = mate_b[b]
            if e < 0 or (dist[g.edges[e][0]] == dist[a] + 1 and dfs(g.edges[e][0])):
                mate_a[a] = eid
                mate_b[b] = eid
                return True
        dist[a] = _INF
        return False

    while bfs():
        for a in range(g.a_count):
            if mate_a[a] < 0:
                dfs(a)
    return Matching(g, frozenset(e for e in mate_a if e >= 0))


def perfect_matching(g: BipGraph) -> Matching | None:
    if g.a_count != g.b_count:
        return None
    m = max_matching(g)
    return m if m.is_perfect else None


maximum_matching = max_matching


def has_perfect_matching(g: BipGraph) -> bool:
    """Whether ``g`` has a perfect matching (the empty graph does)."""
    if g.a_count != g.b_count:
        return False
    return masks_have_perfect_matching(g.adjacency_masks, (1 << g.a_count) - 1, (1 << g.b_count) - 1)


@dataclass(frozen=True)
class HallViolator:
    """A set ``S`` inside one class with ``|N(S)| < |S|``."""

    side: str
    subset: frozenset
    neighborhood: frozenset


def hall_violator(g: BipGraph) -> HallViolator | None:
    """Certificate of non-matchability, or None when ``g`` is matchable."""
    mt = max_matching(g)
    if mt.is_perfect:
        return None
    mate = mt.mate()
    # grow alternating trees from the exposed vertices of one side; take the side
    # with more exposed vertices, which is nonempty when the matching is not perfect
    exposed_a = [v for v in g.vertices() if v.side == A and v not in mate]
    exposed_b = [v for v in g.vertices() if v.side == B and v not in mate]
    side, roots = (A, exposed_a) if len(exposed_a) >= len(exposed_b) else (B, exposed_b)
    s_set = set(roots)
    n_set: set[Vertex] = set()
    queue = deque(roots)
    while queue:
        v = queue.popleft()
        for w in g.neighbors(v):
            if w in n_set:
                continue
            n_set.add(w)
            x = mate.get(w)
            if x is not None and x not in s_set:
                s_set.add(x)
                queue.append(x)
    return HallViolator(side, frozenset(s_set), frozenset(n_set))


@dataclass(frozen=True)
class MatchabilityCertificate:
    """Verdict plus a perfect matching (when true) or a Hall violator (when false)."""

    verdict: bool
    matching: Matching | None = None
    violator: HallViolator | None = None

    def __bool__(self):
        return self.verdict

    def validate(self, g: BipGraph) -> bool:
        if self.verdict:
            return self.matching is not None and self.matching.graph == g and self.matching.is_perfect
        s = self.violator
        if s is None or any(v.side != s.side for v in s.subset):
            return False
        nbrs = set()
        for v in s.subset:
            nbrs.update(g.neighbors(v))
        return nbrs == set(s.neighborhood) and len(nbrs) < len(s.subset)


def is_matchable(g: BipGraph) -> MatchabilityCertificate:
    pm = perfect_matching(g)
    if pm is not None:
        return MatchabilityCertificate(True, matching=pm)
    return MatchabilityCertificate(False, violator=hall_violator(g))


def masks_have_perfect_matching(masks: list[int] | tuple[int, ...], rows: int, cols: int) -> bool:
    """Kuhn's algorithm on bitmasks.

    ``masks[i]`` is the column set of row ``i``; only rows in the bitmask
    ``rows`` and columns in ``cols`` take part.  True when the chosen rows and
    columns have equal size and admit a perfect matching.
    """
    if rows.bit_count() != cols.bit_count():
        return False
    match_col: dict[int, int] = {}

    def augment(r: int, visited: list[int]) -> bool:
        free = masks[r] & cols & ~visited[0]
        while free:
            low = free & -free
            free ^= low
            visited[0] |= low
            c = low.bit_length() - 1
            owner = match_col.get(c)
            if owner is None or augment(owner, visited):
                match_col[c] = r
                return True
        return False

    rr = rows
    while rr:
        low = rr & -rr
        rr ^= low
        if not augment(low.bit_length() - 1, [0]):
            return False
    return True


def is_matchable_edge(g: BipGraph, e: int) -> bool:
    """Whether edge ``e`` lies in some perfect matching (delete both ends, test the rest)."""
    x, y = g.ends(e)
    return has_perfect_matching(remove(g, [x, y]).graph)


def allowed_edges(g: BipGraph) -> frozenset:
    """Ids of all edges lying in at least one perfect matching.

    Orient non-matching edges A->B and matching edges B->A for one perfect
    matching; a non-matching edge is allowed iff its ends share a strongly
    connected component.
    """
    pm = perfect_matching(g)
    if pm is None:
        return frozenset()
    n_a = g.a_count
    succ: list[list[int]] = [[] for _ in range(g.n)]
    for eid, (a, b) in enumerate(g.edges):
        if eid in pm.edge_ids:
            succ[n_a + b].append(a)
        else:
            succ[a].append(n_a + b)
    comp = _scc(succ)
    out = set(pm.edge_ids)
    for eid, (a, b) in enumerate(g.edges):
        if comp[a] == comp[n_a + b]:
            out.add(eid)
    return frozenset(out)


def _scc(succ: list[list[int]]) -> list[int]:
    """Iterative Tarjan; returns a component label per node."""
    n = len(succ)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [-1] * n
    stack: list[int] = []
    counter = 0
    labels = 0
    for root in range(n):
        if index[root] >= 0:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            if i < len(succ[v]):
                work[-1] = (v, i + 1)
                w = succ[v][i]
                if index[w] < 0:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
            else:
                work.pop()
                if work:
                    p = work[-1][0]
                    low[p] = min(low[p], low[v])
                if low[v] == index[v]:
                    while True:
                        w = stack.pop()
                        on_stack[w] = False
                        comp[w] = labels
                        if w == v:
                            break
                    labels += 1
    return comp


def mc_failure(g: BipGraph) -> str | None:
    """None for matching-covered graphs, else a short reason."""
    if g.n < 4:
        return "fewer than four vertices"
    if not is_connected(g):
        return "disconnected"
    allowed = allowed_edges(g)
    if not allowed:
        return "no perfect matching"
    for eid in range(g.m):
        if eid not in allowed:
            return f"edge {eid} lies in no perfect matching"
    return None


def is_matching_covered(g: BipGraph) -> bool:
    return mc_failure(g) is None


def is_removable(g: BipGraph, e: int) -> bool:
    """Whether ``g - e`` is still matching covered; ``g`` must be matching covered."""
    if not 0 <= e < g.m:
        raise NotPresent(f"edge id {e} is not in the graph")
    if not is_matching_covered(g):
        raise NotMatchingCovered(mc_failure(g) or "")
    return is_matching_covered(remove(g, edges=[e]).graph)


def removable_edges(g: BipGraph) -> list[int]:
    if not is_matching_covered(g):
        raise NotMatchingCovered(mc_failure(g) or "")
    deg = g.degrees()
    out = []
    for eid in range(g.m):
        x, y = g.ends(eid)
        # deleting an edge at a degree-2 vertex leaves a pendant vertex
        if deg[x] < 3 or deg[y] < 3:
            continue
        if is_matching_covered(remove(g, edges=[eid]).graph):
            out.append(eid)
    return out


def is_minimal_mc(g: BipGraph) -> bool:
    return is_matching_covered(g) and not removable_edges(g)


def is_conformal(g: BipGraph, vertices: Iterable[Vertex]) -> bool:
    """Whether deleting ``vertices`` leaves a graph with a perfect matching."""
    return has_perfect_matching(remove(g, list(vertices)).graph)


@dataclass(frozen=True)
class PerfectMatchings:
    matchings: tuple
    truncated: bool

    def __len__(self):
        return len(self.matchings)

    def __iter__(self):
        return iter(self.matchings)


def enumerate_perfect_matchings(g: BipGraph, limit: int | None = None) -> PerfectMatchings:
    """Perfect matchings in branching order, at most ``limit`` of them (test oracle)."""
    if limit is not None and limit < 1:
        raise ValueError("limit must be at least 1")
    cap = None if limit is None else limit + 1
    found = list(_iter_perfect_matchings(g, cap))
    truncated = limit is not None and len(found) > limit
    return PerfectMatchings(tuple(found[:limit] if truncated else found), truncated)


def _iter_perfect_matchings(g: BipGraph, limit: int | None = None) -> Iterator[Matching]:
    if g.a_count != g.b_count:
        return
    inc_a, _ = g._incidence
    chosen: list[int] = []
    used_b: set[int] = set()
    count = 0

    def rec(a: int):
        nonlocal count
        if limit is not None and count >= limit:
            return
        if a == g.a_count:
            count += 1
            yield Matching(g, frozenset(chosen))
            return
        for e in inc_a[a]:
            b = g.edges[e][1]
            if b in used_b:
                continue
            used_b.add(b)
            chosen.append(e)
            yield from rec(a + 1)
            chosen.pop()
            used_b.discard(b)

    yield from rec(0)


def _pm_containing(g: BipGraph, e: int) -> Matching | None:
    x, y = g.ends(e)
    d = remove(g, [x, y])
    pm = perfect_matching(d.graph)
    if pm is None:
        return None
    return Matching(g, frozenset({e} | {d.edge_map[f] for f in pm.edge_ids}))


def _alternating_cycle(g: BipGraph, m1: Matching, m2: Matching, start: Vertex) -> list[int]:
    """Edge ids of the cycle of ``m1 Δ m2`` through ``start``, beginning with its ``m1`` edge."""
    e1 = {x: e for e in m1.edge_ids for x in g.ends(e)}
    e2 = {x: e for e in m2.edge_ids for x in g.ends(e)}
    cycle = []
    v = start
    use_first = True
    while True:
        e = e1[v] if use_first else e2[v]
        cycle.append(e)
        v = g.other_end(e, v)
        use_first = not use_first
        if v == start and use_first:
            return cycle


@dataclass(frozen=True)
class Cycle:
    """An even cycle as a closed vertex sequence plus its edge ids."""

    vertices: tuple
    edge_ids: tuple


def _cycle_from_edges(g: BipGraph, start: Vertex, eids: list[int]) -> Cycle:
    verts = [start]
    for e in eids[:-1]:
        verts.append(g.other_end(e, verts[-1]))
    return Cycle(tuple(verts), tuple(eids))


def conformal_cycle_through(g: BipGraph, u: Vertex, avoid_edge: int) -> Cycle:
    """A conformal cycle through ``u`` that avoids the edge ``avoid_edge`` at ``u``.

    Requires ``g`` matching covered and ``deg(u) >= 3``.  Two further edges
    ``f1, f2`` at ``u`` are placed in perfect matchings ``M1, M2``; the
    component of ``M1 Δ M2`` through ``u`` is the cycle, and ``M1`` matches
    everything off it.
    """
    if not g.has_vertex(u):
        raise NotPresent(f"vertex {u!r} is not in the graph")
    if avoid_edge not in g.incident(u):
        raise NotPresent(f"edge {avoid_edge} is not incident with {u!r}")
    if not is_matching_covered(g):
        raise NoSuchCycle("graph is not matching covered")
    if g.degree(u) < 3:
        raise NoSuchCycle(f"vertex {u!r} has degree {g.degree(u)} < 3")
    others = [e for e in g.incident(u) if e != avoid_edge]
    pairs = [(f1, f2) for i, f1 in enumerate(others) for f2 in others[i + 1:]]
    # prefer two edges to distinct neighbours so that the cycle is not a digon
    pairs.sort(key=lambda p: g.other_end(p[0], u) == g.other_end(p[1], u))
    for f1, f2 in pairs:
        if g.other_end(f1, u) == g.other_end(f2, u):
            raise NoSuchCycle(f"all further edges at {u!r} are parallel")
        m1 = _pm_containing(g, f1)
        m2 = _pm_containing(g, f2)
        eids = _alternating_cycle(g, m1, m2, u)
        return _cycle_from_edges(g, u, eids)
    raise NoSuchCycle(f"no suitable edges at {u!r}")


conformal_cycle_through_vertex_avoiding_edge = conformal_cycle_through
