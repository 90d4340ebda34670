"""Bipartite multigraphs with a fixed bipartition, plus trees and small value types.

Vertices are ``Vertex(side, index)`` pairs with ``side`` in ``{"A", "B"}``.
Edges are stored as ``(a_index, b_index)`` tuples; an edge's id is its
position in ``BipGraph.edges``.  Parallel edges are allowed, loops cannot
occur.  Every derived graph (vertex or edge deletion, component extraction)
comes with explicit maps back to the parent so that callers never have to
guess how indices shifted.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple

from .errors import InvalidEdge, NotATree, NotPresent

__all__ = [
    "A",
    "B",
    "Vertex",
    "BipGraph",
    "Derived",
    "EdgeCut",
    "Matching",
    "Tree",
    "build",
    "remove",
    "components",
    "boundary",
    "induced_subgraph",
    "edge_subgraph",
    "is_connected",
    "to_networkx",
    "is_isomorphic",
    "disjoint_union",
]

A = "A"
B = "B"


class Vertex(NamedTuple):
    side: str
    index: int

    def __repr__(self):
        return f"{self.side}{self.index}"


def other_side(side: str) -> str:
    return B if side == A else A


@dataclass(frozen=True)
class BipGraph:
    """Bipartite multigraph on classes ``A = {0..a_count-1}``, ``B = {0..b_count-1}``."""

    a_count: int
    b_count: int
    edges: tuple = ()

    def __post_init__(self):
        if self.a_count < 0 or self.b_count < 0:
            raise InvalidEdge("class sizes must be non-negative")
        edges = tuple((int(a), int(b)) for a, b in self.edges)
        for eid, (a, b) in enumerate(edges):
            if not (0 <= a < self.a_count and 0 <= b < self.b_count):
                raise InvalidEdge(f"edge {eid} = ({a}, {b}) has an endpoint out of range")
        object.__setattr__(self, "edges", edges)

    # --- size -------------------------------------------------------------

    @property
    def n(self) -> int:
        return self.a_count + self.b_count

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> Iterator[Vertex]:
        for i in range(self.a_count):
            yield Vertex(A, i)
        for j in range(self.b_count):
            yield Vertex(B, j)

    def has_vertex(self, v: Vertex) -> bool:
        side, i = v
        return (side == A and 0 <= i < self.a_count) or (side == B and 0 <= i < self.b_count)

    def _check_vertex(self, v: Vertex) -> None:
        if not self.has_vertex(v):
            raise NotPresent(f"vertex {v!r} is not in the graph")

    def _check_edge(self, eid: int) -> None:
        if not 0 <= eid < len(self.edges):
            raise NotPresent(f"edge id {eid} is not in the graph")

    # --- incidence --------------------------------------------------------

    @cached_property
    def _incidence(self) -> tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]]:
        inc_a: list[list[int]] = [[] for _ in range(self.a_count)]
        inc_b: list[list[int]] = [[] for _ in range(self.b_count)]
        for eid, (a, b) in enumerate(self.edges):
            inc_a[a].append(eid)
            inc_b[b].append(eid)
        return tuple(map(tuple, inc_a)), tuple(map(tuple, inc_b))

    def incident(self, v: Vertex) -> tuple[int, ...]:
        """Edge ids incident with ``v`` in increasing order."""
        self._check_vertex(v)
        inc_a, inc_b = self._incidence
        return inc_a[v.index] if v.side == A else inc_b[v.index]

    def degree(self, v: Vertex) -> int:
        return len(self.incident(v))

    def degrees(self) -> dict[Vertex, int]:
        inc_a, inc_b = self._incidence
        out = {Vertex(A, i): len(e) for i, e in enumerate(inc_a)}
        out.update({Vertex(B, j): len(e) for j, e in enumerate(inc_b)})
        return out

    def ends(self, eid: int) -> tuple[Vertex, Vertex]:
        self._check_edge(eid)
        a, b = self.edges[eid]
        return Vertex(A, a), Vertex(B, b)

    def other_end(self, eid: int, v: Vertex) -> Vertex:
        x, y = self.ends(eid)
        if v == x:
            return y
        if v == y:
            return x
        raise NotPresent(f"vertex {v!r} is not an end of edge {eid}")

    def neighbors(self, v: Vertex) -> list[Vertex]:
        """Neighbours of ``v`` listed once per incident edge (multiplicity kept)."""
        return [self.other_end(e, v) for e in self.incident(v)]

    def neighbor_set(self, v: Vertex) -> set[Vertex]:
        return set(self.neighbors(v))

    def edges_between(self, u: Vertex, v: Vertex) -> list[int]:
        return [e for e in self.incident(u) if self.other_end(e, u) == v]

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        return bool(self.edges_between(u, v))

    @cached_property
    def is_simple(self) -> bool:
        return len(set(self.edges)) == len(self.edges)

    @property
    def max_degree(self) -> int:
        return max(self.degrees().values(), default=0)

    @property
    def min_degree(self) -> int:
        return min(self.degrees().values(), default=0)

    @cached_property
    def adjacency_masks(self) -> tuple[int, ...]:
        """For each A-vertex, the bitmask of its B-neighbours (parallel edges collapse)."""
        masks = [0] * self.a_count
        for a, b in self.edges:
            masks[a] |= 1 << b
        return tuple(masks)

    def __repr__(self):
        return f"BipGraph(a={self.a_count}, b={self.b_count}, m={self.m})"


def build(a_count: int, b_count: int, edges: Iterable[tuple[int, int]]) -> BipGraph:
    return BipGraph(a_count, b_count, tuple(edges))


@dataclass(frozen=True)
class Derived:
    """A graph derived from a parent together with maps back to the parent.

    ``vertex_map`` sends each vertex of ``graph`` to the parent vertex it came
    from, ``edge_map`` does the same for edge ids.
    """

    graph: BipGraph
    vertex_map: dict = field(default_factory=dict)
    edge_map: dict = field(default_factory=dict)

    def from_parent(self) -> dict[Vertex, Vertex]:
        return {old: new for new, old in self.vertex_map.items()}

    def edge_from_parent(self) -> dict[int, int]:
        return {old: new for new, old in self.edge_map.items()}


def _restrict(g: BipGraph, keep_vertices: set[Vertex], keep_edges: Iterable[int]) -> Derived:
    a_old = sorted(v.index for v in keep_vertices if v.side == A)
    b_old = sorted(v.index for v in keep_vertices if v.side == B)
    a_new = {old: new for new, old in enumerate(a_old)}
    b_new = {old: new for new, old in enumerate(b_old)}
    edges = []
    edge_map = {}
    for eid in sorted(keep_edges):
        a, b = g.edges[eid]
        edge_map[len(edges)] = eid
        edges.append((a_new[a], b_new[b]))
    vmap = {Vertex(A, new): Vertex(A, old) for old, new in a_new.items()}
    vmap.update({Vertex(B, new): Vertex(B, old) for old, new in b_new.items()})
    return Derived(BipGraph(len(a_old), len(b_old), tuple(edges)), vmap, edge_map)


def remove(g: BipGraph, vertices: Iterable[Vertex] = (), edges: Iterable[int] = ()) -> Derived:
    """Delete vertices (with their incident edges) and edges.

    Surviving vertices keep their relative order within each class; surviving
    edges keep their relative order.
    """
    dead_v = set(vertices)
    for v in dead_v:
        g._check_vertex(v)
    dead_e = set(edges)
    for e in dead_e:
        g._check_edge(e)
    keep_v = {v for v in g.vertices() if v not in dead_v}
    keep_e = []
    for eid in range(g.m):
        if eid in dead_e:
            continue
        x, y = g.ends(eid)
        if x in keep_v and y in keep_v:
            keep_e.append(eid)
    return _restrict(g, keep_v, keep_e)


def induced_subgraph(g: BipGraph, vertices: Iterable[Vertex]) -> Derived:
    keep = set(vertices)
    for v in keep:
        g._check_vertex(v)
    return remove(g, [v for v in g.vertices() if v not in keep])


def edge_subgraph(g: BipGraph, edge_ids: Iterable[int]) -> Derived:
    """Subgraph formed by the given edges and their ends."""
    eids = set(edge_ids)
    verts: set[Vertex] = set()
    for e in eids:
        verts.update(g.ends(e))
    return _restrict(g, verts, eids)


def _component_sets(g: BipGraph, skip_edges: frozenset = frozenset()) -> list[list[Vertex]]:
    seen: set[Vertex] = set()
    comps = []
    for s in g.vertices():
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for e in g.incident(v):
                if e in skip_edges:
                    continue
                w = g.other_end(e, v)
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comps.append(comp)
    return comps


def components(g: BipGraph) -> list[Derived]:
    """Connected components ordered by their smallest vertex (A-vertices first)."""
    out = []
    for comp in _component_sets(g):
        cs = set(comp)
        eids = [e for e in range(g.m) if g.ends(e)[0] in cs]
        out.append(_restrict(g, cs, eids))
    return out


def is_connected(g: BipGraph) -> bool:
    return g.n > 0 and len(_component_sets(g)) == 1


@dataclass(frozen=True)
class EdgeCut:
    """The cut ``∂(shore)``.

    ``a_count`` counts cut edges whose A-end lies in the shore and
    ``b_count`` those whose B-end lies in the shore.
    """

    shore: frozenset
    edge_ids: frozenset
    a_count: int
    b_count: int
    graph_order: int

    @property
    def size(self) -> int:
        return len(self.edge_ids)

    @property
    def is_trivial(self) -> bool:
        return len(self.shore) <= 1 or len(self.shore) >= self.graph_order - 1

    @property
    def is_balanced(self) -> bool:
        return self.a_count == self.b_count


def boundary(g: BipGraph, shore: Iterable[Vertex]) -> EdgeCut:
    w = frozenset(shore)
    for v in w:
        g._check_vertex(v)
    cut = []
    a_in = b_in = 0
    for eid, (a, b) in enumerate(g.edges):
        ina = Vertex(A, a) in w
        inb = Vertex(B, b) in w
        if ina != inb:
            cut.append(eid)
            if ina:
                a_in += 1
            else:
                b_in += 1
    return EdgeCut(w, frozenset(cut), a_in, b_in, g.n)


@dataclass(frozen=True)
class Matching:
    """A set of pairwise disjoint edges of ``graph`` given by edge id."""

    graph: BipGraph = field(repr=False)
    edge_ids: frozenset

    def __post_init__(self):
        ids = frozenset(self.edge_ids)
        object.__setattr__(self, "edge_ids", ids)
        used: set[Vertex] = set()
        for e in ids:
            x, y = self.graph.ends(e)
            if x in used or y in used:
                raise InvalidEdge(f"edge {e} shares an end with another matching edge")
            used.update((x, y))

    def __len__(self):
        return len(self.edge_ids)

    @property
    def covered(self) -> set[Vertex]:
        out: set[Vertex] = set()
        for e in self.edge_ids:
            out.update(self.graph.ends(e))
        return out

    @property
    def is_perfect(self) -> bool:
        return 2 * len(self.edge_ids) == self.graph.n

    def mate(self) -> dict[Vertex, Vertex]:
        out = {}
        for e in self.edge_ids:
            x, y = self.graph.ends(e)
            out[x] = y
            out[y] = x
        return out


def disjoint_union(*graphs: BipGraph) -> tuple[BipGraph, list[dict[Vertex, Vertex]]]:
    """Place graphs side by side; returns the union and per-input vertex maps (old -> new)."""
    a_off = b_off = 0
    edges = []
    maps = []
    for g in graphs:
        maps.append({v: Vertex(v.side, v.index + (a_off if v.side == A else b_off)) for v in g.vertices()})
        edges.extend((a + a_off, b + b_off) for a, b in g.edges)
        a_off += g.a_count
        b_off += g.b_count
    return BipGraph(a_off, b_off, tuple(edges)), maps


def to_networkx(g: BipGraph):
    import networkx as nx

    h = nx.MultiGraph()
    for v in g.vertices():
        h.add_node(v, side=v.side)
    for a, b in g.edges:
        h.add_edge(Vertex(A, a), Vertex(B, b))
    return h


def is_isomorphic(g1: BipGraph, g2: BipGraph, preserve_sides: bool = False) -> bool:
    """Graph isomorphism (parallel edges counted); optionally keep the classes fixed."""
    if g1.n != g2.n or g1.m != g2.m:
        return False
    if sorted(g1.degrees().values()) != sorted(g2.degrees().values()):
        return False
    import networkx as nx

    node_match = (lambda x, y: x["side"] == y["side"]) if preserve_sides else None
    return nx.is_isomorphic(to_networkx(g1), to_networkx(g2), node_match=node_match)


@dataclass(frozen=True)
class Tree:
    """A finite tree on vertices ``0..n-1``."""

    n: int
    edges: tuple = ()

    def __post_init__(self):
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        if self.n < 1:
            raise NotATree("a tree needs at least one vertex")
        if len(edges) != self.n - 1:
            raise NotATree(f"{self.n} vertices need {self.n - 1} edges, got {len(edges)}")
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in edges:
            if not (0 <= u < self.n and 0 <= v < self.n) or u == v:
                raise NotATree(f"bad tree edge ({u}, {v})")
            ru, rv = find(u), find(v)
            if ru == rv:
                raise NotATree("edge set contains a cycle")
            parent[ru] = rv

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(x)) for x in adj)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def leaves(self) -> list[int]:
        return [v for v in range(self.n) if len(self.adjacency[v]) == 1]

    @property
    def non_leaves(self) -> list[int]:
        return [v for v in range(self.n) if len(self.adjacency[v]) != 1]

    @property
    def is_trivial(self) -> bool:
        return self.n == 1

    def two_coloring(self) -> list[int]:
        """Proper 2-colouring with vertex 0 coloured 0."""
        color = [-1] * self.n
        color[0] = 0
        stack = [0]
        while stack:
            v = stack.pop()
            for w in self.adjacency[v]:
                if color[w] < 0:
                    color[w] = 1 - color[v]
                    stack.append(w)
        return color

    def to_networkx(self):
        import networkx as nx

        h = nx.Graph()
        h.add_nodes_from(range(self.n))
        h.add_edges_from(self.edges)
        return h

    @classmethod
    def star(cls, p: int) -> "Tree":
        """``K_{1,p}`` with centre 0."""
        return cls(p + 1, tuple((0, i) for i in range(1, p + 1)))

    @classmethod
    def path(cls, n: int) -> "Tree":
        return cls(n, tuple((i, i + 1) for i in range(n - 1)))

    @classmethod
    def double_star(cls, p: int, q: int) -> "Tree":
        """Centres 0 (degree ``p``) and 1 (degree ``q``) joined by an edge."""
        edges = [(0, 1)]
        nxt = 2
        for _ in range(p - 1):
            edges.append((0, nxt))
            nxt += 1
        for _ in range(q - 1):
            edges.append((1, nxt))
            nxt += 1
        return cls(nxt, tuple(edges))
