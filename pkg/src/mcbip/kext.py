"""k-extendability with two independent engines, minimality, connectivity and bound reports.

Both engines work on the underlying simple graph, since parallel edges do not
change which matchings extend.  The direct engine enumerates k-matchings and
tries to extend each one; the Hall engine checks that every nonempty
``S ⊆ A`` has ``N(S) = B`` or ``|N(S)| >= |S| + k``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .core import A, B, BipGraph, Vertex, induced_subgraph, is_connected, remove
from .classify import is_forest
from .errors import BudgetExceeded, EngineDisagreement, NotKExtendable, NotMinimalKExtendable, PreconditionFailed, TooLarge
from .matching import has_perfect_matching, masks_have_perfect_matching

__all__ = [
    "KExtendReport",
    "is_k_extendable",
    "superfluous_edges",
    "is_minimal_k_extendable",
    "essential_edge_connectivity",
    "nontrivial_cuts_of_size",
    "KBound",
    "BoundsReport",
    "bounds_report",
    "HereditaryReport",
    "hereditary_checks",
]

DIRECT_BUDGET = 2_000_000  # k-matchings tried before giving up
HALL_CLASS_BUDGET = 20


@dataclass(frozen=True)
class KExtendReport:
    """Verdict with its certificate.

    On failure exactly one of ``reason`` (a basic condition), ``failing_matching``
    (edge ids of a k-matching that does not extend) or ``violator`` (``S`` and
    ``N(S)``) explains why.
    """

    k: int
    verdict: bool
    engine: str
    reason: str = ""
    failing_matching: tuple = ()
    violator: tuple | None = None
    checked: int = 0

    def __bool__(self):
        return self.verdict

    def validate(self, g: BipGraph) -> bool:
        """Re-check a negative certificate independently of the engine that produced it."""
        if self.verdict or self.reason:
            return True
        if self.failing_matching:
            ends = [v for e in self.failing_matching for v in g.ends(e)]
            if len(set(ends)) != 2 * self.k:
                return False
            return not has_perfect_matching(remove(g, ends).graph)
        s, ns = self.violator
        nbrs = set()
        for v in s:
            nbrs.update(g.neighbors(v))
        return nbrs == set(ns) and len(ns) < g.b_count and len(ns) < len(s) + self.k


def _basic_failure(g: BipGraph, k: int) -> str:
    if g.a_count != g.b_count:
        return "classes differ in size"
    if g.n < 2 * k + 2:
        return f"order {g.n} is below 2k+2 = {2 * k + 2}"
    if not is_connected(g):
        return "disconnected"
    return ""


def _simple_edges(g: BipGraph) -> list[tuple[int, int, int]]:
    """(a, b, smallest edge id) for each adjacent pair, in edge-id order."""
    seen = {}
    for eid, (a, b) in enumerate(g.edges):
        seen.setdefault((a, b), eid)
    return sorted(((a, b, e) for (a, b), e in seen.items()), key=lambda x: x[2])


def _direct(g: BipGraph, k: int, budget: int) -> KExtendReport:
    edges = _simple_edges(g)
    masks = g.adjacency_masks
    full_a = (1 << g.a_count) - 1
    full_b = (1 << g.b_count) - 1
    memo: dict[tuple[int, int], bool] = {}
    count = 0
    chosen: list[int] = []

    def rec(start: int, used_a: int, used_b: int):
        nonlocal count
        if len(chosen) == k:
            count += 1
            if count > budget:
                raise BudgetExceeded(f"direct engine tried {budget} matchings of size {k}")
            key = (used_a, used_b)
            ok = memo.get(key)
            if ok is None:
                ok = masks_have_perfect_matching(masks, full_a & ~used_a, full_b & ~used_b)
                memo[key] = ok
            return None if ok else tuple(chosen)
        for i in range(start, len(edges)):
            a, b, e = edges[i]
            if used_a >> a & 1 or used_b >> b & 1:
                continue
            chosen.append(e)
            bad = rec(i + 1, used_a | 1 << a, used_b | 1 << b)
            chosen.pop()
            if bad is not None:
                return bad
        return None

    bad = rec(0, 0, 0)
    if bad is not None:
        return KExtendReport(k, False, "direct", failing_matching=bad, checked=count)
    if count == 0:
        return KExtendReport(k, False, "direct", reason=f"no matching of size {k}")
    return KExtendReport(k, True, "direct", checked=count)


def _hall(g: BipGraph, k: int) -> KExtendReport:
    if g.a_count > HALL_CLASS_BUDGET:
        raise BudgetExceeded(f"Hall engine handles classes of at most {HALL_CLASS_BUDGET} vertices")
    masks = g.adjacency_masks
    full_b = (1 << g.b_count) - 1
    size = 1 << g.a_count
    nbr = [0] * size
    for s in range(1, size):
        low = s & -s
        nb = nbr[s ^ low] | masks[low.bit_length() - 1]
        nbr[s] = nb
        if nb != full_b and nb.bit_count() < s.bit_count() + k:
            subset = tuple(Vertex(A, i) for i in range(g.a_count) if s >> i & 1)
            hood = tuple(Vertex(B, j) for j in range(g.b_count) if nb >> j & 1)
            return KExtendReport(k, False, "hall", violator=(subset, hood), checked=s)
    return KExtendReport(k, True, "hall", checked=size - 1)


def is_k_extendable(g: BipGraph, k: int, engine: str = "both", budget: int = DIRECT_BUDGET) -> KExtendReport:
    """Decide k-extendability.

    ``k = 0`` means matchable, with connectivity and order not required.
    ``engine`` is ``"direct"``, ``"hall"`` or ``"both"``; with ``"both"`` a
    disagreement raises :class:`EngineDisagreement`.  ``budget`` caps the
    number of k-matchings the direct engine tries.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if engine not in ("direct", "hall", "both"):
        raise ValueError(f"unknown engine {engine!r}")
    if k == 0:
        ok = has_perfect_matching(g)
        return KExtendReport(0, ok, engine, reason="" if ok else "not matchable")
    why = _basic_failure(g, k)
    if why:
        return KExtendReport(k, False, engine, reason=why)
    if engine == "direct":
        return _direct(g, k, budget)
    if engine == "hall":
        return _hall(g, k)
    d = _direct(g, k, budget)
    h = _hall(g, k)
    if d.verdict != h.verdict:
        raise EngineDisagreement(f"direct={d.verdict} hall={h.verdict} for k={k}", witness=(g, d, h))
    return d if not d.verdict else h


def nontrivial_cuts_of_size(g: BipGraph, size: int, limit: int = 16) -> list[frozenset]:
    """Edge sets of all nontrivial cuts with exactly ``size`` edges (exhaustive over shores)."""
    if g.n > limit:
        raise TooLarge(f"exhaustive shore enumeration is limited to {limit} vertices")
    out = set()
    for shore, cut in _shores(g):
        if len(cut) == size:
            out.add(cut)
    return sorted(out, key=sorted)


def _vertex_list(g: BipGraph) -> list[Vertex]:
    return list(g.vertices())


def _shores(g: BipGraph):
    """Yield ``(shore bitmask, cut edge ids)`` for every nontrivial shore containing vertex 0."""
    verts = _vertex_list(g)
    pos = {v: i for i, v in enumerate(verts)}
    ends = [(pos[x], pos[y]) for x, y in (g.ends(e) for e in range(g.m))]
    n = g.n
    for rest in range(1 << (n - 1)):
        shore = (rest << 1) | 1
        size = shore.bit_count()
        if size < 2 or size > n - 2:
            continue
        cut = frozenset(e for e, (x, y) in enumerate(ends) if (shore >> x & 1) != (shore >> y & 1))
        yield shore, cut


def _cut_size_fast(nbr: list[int], shore: int) -> int:
    total = 0
    s = shore
    while s:
        low = s & -s
        s ^= low
        total += (nbr[low.bit_length() - 1] & ~shore).bit_count()
    return total


def essential_edge_connectivity(g: BipGraph, exhaustive_limit: int = 16) -> int:
    """Smallest number of edges in a nontrivial cut (both shores with at least two vertices).

    Exhaustive over shores containing the first vertex when ``n <= exhaustive_limit``;
    otherwise by maximum flow between every pair ``{v0, s}`` and pair ``{t1, t2}``.
    """
    if g.n < 4:
        raise PreconditionFailed("needs at least four vertices")
    if g.n <= exhaustive_limit:
        if g.is_simple:
            verts = _vertex_list(g)
            pos = {v: i for i, v in enumerate(verts)}
            nbr = [0] * g.n
            for x, y in (g.ends(e) for e in range(g.m)):
                nbr[pos[x]] |= 1 << pos[y]
                nbr[pos[y]] |= 1 << pos[x]
            best = g.m
            for rest in range(1 << (g.n - 1)):
                shore = (rest << 1) | 1
                if 2 <= shore.bit_count() <= g.n - 2:
                    best = min(best, _cut_size_fast(nbr, shore))
            return best
        return min(len(cut) for _, cut in _shores(g))
    return _flow_essential(g)


def _flow_essential(g: BipGraph) -> int:
    import networkx as nx

    verts = _vertex_list(g)
    cap: dict[tuple[Vertex, Vertex], int] = {}
    for e in range(g.m):
        x, y = g.ends(e)
        cap[(x, y)] = cap.get((x, y), 0) + 1
        cap[(y, x)] = cap.get((y, x), 0) + 1
    base = nx.DiGraph()
    for (x, y), c in cap.items():
        base.add_edge(x, y, capacity=c)
    best = g.m
    v0 = verts[0]
    for s in verts[1:]:
        for t1, t2 in combinations([v for v in verts if v not in (v0, s)], 2):
            h = base.copy()
            for v in (v0, s):
                h.add_edge("src", v)
            for v in (t1, t2):
                h.add_edge(v, "snk")
            best = min(best, nx.maximum_flow_value(h, "src", "snk"))
    return best


def superfluous_edges(g: BipGraph, k: int) -> frozenset:
    """Edges whose deletion keeps ``g`` k-extendable.

    On simple graphs an edge with an end of degree ``k + 1`` or lying in a
    nontrivial ``2k``-cut is rejected without a recheck.
    """
    rep = is_k_extendable(g, k)
    if not rep:
        raise NotKExtendable(rep.reason or "some k-matching does not extend", witness=rep)
    deg = g.degrees()
    blocked: set[int] = set()
    if g.is_simple and k >= 1:
        for e in range(g.m):
            x, y = g.ends(e)
            if deg[x] == k + 1 or deg[y] == k + 1:
                blocked.add(e)
        if g.n <= 16 and len(blocked) < g.m:
            for cut in nontrivial_cuts_of_size(g, 2 * k):
                blocked.update(cut)
    out = set()
    for e in range(g.m):
        if e in blocked:
            continue
        if is_k_extendable(remove(g, edges=[e]).graph, k):
            out.add(e)
    return frozenset(out)


def is_minimal_k_extendable(g: BipGraph, k: int) -> bool:
    if not is_k_extendable(g, k):
        return False
    return not superfluous_edges(g, k)


@dataclass(frozen=True)
class KBound:
    """``quantity sense bound`` with denominators cleared; ``slack >= 0`` iff it holds."""

    name: str
    quantity: int
    sense: str
    bound: int
    conjecture: bool = False

    @property
    def slack(self) -> int:
        return self.quantity - self.bound if self.sense == ">=" else self.bound - self.quantity

    @property
    def holds(self) -> bool:
        return self.slack >= 0

    def label(self) -> str:
        tag = "CONJECTURE " if self.conjecture else ""
        return f"{tag}{self.name}: {self.quantity} {self.sense} {self.bound} (slack {self.slack})"


@dataclass(frozen=True)
class BoundsReport:
    k: int
    forest: bool
    bounds: tuple
    size_threshold_reached: bool = False  # n >= 4k^2 + 2k, where the size conjecture is claimed
    extra: dict = field(default_factory=dict)

    def __getitem__(self, name: str) -> KBound:
        for b in self.bounds:
            if b.name == name:
                return b
        raise KeyError(name)

    @property
    def theorems_hold(self) -> bool:
        return self.forest and all(b.holds for b in self.bounds if not b.conjecture)


def bounds_report(g: BipGraph, k: int, assume_minimal: bool = False) -> BoundsReport:
    """Proven bounds and conjectured bounds for a minimal k-extendable graph."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if not assume_minimal and not is_minimal_k_extendable(g, k):
        raise NotMinimalKExtendable(f"graph is not minimal {k}-extendable")
    deg = g.degrees()
    low = sum(1 for d in deg.values() if d == k + 1)
    high = [v for v, d in deg.items() if d >= k + 2]
    n, m = g.n, g.m
    forest = is_forest(induced_subgraph(g, high).graph)
    bounds = (
        KBound("low_degree_vs_order", (2 * k + 1) * low, ">=", k * n + 2),
        KBound("low_degree_vs_excess", k * low, ">=", m - n + 1),
        KBound("size", m, "<=", (k + 1) * n - 1),
        KBound("low_degree_vs_excess_sharp", (2 * k - 1) * low, ">=", 2 * (m - n + 2 * k), conjecture=True),
        KBound("low_degree_half_order", 2 * low, ">=", n + 4, conjecture=True),
        KBound("size_sharp", 2 * m, "<=", (2 * k + 1) * (n - 2 * k), conjecture=True),
    )
    return BoundsReport(k, forest, bounds, n >= 4 * k * k + 2 * k, {"low_degree_count": low})


@dataclass(frozen=True)
class HereditaryReport:
    k: int
    vertex_pairs_checked: int
    edge_pairs_checked: int
    failures: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.failures


def hereditary_checks(g: BipGraph, k: int) -> HereditaryReport:
    """Check that ``g - a - b`` and suitable ``g - e - e'`` are all (k-1)-extendable."""
    if k < 1:
        raise ValueError("k must be at least 1")
    rep = is_k_extendable(g, k)
    if not rep:
        raise NotKExtendable(rep.reason or "some k-matching does not extend", witness=rep)
    failures = []
    vp = 0
    for i in range(g.a_count):
        for j in range(g.b_count):
            vp += 1
            if not is_k_extendable(remove(g, [Vertex(A, i), Vertex(B, j)]).graph, k - 1):
                failures.append(("vertices", Vertex(A, i), Vertex(B, j)))
    ep = 0
    for e in range(g.m):
        a, b = g.ends(e)
        for f in range(e + 1, g.m):
            c, d = g.ends(f)
            if a == c or b == d:
                continue
            if not (g.has_edge(a, d) or g.has_edge(c, b)):
                continue
            ep += 1
            if not is_k_extendable(remove(g, edges=[e, f]).graph, k - 1):
                failures.append(("edges", e, f))
    return HereditaryReport(k, vp, ep, tuple(failures))
