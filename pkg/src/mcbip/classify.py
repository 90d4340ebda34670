"""Degree classes, extremal-class membership and the degree-two bounds.

All comparisons are made on integers with denominators cleared, so a slack of
zero means the bound is attained exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import BipGraph, Vertex, induced_subgraph, is_connected
from .errors import DegreeTooLow, NotMinimal, PreconditionFailed
from .matching import is_matching_covered, is_minimal_mc, mc_failure, removable_edges

__all__ = [
    "DegreeProfile",
    "degree_classes",
    "degree_profile",
    "removable_edges",
    "is_minimal_mc",
    "ExtremalReport",
    "classify_extremal",
    "Bound",
    "BoundReport",
    "check_bounds",
    "IdentityReport",
    "counting_identities",
    "is_cycle",
    "is_forest",
    "max_induced_matching",
    "e2_is_perfect_matching_of_v2",
    "high_degree_forest",
]


@dataclass(frozen=True)
class DegreeProfile:
    v2: frozenset
    v3: frozenset
    e2: frozenset
    e3: frozenset
    e32: frozenset


def degree_classes(g: BipGraph) -> DegreeProfile:
    """``v2`` has degree exactly 2, ``v3`` degree at least 3; edges by their ends.

    No degree check; vertices of degree below 2 land in neither class.
    """
    deg = g.degrees()
    v2 = frozenset(v for v, d in deg.items() if d == 2)
    v3 = frozenset(v for v, d in deg.items() if d >= 3)
    e2, e3, e32 = set(), set(), set()
    for eid in range(g.m):
        x, y = g.ends(eid)
        k = (x in v2) + (y in v2)
        (e2 if k == 2 else e32 if k == 1 else e3).add(eid)
    return DegreeProfile(v2, v3, frozenset(e2), frozenset(e3), frozenset(e32))


def degree_profile(g: BipGraph) -> DegreeProfile:
    """Like :func:`degree_classes` but refuses graphs with a vertex of degree below 2."""
    for v, d in g.degrees().items():
        if d < 2:
            raise DegreeTooLow(f"vertex {v!r} has degree {d}", witness=v)
    return degree_classes(g)


def is_cycle(g: BipGraph, length: int | None = None) -> bool:
    if length is not None and g.n != length:
        return False
    return g.n >= 4 and g.m == g.n and g.is_simple and all(d == 2 for d in g.degrees().values()) and is_connected(g)


def is_forest(g: BipGraph) -> bool:
    comps = 0
    seen: set[Vertex] = set()
    for s in g.vertices():
        if s in seen:
            continue
        comps += 1
        stack = [s]
        seen.add(s)
        while stack:
            v = stack.pop()
            for w in g.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
    return g.m == g.n - comps


@dataclass(frozen=True)
class ExtremalReport:
    """Degree counts, membership in the five extremal classes and the slack of each defining equality."""

    n: int
    m: int
    v2: int
    e2: int
    v3: int
    e3: int
    e32: int
    is_minimal_mc: bool
    h0: bool
    h1: bool
    h2: bool
    h3: bool
    h4: bool
    slacks: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"h0": self.h0, "h1": self.h1, "h2": self.h2, "h3": self.h3, "h4": self.h4}

    def to_json(self) -> dict:
        out = {k: getattr(self, k) for k in ("n", "m", "v2", "e2", "v3", "e3", "e32", "is_minimal_mc")}
        out["flags"] = self.as_dict()
        out["slacks"] = dict(self.slacks)
        return out


def _slacks(g: BipGraph, dc: DegreeProfile) -> dict[str, int]:
    n, m = g.n, g.m
    e2, v2 = len(dc.e2), len(dc.v2)
    return {
        "h0": e2 - (m - n + 2),
        "h1": 6 * e2 - (n + 10),
        "h2": v2 - 2 * (m - n + 2),
        "h3": 2 * v2 - (n + 4),
        "h4": (3 * n - 6) - 2 * m,
    }


def _require_minimal(g: BipGraph) -> None:
    if not is_matching_covered(g):
        raise NotMinimal(f"not matching covered: {mc_failure(g)}")
    if not is_minimal_mc(g):
        raise NotMinimal("graph has a removable edge")


def classify_extremal(g: BipGraph, assume_minimal: bool = False) -> ExtremalReport:
    """Counts and class flags for a minimal matching-covered graph; anything else raises NotMinimal."""
    if not assume_minimal:
        _require_minimal(g)
    dc = degree_classes(g)
    s = _slacks(g, dc)
    return ExtremalReport(
        n=g.n,
        m=g.m,
        v2=len(dc.v2),
        e2=len(dc.e2),
        v3=len(dc.v3),
        e3=len(dc.e3),
        e32=len(dc.e32),
        is_minimal_mc=True,
        h0=s["h0"] == 0,
        h1=s["h1"] == 0,
        h2=s["h2"] == 0,
        h3=s["h3"] == 0,
        h4=s["h4"] == 0,
        slacks=s,
    )


@dataclass(frozen=True)
class Bound:
    name: str
    holds: bool
    slack: int
    exempt: bool = False


@dataclass(frozen=True)
class BoundReport:
    bounds: tuple
    induced_matching: tuple = ()

    def __getitem__(self, name: str) -> Bound:
        for b in self.bounds:
            if b.name == name:
                return b
        raise KeyError(name)

    @property
    def all_hold(self) -> bool:
        return all(b.holds or b.exempt for b in self.bounds)


def max_induced_matching(g: BipGraph, edge_ids) -> tuple[int, ...]:
    """A largest set of the given edges that forms an induced matching of ``g``."""
    eids = sorted(edge_ids)
    ends = {e: g.ends(e) for e in eids}
    conflict: dict[int, set[int]] = {e: set() for e in eids}
    for i, e in enumerate(eids):
        a, b = ends[e]
        for f in eids[i + 1:]:
            c, d = ends[f]
            if {a, b} & {c, d} or g.has_edge(a, d) or g.has_edge(c, b):
                conflict[e].add(f)
                conflict[f].add(e)
    best: list[int] = []

    def rec(cands: list[int], chosen: list[int]):
        nonlocal best
        if len(chosen) + len(cands) <= len(best):
            return
        if not cands:
            best = list(chosen)
            return
        e = cands[0]
        rest = cands[1:]
        rec([f for f in rest if f not in conflict[e]], chosen + [e])
        if conflict[e] & set(rest):
            rec(rest, chosen)

    rec(eids, [])
    return tuple(sorted(best))


def check_bounds(g: BipGraph, assume_minimal: bool = False) -> BoundReport:
    """Evaluate the five lower/upper bounds for a minimal matching-covered graph.

    The size bound ``2m <= 3n - 6`` and the 2-edge bound do not apply to C4.
    The 2-edge bound is also certified by an explicit induced matching of
    2-edges with at least ``m - n + 2`` edges.
    """
    if not assume_minimal:
        _require_minimal(g)
    dc = degree_classes(g)
    s = _slacks(g, dc)
    c4 = is_cycle(g, 4)
    im = () if c4 else max_induced_matching(g, dc.e2)
    bounds = (
        Bound("e2_lower", s["h0"] >= 0 and len(im) >= g.m - g.n + 2, s["h0"], exempt=c4),
        Bound("e2_linear", s["h1"] >= 0, s["h1"]),
        Bound("v2_lower", s["h2"] >= 0, s["h2"]),
        Bound("v2_linear", s["h3"] >= 0, s["h3"]),
        Bound("size_upper", s["h4"] >= 0, s["h4"], exempt=c4),
    )
    return BoundReport(bounds, im)


@dataclass(frozen=True)
class IdentityReport:
    """Left and right sides of each counting identity for graphs attaining the ``v2`` bound."""

    values: dict

    @property
    def all_hold(self) -> bool:
        return all(lhs == rhs for lhs, rhs in self.values.values())


def counting_identities(g: BipGraph, assume_minimal: bool = False) -> IdentityReport:
    if not assume_minimal:
        _require_minimal(g)
    if is_cycle(g, 4):
        raise PreconditionFailed("the identities exclude C4")
    dc = degree_classes(g)
    if len(dc.v2) != 2 * (g.m - g.n + 2):
        raise PreconditionFailed("graph does not attain the degree-two vertex bound")
    n, m = g.n, g.m
    return IdentityReport({
        "v3": (len(dc.v3), 3 * n - 2 * m - 4),
        "e32": (len(dc.e32), 2 * m - 2 * n + 4),
        "e3": (len(dc.e3), 3 * n - 2 * m - 6),
        "e3_vs_v3": (len(dc.e3), len(dc.v3) - 2),
    })


def e2_is_perfect_matching_of_v2(g: BipGraph) -> bool:
    """Whether the 2-edges form a perfect matching of the subgraph induced by degree-two vertices."""
    dc = degree_classes(g)
    hit: dict[Vertex, int] = {}
    for e in dc.e2:
        for v in g.ends(e):
            hit[v] = hit.get(v, 0) + 1
    return set(hit) == set(dc.v2) and all(c == 1 for c in hit.values())


def high_degree_forest(g: BipGraph, threshold: int = 3) -> bool:
    """Whether vertices of degree at least ``threshold`` induce a forest."""
    keep = [v for v, d in g.degrees().items() if d >= threshold]
    return is_forest(induced_subgraph(g, keep).graph)
