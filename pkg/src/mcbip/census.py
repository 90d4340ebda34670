"""Isomorph-free enumeration of small bipartite graphs and the census that checks every bound on them.

A graph is stored as the biadjacency matrix of its smaller class: one row per
vertex, as a ``width``-bit integer with column 0 in the most significant bit.
The canonical form is the lexicographically smallest row sequence over all
row and column permutations (and the transpose when the classes are equal).
For a fixed row order the best column order is forced: refine the columns
into cells by the rows seen so far and push the ones of each new row to the
low end of every cell.  So only row orders are searched.

Generation is orderly: rows are appended one at a time in that column-sorted
form and a prefix is kept only if it is already canonical as a partial
matrix.  Canonicity of prefixes is hereditary, so every class is produced
exactly once without remembering earlier output, and subtrees of the search
can be handed to independent workers.
"""

from __future__ import annotations

import json
import time
from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterator

from .classify import (
    check_bounds,
    classify_extremal,
    counting_identities,
    e2_is_perfect_matching_of_v2,
    high_degree_forest,
    is_cycle,
)
from .core import BipGraph
from .errors import BudgetExceeded, PreconditionFailed
from .kext import bounds_report, essential_edge_connectivity, is_k_extendable, superfluous_edges
from .matching import is_matching_covered, is_minimal_mc
from .recognize import recognize_h0, recognize_h1, recognize_h2, recognize_h3, recognize_h4

__all__ = [
    "MAX_N",
    "canonical_form",
    "encode",
    "decode",
    "graph_from_rows",
    "enumerate_bipartite",
    "mc_size_filter",
    "CensusRecord",
    "CensusSummary",
    "census_record",
    "run_census",
    "THETA_CANONICAL",
]

MAX_N = 12


# --- canonical form -------------------------------------------------------------


def _project(x: int, cells: list[int]) -> tuple[int, list[int]]:
    """Row ``x`` rewritten with its ones at the low end of every cell, and the refined cells."""
    s = 0
    new = []
    for c in cells:
        size = c.bit_count()
        ones = (x & c).bit_count()
        s = (s << size) | ((1 << ones) - 1)
        z = c & ~x
        w = c & x
        if z:
            new.append(z)
        if w:
            new.append(w)
    return s, new


def _smaller_exists(rows: list[int], target: list[int], width: int) -> bool:
    """Whether some ordering of ``rows`` yields a sequence below ``target`` (compared on its length)."""
    depth_max = len(target)

    def dfs(depth: int, cells: list[int], used: int) -> bool:
        seen = set()
        want = target[depth]
        for i, x in enumerate(rows):
            if used >> i & 1 or x in seen:
                continue
            seen.add(x)
            s, nc = _project(x, cells)
            if s < want:
                return True
            if s == want and depth + 1 < depth_max and dfs(depth + 1, nc, used | 1 << i):
                return True
        return False

    return dfs(0, [(1 << width) - 1], 0)


def _min_rows(rows: list[int], width: int) -> tuple[int, ...]:
    best: list[int] | None = None

    def dfs(depth: int, cells: list[int], used: int, acc: list[int]) -> None:
        nonlocal best
        if depth == len(rows):
            if best is None or acc < best:
                best = list(acc)
            return
        options = {}
        for i, x in enumerate(rows):
            if used >> i & 1 or x in options:
                continue
            options[x] = (i, *_project(x, cells))
        low = min(s for _, s, _ in options.values())
        if best is not None:
            prefix = acc + [low]
            if prefix > best[: depth + 1]:
                return
        for i, s, nc in options.values():
            if s == low:
                acc.append(s)
                dfs(depth + 1, nc, used | 1 << i, acc)
                acc.pop()

    dfs(0, [(1 << width) - 1], 0, [])
    return tuple(best or ())


def _rows_of(g: BipGraph, transpose: bool) -> tuple[list[int], int]:
    if not transpose:
        width = g.b_count
        rows = [0] * g.a_count
        for a, b in g.edges:
            rows[a] |= 1 << (width - 1 - b)
    else:
        width = g.a_count
        rows = [0] * g.b_count
        for a, b in g.edges:
            rows[b] |= 1 << (width - 1 - a)
    return rows, width


def canonical_form(g: BipGraph) -> tuple[int, int, tuple[int, ...]]:
    """``(rows, width, matrix)``: an isomorphism invariant that separates classes.

    Only simple graphs have one; sides may be exchanged, so ``K_{2,3}`` drawn
    either way gets the same form.
    """
    if not g.is_simple:
        raise PreconditionFailed("canonical forms are defined for simple graphs only")
    if g.a_count < g.b_count:
        rows, width = _rows_of(g, False)
        return len(rows), width, _min_rows(rows, width)
    if g.a_count > g.b_count:
        rows, width = _rows_of(g, True)
        return len(rows), width, _min_rows(rows, width)
    r1, w = _rows_of(g, False)
    r2, _ = _rows_of(g, True)
    return len(r1), w, min(_min_rows(r1, w), _min_rows(r2, w))


def encode(form: tuple[int, int, tuple[int, ...]]) -> str:
    """Compact text for a canonical form, e.g. ``"3x5:0f,13,1c"``."""
    a, b, rows = form
    return f"{a}x{b}:" + ",".join(format(r, "x") for r in rows)


def decode(text: str) -> BipGraph:
    head, _, body = text.partition(":")
    a, b = (int(x) for x in head.split("x"))
    rows = [int(x, 16) for x in body.split(",")] if body else []
    if len(rows) != a:
        raise ValueError(f"expected {a} rows in {text!r}")
    return graph_from_rows(rows, b)


def graph_from_rows(rows, width: int) -> BipGraph:
    edges = [(i, j) for i, r in enumerate(rows) for j in range(width) if r >> (width - 1 - j) & 1]
    return BipGraph(len(rows), width, tuple(edges))


# --- generation -------------------------------------------------------------------


def _row_candidates(cells: list[int]) -> list[int]:
    opts = [0]
    for c in cells:
        low = c & -c
        new = []
        for ones in range(c.bit_count() + 1):
            piece = ((1 << ones) - 1) * low
            new.extend(v | piece for v in opts)
        opts = new
    return sorted(opts)


def _complete(rows: list[int], a: int, width: int) -> bool:
    """Leaf test: every column has two ones, the graph is connected, and the transpose is not smaller."""
    for j in range(width):
        bit = 1 << j
        if sum(1 for r in rows if r & bit) < 2:
            return False
    seen_r, seen_c = 1, rows[0]
    changed = True
    while changed:
        changed = False
        for i, r in enumerate(rows):
            if not seen_r >> i & 1 and r & seen_c:
                seen_r |= 1 << i
                seen_c |= r
                changed = True
    if seen_r != (1 << a) - 1 or seen_c != (1 << width) - 1:
        return False
    if a == width:
        cols = [sum(((rows[i] >> (width - 1 - j)) & 1) << (a - 1 - i) for i in range(a)) for j in range(width)]
        if _smaller_exists(cols, rows, a):
            return False
    return True


def _generate(a: int, width: int, max_m: int | None, shard: tuple[int, int]) -> Iterator[tuple[int, ...]]:
    index, count = shard
    split_depth = min(2, a)
    node = 0

    def rec(rows: list[int], cells: list[int], m: int):
        nonlocal node
        t = len(rows)
        if t == split_depth:
            node += 1
            if (node - 1) % count != index:
                return
        if t == a:
            if _complete(rows, a, width):
                yield tuple(rows)
            return
        for x in _row_candidates(cells):
            ones = x.bit_count()
            if ones < 2:
                continue
            if max_m is not None and m + ones + 2 * (a - t - 1) > max_m:
                continue
            nr = rows + [x]
            if _smaller_exists(nr, nr, width):
                continue
            _, nc = _project(x, cells)
            yield from rec(nr, nc, m + ones)

    yield from rec([], [(1 << width) - 1], 0)


def mc_size_filter(margin: int = 0) -> Callable[[int], int]:
    """Edge cap ``(3n - 6) // 2 + margin``, except that C4 is always admitted."""
    return lambda n: max((3 * n - 6) // 2 + margin, 4 if n == 4 else 0)


def enumerate_bipartite(
    max_n: int,
    min_n: int = 4,
    max_edges: Callable[[int], int] | None = None,
    shard: tuple[int, int] = (0, 1),
    budget: int = MAX_N,
) -> Iterator[BipGraph]:
    """One graph per isomorphism class of connected simple bipartite graphs with minimum degree 2.

    Output is ordered by ``n``, then by the size of the smaller class.
    ``max_edges(n)`` optionally caps the size.  ``shard = (i, s)`` keeps only
    the search subtrees whose index is ``i`` mod ``s``; the ``s`` shards
    partition the output.
    """
    if max_n > budget:
        raise BudgetExceeded(f"max_n = {max_n} exceeds the budget {budget}")
    if not 0 <= shard[0] < shard[1]:
        raise ValueError("shard must be (index, count) with 0 <= index < count")
    for n in range(max(min_n, 4), max_n + 1):
        cap = max_edges(n) if max_edges else None
        for a in range(2, n // 2 + 1):
            for rows in _generate(a, n - a, cap, shard):
                yield graph_from_rows(rows, n - a)


# --- census -----------------------------------------------------------------------


THETA_CANONICAL = "4x4:3,5,9,e"


@dataclass
class CensusRecord:
    """One census graph: identity, matching-covered data and per-k extendability."""

    canonical: str
    n: int
    m: int
    minimal_mc: bool
    flags: dict | None = None
    slacks: dict | None = None
    recognizers_agree: bool | None = None
    kext: dict = field(default_factory=dict)
    essential_connectivity: int | None = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


@dataclass
class CensusSummary:
    schema: int
    max_n: int
    k_max: int
    mc_max_n: int
    graphs: int
    counts: dict
    violations: list
    conjecture_failures: list
    conjecture_min_slack: dict
    theta_h3_h4: list
    theta_h1_h2: list
    runtime_seconds: float = 0.0

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2)


def _mc_part(g: BipGraph, rec: CensusRecord, violations: list) -> None:
    tag = rec.canonical
    if not is_matching_covered(g) or not is_minimal_mc(g):
        return
    rec.minimal_mc = True
    rep = classify_extremal(g, assume_minimal=True)
    rec.flags = rep.as_dict()
    rec.slacks = dict(rep.slacks)
    bounds = check_bounds(g, assume_minimal=True)
    for b in bounds.bounds:
        if not (b.holds or b.exempt):
            violations.append({"graph": tag, "check": b.name, "slack": b.slack})
    if not high_degree_forest(g):
        violations.append({"graph": tag, "check": "degree_three_forest"})
    c4 = is_cycle(g, 4)
    c6 = is_cycle(g, 6)
    f = rec.flags
    if f["h2"] and not c4:
        if not e2_is_perfect_matching_of_v2(g):
            violations.append({"graph": tag, "check": "e2_perfect_matching_of_v2"})
        if not counting_identities(g, assume_minimal=True).all_hold:
            violations.append({"graph": tag, "check": "counting_identities"})
    poset = {
        "h2_minus_c4_in_h0": not (f["h2"] and not c4) or f["h0"],
        "h3_in_h2": not f["h3"] or f["h2"],
        "h4_minus_c6_in_h2": not (f["h4"] and not c6) or f["h2"],
        "h1_in_h0": not f["h1"] or f["h0"],
    }
    for name, ok in poset.items():
        if not ok:
            violations.append({"graph": tag, "check": name})
    seen = {
        "h0": bool(recognize_h0(g)),
        "h1": bool(recognize_h1(g)),
        "h2": recognize_h2(g) is not None,
        "h3": recognize_h3(g) is not None,
        "h4": recognize_h4(g) is not None,
    }
    rec.recognizers_agree = seen == f
    if not rec.recognizers_agree:
        violations.append({"graph": tag, "check": "recognizer_agreement", "flags": f, "recognized": seen})


def _kext_part(g: BipGraph, rec: CensusRecord, k_max: int, mc_done: bool, violations: list, conj: list) -> None:
    tag = rec.canonical
    previous = True
    for k in range(1, k_max + 1):
        rep = is_k_extendable(g, k)  # both engines at every k; a disagreement raises
        entry: dict = {"extendable": rep.verdict}
        rec.kext[str(k)] = entry
        if rep.verdict and not previous:
            violations.append({"graph": tag, "check": "kext_monotone", "k": k})
        previous = rep.verdict
        if not rep.verdict:
            if k == 1 and is_matching_covered(g):
                violations.append({"graph": tag, "check": "k1_equals_matching_covered"})
            continue
        if k == 1 and not is_matching_covered(g):
            violations.append({"graph": tag, "check": "k1_equals_matching_covered"})
        if g.min_degree < k + 1:
            violations.append({"graph": tag, "check": "kext_min_degree", "k": k})
        if rec.essential_connectivity is None:
            rec.essential_connectivity = essential_edge_connectivity(g)
        if rec.essential_connectivity < 2 * k:
            violations.append({"graph": tag, "check": "kext_essential_connectivity", "k": k})
        if k == 1:
            minimal = rec.minimal_mc if mc_done else is_minimal_mc(g)
        else:
            minimal = not superfluous_edges(g, k)
        entry["minimal"] = minimal
        if not minimal:
            continue
        br = bounds_report(g, k, assume_minimal=True)
        entry["slacks"] = {b.name: b.slack for b in br.bounds}
        if not br.forest:
            violations.append({"graph": tag, "check": "kext_forest", "k": k})
        for b in br.bounds:
            if b.conjecture:
                if b.name == "size_sharp" and not br.size_threshold_reached:
                    # only claimed from some unknown N_k <= 4k^2 + 2k on
                    entry["slacks"]["size_sharp_below_threshold"] = entry["slacks"].pop(b.name)
                elif not b.holds:
                    conj.append({"graph": tag, "k": k, "bound": b.name, "slack": b.slack})
            elif not b.holds:
                violations.append({"graph": tag, "check": b.name, "k": k, "slack": b.slack})
        if k == 2 and g.n >= 12 and 2 * g.m > 5 * g.n - 20:
            violations.append({"graph": tag, "check": "k2_size", "k": k})


def census_record(g: BipGraph, k_max: int, mc: bool, violations: list, conj: list) -> CensusRecord:
    rec = CensusRecord(encode(canonical_form(g)), g.n, g.m, False)
    if mc:
        _mc_part(g, rec, violations)
    if k_max:
        _kext_part(g, rec, k_max, mc, violations, conj)
    return rec


def _work(args) -> tuple[list[CensusRecord], list, list]:
    max_n, k_max, mc_max_n, shard = args
    records, violations, conj = [], [], []
    for g in enumerate_bipartite(max_n, shard=shard):
        records.append(census_record(g, k_max, g.n <= mc_max_n, violations, conj))
    return records, violations, conj


def run_census(
    max_n: int,
    k_max: int = 1,
    jobs: int = 1,
    sink: Callable[[CensusRecord], None] | None = None,
    mc_max_n: int | None = None,
    shards: int | None = None,
) -> CensusSummary:
    """Enumerate every graph up to ``max_n`` and check every theorem on it.

    Matching-covered checks run up to ``mc_max_n`` (default ``max_n``);
    k-extendability up to ``k_max``.  Records reach ``sink`` in canonical
    order regardless of sharding, so runs are reproducible.
    """
    start = time.perf_counter()
    mc_max_n = max_n if mc_max_n is None else mc_max_n
    shards = shards or max(1, jobs)
    tasks = [(max_n, k_max, mc_max_n, (i, shards)) for i in range(shards)]
    if jobs > 1:
        from multiprocessing import Pool

        with Pool(jobs) as pool:
            parts = pool.map(_work, tasks)
    else:
        parts = [_work(t) for t in tasks]
    records = sorted((r for p in parts for r in p[0]), key=lambda r: (r.n, r.canonical))
    violations = [v for p in parts for v in p[1]]
    conj = [c for p in parts for c in p[2]]
    counts: Counter = Counter()
    min_slack: dict[str, int] = {}
    h34, h12 = [], []
    for r in records:
        counts[f"{r.n}:all"] += 1
        if r.minimal_mc:
            counts[f"{r.n}:minimal_mc"] += 1
            for name, on in r.flags.items():
                if on:
                    counts[f"{r.n}:{name}"] += 1
            if r.flags["h3"] and r.flags["h4"]:
                h34.append(r.canonical)
            if r.flags["h1"] and r.flags["h2"]:
                h12.append(r.canonical)
        for k, entry in r.kext.items():
            if entry["extendable"]:
                counts[f"{r.n}:ext{k}"] += 1
            if entry.get("minimal"):
                counts[f"{r.n}:minimal_ext{k}"] += 1
                for name, s in entry["slacks"].items():
                    key = f"k{k}:{name}"
                    min_slack[key] = min(min_slack.get(key, s), s)
        if sink is not None:
            sink(r)
    return CensusSummary(
        schema=1,
        max_n=max_n,
        k_max=k_max,
        mc_max_n=mc_max_n,
        graphs=len(records),
        counts=dict(sorted(counts.items())),
        violations=violations,
        conjecture_failures=conj,
        conjecture_min_slack=dict(sorted(min_slack.items())),
        theta_h3_h4=h34,
        theta_h1_h2=h12,
        runtime_seconds=round(time.perf_counter() - start, 3),
    )
