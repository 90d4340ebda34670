"""Tree predicates, canonical codes, constrained isomorphism and enumeration.

Canonical codes are AHU-style nested tuples computed at the tree centre (or
centre edge), with an integer colour on every vertex so that a prescribed
leaf correspondence can be enforced.  Enumeration roots every free tree at its
centroid: a unicentroidal tree is a multiset of branches of size < n/2 and a
bicentroidal tree is an unordered pair of rooted halves, so each isomorphism
class is produced exactly once without remembering earlier output.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from .core import Tree

__all__ = [
    "TreePredicates",
    "tree_predicates",
    "centers",
    "canonical_code",
    "tree_isomorphism",
    "enumerate_trees",
]


@dataclass(frozen=True)
class TreePredicates:
    tree: Tree

    def _non_leaf_degrees(self) -> list[int]:
        return [self.tree.degree(v) for v in self.tree.non_leaves]

    @property
    def is_halin(self) -> bool:
        return self.tree.n >= 2 and all(d >= 3 for d in self._non_leaf_degrees())

    @property
    def is_cubic_halin(self) -> bool:
        return self.tree.n >= 2 and all(d == 3 for d in self._non_leaf_degrees())

    @property
    def is_star(self) -> bool:
        return self.tree.n >= 3 and len(self.tree.non_leaves) == 1

    def is_r_tree(self, r: int) -> bool:
        return self.tree.n >= 2 and all(d >= r for d in self._non_leaf_degrees())

    def is_regular_r_tree(self, r: int) -> bool:
        return self.tree.n >= 2 and all(d == r for d in self._non_leaf_degrees())


def tree_predicates(t: Tree) -> TreePredicates:
    return TreePredicates(t)


def centers(t: Tree) -> list[int]:
    """The one or two central vertices, found by peeling leaves."""
    if t.n <= 2:
        return list(range(t.n))
    deg = [t.degree(v) for v in range(t.n)]
    layer = [v for v in range(t.n) if deg[v] == 1]
    remaining = t.n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for w in t.adjacency[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    return sorted(layer)


def _rooted_codes(t: Tree, root: int, block: int, color: list[int]) -> dict[int, tuple]:
    """Code of every vertex in the branch at ``root`` that avoids ``block``."""
    order = []
    parent = {root: block}
    stack = [root]
    while stack:
        v = stack.pop()
        order.append(v)
        for w in t.adjacency[v]:
            if w != parent[v]:
                parent[w] = v
                stack.append(w)
    codes: dict[int, tuple] = {}
    for v in reversed(order):
        kids = sorted(codes[w] for w in t.adjacency[v] if w != parent[v])
        codes[v] = (color[v], tuple(kids))
    return codes


def canonical_code(t: Tree, color: list[int] | None = None) -> tuple:
    color = color or [0] * t.n
    cs = centers(t)
    if len(cs) == 1:
        return ("v", _rooted_codes(t, cs[0], -1, color)[cs[0]])
    c1, c2 = cs
    h1 = _rooted_codes(t, c1, c2, color)[c1]
    h2 = _rooted_codes(t, c2, c1, color)[c2]
    return ("e",) + tuple(sorted((h1, h2)))


def _pair_up(t1: Tree, r1: int, b1: int, codes1, t2: Tree, r2: int, b2: int, codes2, out: dict) -> None:
    stack = [(r1, b1, r2, b2)]
    while stack:
        v, pv, w, pw = stack.pop()
        out[v] = w
        kids1 = sorted((x for x in t1.adjacency[v] if x != pv), key=lambda x: (codes1[x], x))
        kids2 = sorted((y for y in t2.adjacency[w] if y != pw), key=lambda y: (codes2[y], y))
        for x, y in zip(kids1, kids2):
            stack.append((x, v, y, w))


def tree_isomorphism(t1: Tree, t2: Tree, leaf_constraint: dict[int, int] | None = None) -> dict[int, int] | None:
    """An isomorphism ``t1 -> t2`` agreeing with ``leaf_constraint`` on its domain, or None.

    The constraint must map leaves of ``t1`` to leaves of ``t2`` injectively;
    otherwise no isomorphism can honour it and None is returned.
    """
    if t1.n != t2.n:
        return None
    color1 = [0] * t1.n
    color2 = [0] * t2.n
    if leaf_constraint:
        if len(set(leaf_constraint.values())) != len(leaf_constraint):
            return None
        for i, (x, y) in enumerate(sorted(leaf_constraint.items()), start=1):
            if not (0 <= x < t1.n and 0 <= y < t2.n):
                return None
            if t1.degree(x) != 1 or t2.degree(y) != 1:
                return None
            color1[x] = i
            color2[y] = i
    if canonical_code(t1, color1) != canonical_code(t2, color2):
        return None
    out: dict[int, int] = {}
    cs1, cs2 = centers(t1), centers(t2)
    if len(cs1) == 1:
        c1, c2 = cs1[0], cs2[0]
        _pair_up(t1, c1, -1, _rooted_codes(t1, c1, -1, color1), t2, c2, -1, _rooted_codes(t2, c2, -1, color2), out)
        return out
    (p, q), (r, s) = cs1, cs2
    cp = _rooted_codes(t1, p, q, color1)
    cq = _rooted_codes(t1, q, p, color1)
    cr = _rooted_codes(t2, r, s, color2)
    cs = _rooted_codes(t2, s, r, color2)
    if (cp[p], cq[q]) != (cr[r], cs[s]):
        r, s, cr, cs = s, r, cs, cr
    _pair_up(t1, p, q, cp, t2, r, s, cr, out)
    _pair_up(t1, q, p, cq, t2, s, r, cs, out)
    return out


# --- enumeration --------------------------------------------------------------

# rooted trees are nested tuples of child subtrees, children in non-increasing order


def _rooted_trees(max_size: int, child_ok: Callable[[int], bool]) -> list[list[tuple]]:
    """``by_size[s]`` lists rooted trees with ``s`` vertices whose every vertex has an allowed child count."""
    by_size: list[list[tuple]] = [[] for _ in range(max_size + 1)]
    flat: list[tuple[int, tuple]] = []  # (size, tree) in generation order
    for s in range(1, max_size + 1):
        for kids in _multisets(flat, s - 1, s - 1):
            if child_ok(len(kids)):
                by_size[s].append(kids)
        flat.extend((s, t) for t in by_size[s])
    return by_size


def _multisets(flat: list[tuple[int, tuple]], total: int, max_part: int) -> Iterator[tuple]:
    """Multisets of rooted trees from ``flat`` with sizes summing to ``total``, each size <= ``max_part``."""
    def rec(remaining: int, upto: int, acc: list[tuple]):
        if remaining == 0:
            yield tuple(acc)
            return
        for i in range(upto, -1, -1):
            size, t = flat[i]
            if size > remaining or size > max_part:
                continue
            acc.append(t)
            yield from rec(remaining - size, i, acc)
            acc.pop()

    yield from rec(total, len(flat) - 1, [])


def _size(t: tuple) -> int:
    return 1 + sum(_size(c) for c in t)


def _to_tree(root_kids: tuple, extra: tuple | None = None) -> Tree:
    edges = []
    counter = 1
    stack = [(0, root_kids)]
    if extra is not None:
        stack.append((-1, extra))
    pending = []
    while stack:
        v, kids = stack.pop()
        if v == -1:
            pending.append(kids)
            continue
        for c in kids:
            w = counter
            counter += 1
            edges.append((v, w))
            stack.append((w, c))
    for kids in pending:
        w = counter
        counter += 1
        edges.append((0, w))
        stack = [(w, kids)]
        while stack:
            v, ks = stack.pop()
            for c in ks:
                x = counter
                counter += 1
                edges.append((v, x))
                stack.append((x, c))
    return Tree(counter, tuple(edges))


_NAMED = {
    "all": (lambda c: True, lambda p: True),
    "halin": (lambda c: c != 1, lambda p: p.is_halin),
    "cubic_halin": (lambda c: c in (0, 2), lambda p: p.is_cubic_halin),
}


def _resolve(predicate) -> tuple[Callable[[int], bool], Callable[[TreePredicates], bool]]:
    if callable(predicate):
        return (lambda c: True), (lambda p: bool(predicate(p.tree)))
    if isinstance(predicate, str):
        return _NAMED[predicate]
    name, r = predicate
    if name == "r_tree":
        return (lambda c: c == 0 or c >= r - 1), (lambda p: p.is_r_tree(r))
    if name == "regular_r_tree":
        return (lambda c: c in (0, r - 1)), (lambda p: p.is_regular_r_tree(r))
    raise ValueError(f"unknown tree predicate {predicate!r}")


def enumerate_trees(max_n: int, predicate="all", min_n: int = 1) -> Iterator[Tree]:
    """Every tree with ``min_n..max_n`` vertices satisfying ``predicate``, one per isomorphism class.

    ``predicate`` is ``"all"``, ``"halin"``, ``"cubic_halin"``, ``"star"``,
    ``("r_tree", r)``, ``("regular_r_tree", r)`` or a callable on trees.
    Output is ordered by vertex count, then by generation order.
    """
    if predicate == "star":
        for p in range(max(2, min_n - 1), max_n):
            yield Tree.star(p)
        return
    child_ok, final_ok = _resolve(predicate)
    half = max_n // 2
    rooted = _rooted_trees(max(half, 1), child_ok)
    flat = [(s, t) for s in range(1, half + 1) for t in rooted[s]]
    for n in range(max(1, min_n), max_n + 1):
        for kids in _multisets(flat, n - 1, (n - 1) // 2):
            t = _to_tree(kids)
            if final_ok(TreePredicates(t)):
                yield t
        if n % 2 == 0:
            halves = rooted[n // 2]
            for i in range(len(halves)):
                for j in range(i, len(halves)):
                    t = _to_tree(halves[i], halves[j])
                    if final_ok(TreePredicates(t)):
                        yield t
