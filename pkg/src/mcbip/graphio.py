"""Text graph files and DOT export.

File format, one graph per file::

    # comment
    bip <a_count> <b_count>
    <a_index> <b_index>
    ...

Blank lines and ``#`` comments are ignored, indices are 0-based and repeated
edge lines give parallel edges.  Edge order is preserved, so edge ids survive
a round trip.
"""

from __future__ import annotations

import re
from pathlib import Path

from .core import BipGraph
from .errors import ParseError

__all__ = ["parse", "render", "read_graph", "write_graph", "to_dot", "from_dot"]


def parse(text: str) -> BipGraph:
    header = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if header is None:
            if tokens[0] != "bip" or len(tokens) != 3:
                raise ParseError("expected header 'bip <a_count> <b_count>'", lineno)
            try:
                header = (int(tokens[1]), int(tokens[2]))
            except ValueError:
                raise ParseError("class sizes must be integers", lineno) from None
            if min(header) < 0:
                raise ParseError("class sizes must be non-negative", lineno)
            continue
        if len(tokens) != 2:
            raise ParseError("expected '<a_index> <b_index>'", lineno)
        try:
            a, b = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise ParseError("edge endpoints must be integers", lineno) from None
        if not (0 <= a < header[0] and 0 <= b < header[1]):
            raise ParseError(f"edge ({a}, {b}) is out of range for bip {header[0]} {header[1]}", lineno)
        edges.append((a, b))
    if header is None:
        raise ParseError("missing 'bip' header")
    return BipGraph(header[0], header[1], tuple(edges))


def render(g: BipGraph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"bip {g.a_count} {g.b_count}")
    lines.extend(f"{a} {b}" for a, b in g.edges)
    return "\n".join(lines) + "\n"


def read_graph(path) -> BipGraph:
    return parse(Path(path).read_text())


def write_graph(g: BipGraph, path, comment: str | None = None) -> None:
    Path(path).write_text(render(g, comment))


def to_dot(g: BipGraph, name: str = "G") -> str:
    """DOT text; degree-two vertices are filled green and 2-edges drawn cyan."""
    deg = g.degrees()
    lines = [f"graph {name} {{"]
    for v in g.vertices():
        style = ' style=filled fillcolor="green"' if deg[v] == 2 else ""
        shape = "circle" if v.side == "A" else "box"
        lines.append(f"  {v.side}{v.index} [shape={shape}{style}];")
    for e in range(g.m):
        x, y = g.ends(e)
        two = deg[x] == 2 and deg[y] == 2
        attrs = f'id="{e}"' + (' color="cyan"' if two else "")
        lines.append(f"  {x.side}{x.index} -- {y.side}{y.index} [{attrs}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


_NODE = re.compile(r"^\s*([AB])(\d+)\s*\[")
_EDGE = re.compile(r"^\s*A(\d+)\s*--\s*B(\d+)\b")


def from_dot(text: str) -> BipGraph:
    """Read back the structure written by :func:`to_dot`; styling is ignored."""
    counts = {"A": 0, "B": 0}
    edges = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        m = _EDGE.match(line)
        if m:
            edges.append((int(m.group(1)), int(m.group(2))))
            continue
        m = _NODE.match(line)
        if m:
            counts[m.group(1)] = max(counts[m.group(1)], int(m.group(2)) + 1)
        elif "--" in line:
            raise ParseError("edges must run from an A vertex to a B vertex", lineno)
    for a, b in edges:
        counts["A"] = max(counts["A"], a + 1)
        counts["B"] = max(counts["B"], b + 1)
    return BipGraph(counts["A"], counts["B"], tuple(edges))
