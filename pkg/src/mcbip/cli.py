"""Command-line front end.

Exit codes: 0 on success, 1 on a negative verdict, 2 on errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .core import Tree
from .errors import GraphError
from .graphio import read_graph, render, to_dot, write_graph

OK, NEGATIVE, ERROR = 0, 1, 2


def parse_tree(spec: str) -> Tree:
    """``"star p"``, ``"path n"``, ``"doublestar p q"`` or ``"edges 0-1 1-2 ..."``."""
    parts = spec.replace(",", " ").split()
    if not parts:
        raise ValueError("empty tree description")
    kind, args = parts[0], parts[1:]
    if kind == "star" and len(args) == 1:
        return Tree.star(int(args[0]))
    if kind == "path" and len(args) == 1:
        return Tree.path(int(args[0]))
    if kind == "doublestar" and len(args) == 2:
        return Tree.double_star(int(args[0]), int(args[1]))
    if kind == "edges" and args:
        edges = [tuple(int(x) for x in a.split("-")) for a in args]
        return Tree(1 + max(max(e) for e in edges), tuple(edges))
    raise ValueError(f"cannot read tree description {spec!r}")


def _emit(g, out: str | None, dot: str | None, comment: str) -> None:
    if out:
        write_graph(g, out, comment)
    else:
        sys.stdout.write(render(g, comment))
    if dot:
        Path(dot).write_text(to_dot(g))


def cmd_check(args) -> int:
    from .matching import mc_failure, removable_edges

    g = read_graph(args.file)
    print(f"n={g.n} m={g.m}")
    reason = mc_failure(g)
    if reason is not None:
        print(f"matching covered: no ({reason})")
        return NEGATIVE
    removable = sorted(removable_edges(g))
    print("matching covered: yes")
    print("minimal: yes" if not removable else f"minimal: no (removable edges {removable})")
    return OK


def cmd_classify(args) -> int:
    from .classify import classify_extremal
    from .errors import NotMinimal

    g = read_graph(args.file)
    try:
        rep = classify_extremal(g)
    except NotMinimal as exc:
        print(f"not minimal matching covered: {exc}")
        return NEGATIVE
    if args.json:
        print(json.dumps(rep.to_json(), sort_keys=True))
    else:
        print(f"n={rep.n} m={rep.m} |V2|={rep.v2} |E2|={rep.e2} |V3|={rep.v3} |E3|={rep.e3} |E32|={rep.e32}")
        for name, on in rep.as_dict().items():
            print(f"{name.upper()}: {'yes' if on else 'no'} (slack {rep.slacks[name]})")
    return OK


def cmd_ears(args) -> int:
    from .ears import find_ear_decomposition
    from .errors import NotMatchingCovered

    g = read_graph(args.file)
    try:
        dec = find_ear_decomposition(g)
    except NotMatchingCovered as exc:
        print(f"not matching covered: {exc}")
        return NEGATIVE
    print("cycle: " + " ".join(map(repr, dec.cycle.vertices)) + f"  edges {list(dec.cycle.edge_ids)}")
    for i, ear in enumerate(dec.ears, start=1):
        print(f"ear {i}: " + " ".join(map(repr, ear.vertices)) + f"  edges {list(ear.edge_ids)}")
    print(f"{dec.ear_count} ears (m - n = {g.m - g.n})")
    return OK


def cmd_retract(args) -> int:
    from .transform import partial_retract

    g = read_graph(args.file)
    r = partial_retract(g)
    for s in r.steps:
        print(f"# bicontract {s.vertex!r} -> {s.merged!r}", file=sys.stderr)
    _emit(r.graph, args.output, args.dot, f"partial retract of {args.file} ({len(r.steps)} bicontractions)")
    return OK


def cmd_recognize(args) -> int:
    from .recognize import recognize_h0, recognize_h1, recognize_h2, recognize_h3, recognize_h4

    g = read_graph(args.file)
    found = False
    for name, fn in (("H2", recognize_h2), ("H3", recognize_h3), ("H4", recognize_h4)):
        w = fn(g)
        if w is not None:
            found = True
            print(f"{name}: leaf matching of a tree with {w.tree.n} vertices, edges {list(w.tree.edges)}")
        else:
            print(f"{name}: no")
    for name, fn in (("H0", recognize_h0), ("H1", recognize_h1)):
        r = fn(g)
        found = found or r.verdict
        detail = f"retract has n={r.retract.graph.n}" if r.verdict else r.reason
        print(f"{name}: {'yes' if r.verdict else 'no'} ({detail})")
    return OK if found else NEGATIVE


def cmd_construct(args) -> int:
    from . import construct as c

    if args.kind == "leafmatch":
        g, _ = c.leaf_matching(parse_tree(args.tree))
        note = f"leaf matching of tree '{args.tree}'"
    elif args.kind == "kleafmatch":
        g, _ = c.k_leaf_matching(parse_tree(args.tree), args.k)
        note = f"{args.k}-leaf matching of tree '{args.tree}'"
    elif args.kind == "J":
        g = c.J(args.p, args.r)
        note = f"J({args.p}, {args.r})"
    else:
        g = c.double_star_graph(args.p, args.q, args.k)
        note = f"double star graph p={args.p} q={args.q} k={args.k}"
    _emit(g, args.output, args.dot, note)
    return OK


def cmd_kext(args) -> int:
    from .kext import bounds_report, is_k_extendable, is_minimal_k_extendable

    g = read_graph(args.file)
    rep = is_k_extendable(g, args.k, engine=args.engine)
    if rep.verdict:
        print(f"{args.k}-extendable: yes")
    elif rep.reason:
        print(f"{args.k}-extendable: no ({rep.reason})")
    elif rep.failing_matching:
        print(f"{args.k}-extendable: no (matching {list(rep.failing_matching)} does not extend)")
    else:
        s, ns = rep.violator
        print(f"{args.k}-extendable: no (S={list(s)} has N(S)={list(ns)})")
    if not rep.verdict:
        return NEGATIVE
    if args.bounds:
        if not is_minimal_k_extendable(g, args.k):
            print(f"not minimal {args.k}-extendable; bounds apply to minimal graphs only")
            return NEGATIVE
        br = bounds_report(g, args.k, assume_minimal=True)
        print(f"forest on degree >= {args.k + 2}: {'yes' if br.forest else 'no'}")
        for b in br.bounds:
            print(b.label())
        print(f"n >= 4k^2+2k: {'yes' if br.size_threshold_reached else 'no'}")
    return OK


def cmd_census(args) -> int:
    from .census import run_census

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "records.jsonl", "w") as fh:
        summary = run_census(
            args.max_n,
            args.k,
            jobs=args.jobs,
            sink=lambda r: fh.write(r.to_json() + "\n"),
            mc_max_n=args.mc_max_n,
        )
    text = summary.to_json()
    (out / "summary.json").write_text(text + "\n")
    print(text)
    return NEGATIVE if summary.violations else OK


def cmd_dot(args) -> int:
    sys.stdout.write(to_dot(read_graph(args.file)))
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mcbip", description="Minimal matching covered and k-extendable bipartite graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", help="matching covered? minimal?")
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("classify", help="degree counts and extremal-class flags")
    s.add_argument("file")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("ears", help="print an ear decomposition")
    s.add_argument("file")
    s.set_defaults(func=cmd_ears)

    s = sub.add_parser("retract", help="partial retract")
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.add_argument("--dot")
    s.set_defaults(func=cmd_retract)

    s = sub.add_parser("recognize", help="structural witnesses for the extremal classes")
    s.add_argument("file")
    s.set_defaults(func=cmd_recognize)

    s = sub.add_parser("construct", help="build a family member")
    s.add_argument("kind", choices=["leafmatch", "kleafmatch", "J", "doublestar"])
    s.add_argument("--tree", default="star 3", help='"star p", "path n", "doublestar p q" or "edges 0-1 1-2 ..."')
    s.add_argument("-k", "--k", type=int, default=1)
    s.add_argument("-p", "--p", type=int, default=1)
    s.add_argument("-q", "--q", type=int, default=2)
    s.add_argument("-r", "--r", type=int, default=2)
    s.add_argument("-o", "--output")
    s.add_argument("--dot")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("kext", help="k-extendability with certificate")
    s.add_argument("file")
    s.add_argument("-k", "--k", type=int, required=True)
    s.add_argument("--engine", choices=["direct", "hall", "both"], default="both")
    s.add_argument("--bounds", action="store_true")
    s.set_defaults(func=cmd_kext)

    s = sub.add_parser("census", help="exhaustive check over small graphs")
    s.add_argument("--max-n", type=int, required=True)
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--mc-max-n", type=int, default=None)
    s.add_argument("--out", default="census-out")
    s.set_defaults(func=cmd_census)

    s = sub.add_parser("dot", help="export a graph file as DOT")
    s.add_argument("file")
    s.set_defaults(func=cmd_dot)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
