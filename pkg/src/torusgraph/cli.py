"""Command line front end.

Graphs travel as JSON on stdin/stdout (``--in``/``--out`` override). Exit
codes: 0 success, 1 validation failure or a negative answer, 2 usage or
input errors.
"""

import argparse
import hashlib
import json
import sys
import time
from typing import Optional, Sequence

from . import lattice as lat
from .classify import (classify_report, verify_square_relation,
                       verify_triangle_relation)
from .constructions import by_name
from .graph import (LEVELS, GraphFormatError, LabeledGraph, blow_up, graph_from_json,
                    graph_to_dict, graph_to_json, isomorphic_up_to_basis,
                    isotropy_subgraph, to_dot, validate_description)
from .invariants import invariant_report

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def graph_id(g: LabeledGraph) -> str:
    """Content hash of the canonical (sorted, compact) JSON form."""
    canon = json.dumps(graph_to_dict(g), sort_keys=True, separators=(",", ":"))
    return "sha256:" + hashlib.sha256(canon.encode("utf-8")).hexdigest()[:16]


def parse_vector(text: str, where: str) -> lat.Weight:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"{where}: expected comma-separated integers, got {text!r}") from None


def parse_vectors(text: str, where: str) -> list[lat.Weight]:
    parts = [p for p in text.split(";") if p.strip()]
    if not parts:
        raise UsageError(f"{where}: no vectors given")
    return [parse_vector(p, f"{where}[{i}]") for i, p in enumerate(parts)]


def _read_graph(path: Optional[str]) -> LabeledGraph:
    if path is None or path == "-":
        text = sys.stdin.read()
        source = "<stdin>"
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"{path}: {exc.strerror}") from None
        source = path
    try:
        return graph_from_json(text)
    except GraphFormatError as exc:
        raise GraphFormatError(f"{source}: {exc}") from None
    except ValueError as exc:
        raise GraphFormatError(f"{source}: {exc}") from None


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _check_rank(g: LabeledGraph, vectors: Sequence[lat.Weight], flag: str):
    for v in vectors:
        if len(v) != g.rank:
            raise UsageError(f"{flag}: vector {list(v)} has {len(v)} entries, rank is {g.rank}")


# -- subcommands -------------------------------------------------------------

def cmd_validate(args) -> tuple[str, int]:
    g = _read_graph(args.input)
    report = validate_description(g, args.level)
    out = {"graph_id": graph_id(g)}
    out.update(report.as_dict())
    return _dump(out), EXIT_OK if report.ok else EXIT_FAIL


def cmd_invariants(args) -> tuple[str, int]:
    g = _read_graph(args.input)
    xi = None
    if args.xi is not None:
        xi = parse_vector(args.xi, "--xi")
        _check_rank(g, [xi], "--xi")
    try:
        report = invariant_report(g, graph_id(g), fast=args.fast, xi=xi)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return "", EXIT_FAIL
    return _dump(report), EXIT_OK


def cmd_generate(args) -> tuple[str, int]:
    try:
        g = by_name(args.family, k=args.k, l=args.l, m=args.m, n=args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return graph_to_json(g), EXIT_OK


def cmd_blowup(args) -> tuple[str, int]:
    g = _read_graph(args.input)
    if args.vertex not in g.vertices:
        raise UsageError(f"--vertex: unknown vertex {args.vertex!r}")
    try:
        h = blow_up(g, args.vertex)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return "", EXIT_FAIL
    return graph_to_json(h), EXIT_OK


def cmd_subgraph(args) -> tuple[str, int]:
    g = _read_graph(args.input)
    gens = parse_vectors(args.gens, "--gens")
    _check_rank(g, gens, "--gens")
    try:
        comps = isotropy_subgraph(g, gens)
    except ValueError as exc:
        raise UsageError(f"--gens: {exc}") from None
    out = {
        "gens": [list(v) for v in gens],
        "components": [dict(graph_to_dict(c), valence=c.half_dim) for c in comps],
    }
    return _dump(out), EXIT_OK


def cmd_isomorphic(args) -> tuple[str, int]:
    g1 = _read_graph(args.input)
    g2 = _read_graph(args.other)
    iso = isomorphic_up_to_basis(g1, g2)
    if iso is None:
        return "isomorphic: false\n", EXIT_FAIL
    lines = [
        "isomorphic: true",
        "matrix: " + json.dumps([list(r) for r in iso.matrix]),
        "vertex_map: " + json.dumps(dict(iso.vertex_map)),
    ]
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_classify(args) -> tuple[str, int]:
    if args.radius < 1:
        raise UsageError("--radius: must be positive")
    start = time.perf_counter()
    report = classify_report(args.radius)
    tri = verify_triangle_relation(3)
    sq = verify_square_relation(3)
    report["triangle_relation"] = {k: tri[k] for k in ("symbolic_ok", "checked", "vanishing", "ok")}
    report["square_relation"] = {k: sq[k] for k in ("symbolic_ok", "checked", "vanishing", "valid", "ok")}
    if args.timing:
        report["seconds"] = round(time.perf_counter() - start, 3)
    ok = (report["k33"]["survivors"] == 0 and report["prism"]["untagged"] == 0
          and tri["ok"] and sq["ok"])
    report["ok"] = ok
    return _dump(report), EXIT_OK if ok else EXIT_FAIL


def cmd_export_dot(args) -> tuple[str, int]:
    g = _read_graph(args.input)
    return to_dot(g, args.name), EXIT_OK


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torusgraph",
        description="Describing graphs of torus actions: validation, invariants, classification.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_text, reads_graph=True):
        p = sub.add_parser(name, help=help_text, description=help_text)
        if reads_graph:
            p.add_argument("--in", dest="input", metavar="FILE",
                           help="input graph JSON (default: stdin)")
        p.add_argument("--out", dest="output", metavar="FILE", help="output file (default: stdout)")
        p.set_defaults(func=func)
        return p

    p = add("validate", cmd_validate, "check the describing-graph axioms")
    p.add_argument("--level", choices=LEVELS, default="torus")

    p = add("invariants", cmd_invariants, "Chern numbers and the chi_y genus")
    p.add_argument("--fast", action="store_true",
                   help="evaluate at random points instead of exact reduction (not certified)")
    p.add_argument("--xi", metavar="I,J,K", help="circle direction for the genus count")

    p = add("generate", cmd_generate, "emit a graph from a built-in family", reads_graph=False)
    p.add_argument("family", choices=("cpn", "m1", "m2", "triangle", "square"))
    p.add_argument("--k", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int, help="dimension for cpn (default 3)")

    p = add("blowup", cmd_blowup, "blow up a vertex")
    p.add_argument("--vertex", required=True, metavar="NAME")

    p = add("subgraph", cmd_subgraph, "isotropy subgraph components")
    p.add_argument("--gens", required=True, metavar="W1;W2",
                   help="semicolon-separated generators, e.g. '1,0,0;0,1,0'")

    p = add("isomorphic", cmd_isomorphic, "isomorphism up to a change of basis")
    p.add_argument("--other", required=True, metavar="FILE")

    p = add("classify", cmd_classify, "bounded classification of 6-vertex cubic graphs",
            reads_graph=False)
    p.add_argument("--radius", type=int, default=2)
    p.add_argument("--timing", action="store_true", help="include wall-clock seconds")

    p = add("export-dot", cmd_export_dot, "Graphviz DOT export")
    p.add_argument("--name", default="G")
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, code = args.func(args)
    except (UsageError, GraphFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if text:
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())
