"""Labeled directed multigraphs describing torus actions with isolated fixed points.

A vertex is a fixed point, an edge ``u -> v`` labeled ``w`` says that ``u``
carries the tangent weight ``w`` and ``v`` carries ``-w``. Reversing an edge
and negating its label describes the same action, so most comparisons here go
through the canonical-sign normal form.
"""

import json
from collections import Counter, defaultdict, deque
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, Optional, Sequence

from . import lattice as lat
from .lattice import Matrix, Weight


@dataclass(frozen=True)
class Edge:
    source: str
    target: str
    label: Weight

    def reversed(self) -> "Edge":
        return Edge(self.target, self.source, lat.neg(self.label))

    def weight_at(self, v: str) -> Weight:
        """Tangent weight this edge contributes at endpoint ``v``."""
        if v == self.source:
            return self.label
        if v == self.target:
            return lat.neg(self.label)
        raise KeyError(v)

    def other(self, v: str) -> str:
        return self.target if v == self.source else self.source


@dataclass(frozen=True)
class LabeledGraph:
    rank: int
    half_dim: int
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(
            Edge(e.source, e.target, lat.as_weight(e.label)) for e in self.edges))
        if self.rank < 1:
            raise ValueError("torus rank must be at least 1")
        if self.half_dim < 0:
            raise ValueError("half dimension must be nonnegative")

    @classmethod
    def build(cls, rank: int, half_dim: int, vertices: Iterable[str],
              edges: Iterable[tuple[str, str, Sequence[int]]]) -> "LabeledGraph":
        return cls(rank, half_dim, tuple(vertices),
                   tuple(Edge(s, t, lat.as_weight(w)) for s, t, w in edges))

    def edges_at(self, v: str) -> list[Edge]:
        return [e for e in self.edges if v in (e.source, e.target)]

    def labels(self) -> list[Weight]:
        return [e.label for e in self.edges]

    def neighbours(self, v: str) -> list[str]:
        return [e.other(v) for e in self.edges_at(v)]


def weights_at(g: LabeledGraph, v: str) -> list[Weight]:
    """Outgoing labels plus negated incoming labels at ``v``."""
    if v not in g.vertices:
        raise KeyError(f"unknown vertex {v!r}")
    out = []
    for e in g.edges:
        if e.source == v:
            out.append(e.label)
        if e.target == v:
            out.append(lat.neg(e.label))
    return out


def reverse_edge_normalize(g: LabeledGraph) -> LabeledGraph:
    """Orient every edge so that its label has positive leading entry."""
    edges = tuple(e if lat.canonical_sign(e.label) > 0 else e.reversed() for e in g.edges)
    return LabeledGraph(g.rank, g.half_dim, g.vertices, edges)


def apply_basis(g: LabeledGraph, matrix: Sequence[Sequence[int]]) -> LabeledGraph:
    """Transform every label by the integer matrix ``matrix``."""
    return LabeledGraph(g.rank, g.half_dim, g.vertices,
                        tuple(Edge(e.source, e.target, lat.mat_vec(matrix, e.label))
                              for e in g.edges))


def rename_vertices(g: LabeledGraph, mapping: dict[str, str]) -> LabeledGraph:
    return LabeledGraph(g.rank, g.half_dim, tuple(mapping.get(v, v) for v in g.vertices),
                        tuple(Edge(mapping.get(e.source, e.source),
                                   mapping.get(e.target, e.target), e.label)
                              for e in g.edges))


# -- validation ------------------------------------------------------------

LEVELS = ("multigraph", "gkm", "torus")


@dataclass(frozen=True)
class Violation:
    level: str
    code: str
    message: str
    refs: tuple[str, ...] = ()

    def as_dict(self):
        return {"level": self.level, "code": self.code, "message": self.message,
                "refs": list(self.refs)}


@dataclass
class ValidationReport:
    requested: str
    achieved: Optional[str]
    violations: list[Violation] = field(default_factory=list)
    warnings: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def codes(self) -> set[str]:
        return {v.code for v in self.violations}

    def as_dict(self):
        return {
            "requested": self.requested,
            "achieved": self.achieved,
            "ok": self.ok,
            "violations": [v.as_dict() for v in self.violations],
            "warnings": [v.as_dict() for v in self.warnings],
        }


def _edge_ref(i: int, e: Edge) -> str:
    return f"edge[{i}] {e.source}->{e.target}"


def _structural_violations(g: LabeledGraph) -> tuple[list[Violation], bool]:
    """Checks that must pass before any weight is computed.

    The flag is False when the graph is too broken for later levels.
    """
    out: list[Violation] = []
    sound = True
    seen = Counter(g.vertices)
    for v, c in seen.items():
        if c > 1:
            out.append(Violation("multigraph", "duplicate-vertex",
                                 f"vertex {v} listed {c} times", (v,)))
    names = set(g.vertices)
    for i, e in enumerate(g.edges):
        ref = _edge_ref(i, e)
        for end in (e.source, e.target):
            if end not in names:
                out.append(Violation("multigraph", "unknown-vertex",
                                     f"{ref} uses unknown vertex {end}", (ref,)))
                sound = False
        if len(e.label) != g.rank:
            out.append(Violation("multigraph", "label-length",
                                 f"{ref} label has {len(e.label)} entries, rank is {g.rank}",
                                 (ref,)))
            sound = False
        elif lat.is_zero(e.label):
            out.append(Violation("multigraph", "zero-label", f"{ref} has zero label", (ref,)))
            sound = False
        if e.source == e.target:
            out.append(Violation("multigraph", "self-loop",
                                 f"self-loop at vertex {e.source}", (e.source, ref)))
            sound = False
    if sound:
        for v in g.vertices:
            d = len(g.edges_at(v))
            if d != g.half_dim:
                out.append(Violation("multigraph", "valence",
                                     f"vertex {v} has valence {d}, expected {g.half_dim}",
                                     (v,)))
    return out, sound


def _gkm_checks(g: LabeledGraph):
    violations: list[Violation] = []
    warnings: list[Violation] = []
    stars = {v: weights_at(g, v) for v in g.vertices}
    for i, e in enumerate(g.edges):
        if len(stars[e.source]) != len(stars[e.target]):
            continue
        if not lat.multiset_congruent_mod(e.label, stars[e.source], stars[e.target]):
            ref = _edge_ref(i, e)
            violations.append(Violation(
                "gkm", "congruence",
                f"weights at {e.source} and {e.target} are not equal modulo {list(e.label)}",
                (ref,)))
    for v, ws in stars.items():
        for i in range(len(ws)):
            for j in range(i + 1, len(ws)):
                if lat.rank([ws[i], ws[j]]) < 2:
                    warnings.append(Violation(
                        "gkm", "dependent-weights",
                        f"weights {list(ws[i])} and {list(ws[j])} at {v} are parallel", (v,)))
    return violations, warnings


def _torus_checks(g: LabeledGraph) -> list[Violation]:
    # imported here: invariants depends on this module
    from .invariants import localization_sum, partition_name, partitions
    from .symbolic import extract_constant, NonConstantSumError

    out: list[Violation] = []
    n = g.half_dim
    if g.rank != n:
        out.append(Violation("torus", "rank",
                             f"torus rank {g.rank} differs from half dimension {n}"))
        return out
    pairs = Counter(frozenset((e.source, e.target)) for e in g.edges)
    for pair, c in pairs.items():
        if c > 1:
            a, b = sorted(pair)
            out.append(Violation("torus", "multiple-edge",
                                 f"{c} edges between {a} and {b}", (a, b)))
    for v in g.vertices:
        ws = weights_at(g, v)
        if len(ws) == n and not lat.is_basis(ws):
            out.append(Violation("torus", "basis",
                                 f"weights at {v} do not form a basis of Z^{n}", (v,)))
    if len(g.vertices) < n + 1:
        out.append(Violation("torus", "few-vertices",
                             f"{len(g.vertices)} vertices, at least {n + 1} required"))
    if any(len(weights_at(g, v)) != n for v in g.vertices):
        return out
    for d in range(n):
        for parts in partitions(d):
            total = localization_sum(g, parts)
            if not total.numerator.is_zero():
                name = partition_name(parts)
                out.append(Violation("torus", "abbv",
                                     f"integral of {name} is nonzero: {total}"))
    try:
        top = extract_constant(localization_sum(g, (n,)))
    except NonConstantSumError as exc:
        out.append(Violation("torus", "abbv", f"integral of c{n}: {exc}"))
    else:
        if top != len(g.vertices):
            out.append(Violation("torus", "euler",
                                 f"integral of c{n} is {top}, vertex count {len(g.vertices)}"))
    return out


def validate_description(g: LabeledGraph, level: str = "torus") -> ValidationReport:
    """Check the necessary conditions for ``g`` to describe a manifold.

    Levels are cumulative: ``multigraph`` (structure, constant valence),
    ``gkm`` (edge congruences), ``torus`` (rank equals half dimension, simple
    graph, unimodular stars, vanishing of low-degree localization sums).
    Parallel weights at a vertex are reported as warnings only.
    """
    if level not in LEVELS:
        raise ValueError(f"unknown level {level!r}; expected one of {LEVELS}")
    report = ValidationReport(level, None)
    structural, sound = _structural_violations(g)
    report.violations.extend(structural)
    wanted = LEVELS.index(level)
    if sound and wanted >= 1:
        v, w = _gkm_checks(g)
        report.violations.extend(v)
        report.warnings.extend(w)
    if sound and wanted >= 2:
        report.violations.extend(_torus_checks(g))
    failed = {v.level for v in report.violations}
    for name in LEVELS[:wanted + 1]:
        if name in failed or (not sound and name != "multigraph"):
            break
        report.achieved = name
    return report


# -- isotropy subgraphs ----------------------------------------------------

def _components(g: LabeledGraph, kept: Sequence[Edge]) -> list[LabeledGraph]:
    parent = {v: v for v in g.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in kept:
        a, b = find(e.source), find(e.target)
        if a != b:
            parent[b] = a
    groups: dict[str, list[str]] = defaultdict(list)
    for v in g.vertices:
        groups[find(v)].append(v)
    comps = []
    for members in sorted(groups.values(), key=lambda m: g.vertices.index(m[0])):
        mset = set(members)
        edges = tuple(e for e in kept if e.source in mset)
        valence = sum(1 for e in edges if members[0] in (e.source, e.target))
        comps.append(LabeledGraph(g.rank, valence, tuple(members), edges))
    return comps


def isotropy_subgraph(g: LabeledGraph, gens: Sequence[Sequence[int]]) -> list[LabeledGraph]:
    """Connected components of the subgraph of edges with labels in span_Z(gens).

    Every vertex of ``g`` lands in exactly one component; isolated vertices
    come back as single-vertex components of half dimension 0. Components are
    ordered by their first vertex in ``g``, and each component's ``half_dim``
    is the valence of that first vertex.
    """
    gens = [lat.as_weight(w) for w in gens]
    if not gens:
        raise ValueError("need at least one generator")
    if not lat.linearly_independent(gens):
        raise ValueError("generators are linearly dependent")
    hnf = lat.hermite_normal_form(gens)
    return _components(g, [e for e in g.edges if lat.in_sublattice(hnf, e.label)])


def subgraph_for_circle(g: LabeledGraph, xi: Sequence[int]) -> list[LabeledGraph]:
    """Components of the edges whose labels pair to zero with ``xi``."""
    return _components(g, [e for e in g.edges if lat.dot(e.label, xi) == 0])


# -- blow-up ---------------------------------------------------------------

def _fresh_name(base: str, taken: set[str]) -> str:
    name = base
    while name in taken:
        name += "'"
    taken.add(name)
    return name


def blow_up(g: LabeledGraph, v: str, names: Optional[Sequence[str]] = None) -> LabeledGraph:
    """Replace fixed point ``v`` (weights a_1..a_n) by n new fixed points.

    The i-th new vertex keeps the edge that carried a_i, and new edges
    q_i -> q_j (i < j) are labeled a_j - a_i.
    """
    if v not in g.vertices:
        raise KeyError(f"unknown vertex {v!r}")
    star = [e if e.source == v else e.reversed() for e in g.edges_at(v)]
    n = len(star)
    weights = [e.label for e in star]
    for i in range(n):
        for j in range(i + 1, n):
            if weights[i] == weights[j]:
                raise ValueError(f"degenerate blow-up: weight {list(weights[i])} repeated at {v}")
    taken = set(g.vertices) - {v}
    if names is None:
        new = [_fresh_name(f"{v}_{i + 1}", taken) for i in range(n)]
    else:
        if len(names) != n or len(set(names)) != n or taken & set(names):
            raise ValueError("blow-up vertex names must be n fresh distinct names")
        new = list(names)
    vertices = []
    for u in g.vertices:
        vertices.extend(new if u == v else [u])
    edges = []
    idx = 0
    for e in g.edges:
        if v in (e.source, e.target):
            if e.source == v:
                edges.append(Edge(new[idx], e.target, e.label))
            else:
                edges.append(Edge(e.source, new[idx], e.label))
            idx += 1
        else:
            edges.append(e)
    for i in range(n):
        for j in range(i + 1, n):
            edges.append(Edge(new[i], new[j], lat.sub(weights[j], weights[i])))
    return LabeledGraph(g.rank, g.half_dim, tuple(vertices), tuple(edges))


# -- isomorphism up to GL(k, Z) --------------------------------------------

@dataclass(frozen=True)
class Isomorphism:
    vertex_map: dict
    matrix: Matrix


def _oriented_adjacency(g: LabeledGraph) -> dict[tuple[str, str], Counter]:
    adj: dict[tuple[str, str], Counter] = defaultdict(Counter)
    for e in g.edges:
        adj[(e.source, e.target)][e.label] += 1
        adj[(e.target, e.source)][lat.neg(e.label)] += 1
    return adj


def find_vertex_map(g1: LabeledGraph, g2: LabeledGraph, matrix,
                    fixed: Optional[dict] = None) -> Optional[dict]:
    """Vertex bijection carrying ``matrix @ g1`` onto ``g2`` edge for edge."""
    if len(g1.vertices) != len(g2.vertices) or len(g1.edges) != len(g2.edges):
        return None
    adj1 = _oriented_adjacency(apply_basis(g1, matrix))
    adj2 = _oriented_adjacency(g2)
    nb1: dict[str, set] = defaultdict(set)
    for a, b in adj1:
        nb1[a].add(b)
    stars1 = {v: Counter(weights_at(apply_basis(g1, matrix), v)) for v in g1.vertices}
    stars2 = {v: Counter(weights_at(g2, v)) for v in g2.vertices}

    # BFS order so that most vertices have a mapped neighbour when reached
    order: list[str] = []
    seen: set[str] = set()
    roots = list((fixed or {}).keys()) + list(g1.vertices)
    for r in roots:
        if r in seen:
            continue
        seen.add(r)
        queue = deque([r])
        while queue:
            x = queue.popleft()
            order.append(x)
            for y in sorted(nb1[x], key=g1.vertices.index):
                if y not in seen:
                    seen.add(y)
                    queue.append(y)

    mapping: dict[str, str] = {}
    used: set[str] = set()

    def consistent(x: str, y: str) -> bool:
        if stars1[x] != stars2[y]:
            return False
        for m, my in mapping.items():
            if adj1.get((x, m), Counter()) != adj2.get((y, my), Counter()):
                return False
        return True

    def candidates(x: str):
        if fixed and x in fixed:
            return [fixed[x]]
        for m in nb1[x]:
            if m in mapping:
                my = mapping[m]
                want = adj1[(m, x)]
                return [y for (a, y), c in adj2.items() if a == my and c == want]
        return list(g2.vertices)

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        x = order[i]
        for y in candidates(x):
            if y in used or not consistent(x, y):
                continue
            mapping[x] = y
            used.add(y)
            if extend(i + 1):
                return True
            del mapping[x]
            used.discard(y)
        return False

    return dict(mapping) if extend(0) else None


def isomorphic_up_to_basis(g1: LabeledGraph, g2: LabeledGraph) -> Optional[Isomorphism]:
    """Find a vertex bijection and U in GL(k, Z) carrying g1 onto g2.

    Labels are compared after the reverse-and-negate equivalence, i.e. an
    edge u -> v labeled w matches phi(v) -> phi(u) labeled -U w as well.
    """
    if g1.rank != g2.rank or len(g1.vertices) != len(g2.vertices) \
            or len(g1.edges) != len(g2.edges) or g1.half_dim != g2.half_dim:
        return None
    if not g1.vertices:
        return Isomorphism({}, lat.identity(g1.rank))
    # anchor on the vertex of g1 whose star has the largest rank
    anchor = max(g1.vertices, key=lambda v: (lat.rank(weights_at(g1, v)) if weights_at(g1, v) else 0,
                                             -g1.vertices.index(v)))
    star1 = weights_at(g1, anchor)
    basis_idx: list[int] = []
    for i, w in enumerate(star1):
        if lat.rank([star1[j] for j in basis_idx] + [w]) > len(basis_idx):
            basis_idx.append(i)
    for u in g2.vertices:
        star2 = weights_at(g2, u)
        if len(star2) != len(star1):
            continue
        tried: set = set()
        for images in permutations(range(len(star2)), len(basis_idx)):
            target = tuple(star2[j] for j in images)
            if target in tried:
                continue
            tried.add(target)
            pairs = [(star1[i], t) for i, t in zip(basis_idx, target)]
            matrix = lat.find_unimodular_map(pairs)
            if matrix is None:
                continue
            vmap = find_vertex_map(g1, g2, matrix, fixed={anchor: u})
            if vmap is not None:
                return Isomorphism(vmap, matrix)
    return None


# -- JSON and DOT ----------------------------------------------------------

class GraphFormatError(ValueError):
    """Raised for malformed graph documents; the message names the field."""


def graph_to_dict(g: LabeledGraph) -> dict:
    return {
        "rank": g.rank,
        "half_dim": g.half_dim,
        "vertices": list(g.vertices),
        "edges": [{"from": e.source, "to": e.target, "label": list(e.label)} for e in g.edges],
    }


def graph_to_json(g: LabeledGraph) -> str:
    return json.dumps(graph_to_dict(g), indent=2) + "\n"


def _require_int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise GraphFormatError(f"{where}: expected an integer, got {json.dumps(value)}")
    return value


def graph_from_dict(doc) -> LabeledGraph:
    if not isinstance(doc, dict):
        raise GraphFormatError("document: expected a JSON object")
    for key in ("rank", "half_dim", "vertices", "edges"):
        if key not in doc:
            raise GraphFormatError(f"{key}: missing field")
    rank = _require_int(doc["rank"], "rank")
    half_dim = _require_int(doc["half_dim"], "half_dim")
    if rank < 1:
        raise GraphFormatError("rank: must be at least 1")
    if half_dim < 0:
        raise GraphFormatError("half_dim: must be nonnegative")
    if not isinstance(doc["vertices"], list):
        raise GraphFormatError("vertices: expected an array")
    vertices = []
    for i, v in enumerate(doc["vertices"]):
        if not isinstance(v, str):
            raise GraphFormatError(f"vertices[{i}]: expected a string")
        vertices.append(v)
    if not isinstance(doc["edges"], list):
        raise GraphFormatError("edges: expected an array")
    edges = []
    for i, e in enumerate(doc["edges"]):
        where = f"edges[{i}]"
        if not isinstance(e, dict):
            raise GraphFormatError(f"{where}: expected an object")
        for key in ("from", "to", "label"):
            if key not in e:
                raise GraphFormatError(f"{where}.{key}: missing field")
        for key in ("from", "to"):
            if not isinstance(e[key], str):
                raise GraphFormatError(f"{where}.{key}: expected a string")
        if not isinstance(e["label"], list):
            raise GraphFormatError(f"{where}.label: expected an array")
        if len(e["label"]) != rank:
            raise GraphFormatError(
                f"{where}.label: expected {rank} entries, got {len(e['label'])}")
        label = tuple(_require_int(x, f"{where}.label[{j}]") for j, x in enumerate(e["label"]))
        edges.append(Edge(e["from"], e["to"], label))
    return LabeledGraph(rank, half_dim, tuple(vertices), tuple(edges))


def graph_from_json(text: str) -> LabeledGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return graph_from_dict(doc)


def to_dot(g: LabeledGraph, name: str = "G") -> str:
    lines = [f"digraph {name} {{"]
    for v in g.vertices:
        lines.append(f'  "{v}";')
    for e in g.edges:
        label = "(" + ",".join(map(str, e.label)) + ")"
        lines.append(f'  "{e.source}" -> "{e.target}" [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
