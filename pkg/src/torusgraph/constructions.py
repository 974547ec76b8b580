"""Builders for the graph families used throughout the package.

Constructors take explicit basis vectors (defaulting to the standard basis)
and use fixed vertex names: ``p0..pn`` for projective space, ``p1..p6`` for
the two 6-vertex families.
"""

from typing import Optional, Sequence

from . import lattice as lat
from .graph import Edge, LabeledGraph


def _basis3(a, b, c) -> tuple[lat.Weight, lat.Weight, lat.Weight]:
    e1, e2, e3 = lat.standard_basis(3)
    a = lat.as_weight(a if a is not None else e1)
    b = lat.as_weight(b if b is not None else e2)
    c = lat.as_weight(c if c is not None else e3)
    if not lat.is_basis([a, b, c]):
        raise ValueError("a, b, c must form a basis of Z^3")
    return a, b, c


def _basis2(a, b) -> tuple[lat.Weight, lat.Weight]:
    a, b = lat.as_weight(a), lat.as_weight(b)
    if len(a) != 2 or len(b) != 2:
        raise ValueError("a and b must lie in Z^2")
    if not lat.is_basis([a, b]):
        raise ValueError("a and b must span Z^2")
    return a, b


def projective_space(weights: Sequence[Sequence[int]]) -> LabeledGraph:
    """Linear torus action on CP^n with weights a_1..a_n at p0.

    Edges: p0 -> pi labeled a_i, and pi -> pj (i < j) labeled a_j - a_i.
    """
    ws = [lat.as_weight(w) for w in weights]
    if not ws:
        raise ValueError("need at least one weight")
    rank = len(ws[0])
    if any(len(w) != rank for w in ws):
        raise ValueError("weights must all have the same length")
    if any(lat.is_zero(w) for w in ws):
        raise ValueError("weights must be nonzero")
    if len(set(ws)) != len(ws):
        raise ValueError("weights must be pairwise distinct")
    n = len(ws)
    names = [f"p{i}" for i in range(n + 1)]
    edges = [Edge("p0", names[i + 1], ws[i]) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            edges.append(Edge(names[i + 1], names[j + 1], lat.sub(ws[j], ws[i])))
    return LabeledGraph(rank, n, tuple(names), tuple(edges))


def cpn(n: int) -> LabeledGraph:
    """Standard T^n-action on CP^n."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return projective_space(lat.standard_basis(n))


def sphere(w: Sequence[int] = (1,)) -> LabeledGraph:
    """The 2-sphere: two fixed points joined by one edge."""
    return LabeledGraph(len(w), 1, ("p1", "p2"), (Edge("p1", "p2", lat.as_weight(w)),))


def m1(k: int, a=None, b=None, c=None) -> LabeledGraph:
    """Prism graph with equal triangle labels and rungs c+ka, c, c+k(a+b)."""
    a, b, c = _basis3(a, b, c)
    ab = lat.add(a, b)
    edges = [
        Edge("p2", "p1", a),
        Edge("p2", "p3", ab),
        Edge("p1", "p3", b),
        Edge("p5", "p6", a),
        Edge("p5", "p4", ab),
        Edge("p6", "p4", b),
        Edge("p1", "p6", lat.add(c, lat.scale(k, a))),
        Edge("p2", "p5", c),
        Edge("p3", "p4", lat.add(c, lat.scale(k, ab))),
    ]
    return LabeledGraph(3, 3, tuple(f"p{i}" for i in range(1, 7)), tuple(edges))


def m2(k: int, l: int, a=None, b=None, c=None) -> LabeledGraph:
    """Prism graph with all rungs labeled c and a sheared second triangle."""
    a, b, c = _basis3(a, b, c)
    ab = lat.add(a, b)
    edges = [
        Edge("p2", "p1", a),
        Edge("p2", "p3", ab),
        Edge("p1", "p3", b),
        Edge("p5", "p6", lat.add(a, lat.scale(k, c))),
        Edge("p5", "p4", lat.add(ab, lat.scale(k + l, c))),
        Edge("p6", "p4", lat.add(b, lat.scale(l, c))),
        Edge("p1", "p6", c),
        Edge("p2", "p5", c),
        Edge("p3", "p4", c),
    ]
    return LabeledGraph(3, 3, tuple(f"p{i}" for i in range(1, 7)), tuple(edges))


def triangle4(a=(1, 0), b=(0, 1)) -> LabeledGraph:
    """Three fixed points in dimension 4: labels a, b and a+b."""
    a, b = _basis2(a, b)
    edges = [Edge("p1", "p2", a), Edge("p2", "p3", b), Edge("p1", "p3", lat.add(a, b))]
    return LabeledGraph(2, 2, ("p1", "p2", "p3"), tuple(edges))


def square4(a=(1, 0), b=(0, 1), m: int = 0) -> LabeledGraph:
    """Four fixed points in dimension 4: a 4-cycle with labels a, a, b, b+ma."""
    a, b = _basis2(a, b)
    edges = [
        Edge("p1", "p2", a),
        Edge("p3", "p4", a),
        Edge("p1", "p3", b),
        Edge("p2", "p4", lat.add(b, lat.scale(m, a))),
    ]
    return LabeledGraph(2, 2, ("p1", "p2", "p3", "p4"), tuple(edges))


def triangle(a, b, c) -> LabeledGraph:
    """Unconstrained 3-cycle p1 -a-> p2 -b-> p3, p1 -c-> p3."""
    a, b, c = (lat.as_weight(w) for w in (a, b, c))
    edges = [Edge("p1", "p2", a), Edge("p2", "p3", b), Edge("p1", "p3", c)]
    return LabeledGraph(len(a), 2, ("p1", "p2", "p3"), tuple(edges))


def square(a, b, c, d) -> LabeledGraph:
    """Unconstrained 4-cycle: p1 -a-> p2, p1 -b-> p3, p2 -c-> p4, p3 -d-> p4."""
    a, b, c, d = (lat.as_weight(w) for w in (a, b, c, d))
    edges = [Edge("p1", "p2", a), Edge("p1", "p3", b), Edge("p2", "p4", c), Edge("p3", "p4", d)]
    return LabeledGraph(len(a), 2, ("p1", "p2", "p3", "p4"), tuple(edges))


def product(g1: LabeledGraph, g2: LabeledGraph, sep: str = "*") -> LabeledGraph:
    """Graph of the product action of T^{k1} x T^{k2} on M1 x M2."""
    zeros1, zeros2 = (0,) * g1.rank, (0,) * g2.rank
    vertices = tuple(f"{u}{sep}{v}" for u in g1.vertices for v in g2.vertices)
    edges = []
    for e in g1.edges:
        for v in g2.vertices:
            edges.append(Edge(f"{e.source}{sep}{v}", f"{e.target}{sep}{v}", e.label + zeros2))
    for u in g1.vertices:
        for e in g2.edges:
            edges.append(Edge(f"{u}{sep}{e.source}", f"{u}{sep}{e.target}", zeros1 + e.label))
    return LabeledGraph(g1.rank + g2.rank, g1.half_dim + g2.half_dim, vertices, tuple(edges))


def cp3_rank2() -> LabeledGraph:
    """CP^3 with the T^2-action of weights (1,0), (2,0), (0,1) at p0."""
    return projective_space([(1, 0), (2, 0), (0, 1)])


def by_name(name: str, k: Optional[int] = None, l: Optional[int] = None,
            m: Optional[int] = None, n: Optional[int] = None) -> LabeledGraph:
    """Dispatch used by the command line ``generate`` subcommand."""
    if name == "cpn":
        return cpn(3 if n is None else n)
    if name == "m1":
        return m1(k or 0)
    if name == "m2":
        return m2(k or 0, l or 0)
    if name == "triangle":
        return triangle4()
    if name == "square":
        return square4(m=m or 0)
    raise ValueError(f"unknown family {name!r}")
