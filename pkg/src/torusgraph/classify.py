"""Bounded searches behind the classification of 6-vertex cubic describing graphs.

Three pieces:

* enumeration of connected d-regular topologies up to isomorphism,
* an exhaustive, congruence-pruned search for labelings of a topology that
  pass torus-manifold validation, in the gauge where the first vertex has the
  standard basis as weights,
* checks of the 4-dimensional triangle/square relations and of the five
  relations among the labels of a valid prism.
"""

from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Optional, Sequence

from . import lattice as lat
from .constructions import m1, m2, square, triangle
from .graph import Edge, LabeledGraph, isomorphic_up_to_basis, validate_description
from .invariants import chern_number, localization_sum
from .symbolic import MultiPoly

MAX_VERTICES = 10


# -- topologies -------------------------------------------------------------

@dataclass(frozen=True)
class Topology:
    """Simple undirected graph on vertices 0..n-1, edges as sorted pairs."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(sorted(tuple(sorted(e)) for e in self.edges)))

    def adjacency(self) -> list[set[int]]:
        adj = [set() for _ in range(self.n)]
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return adj

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency()]

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        adj = self.adjacency()
        seen = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return len(seen) == self.n

    def triangle_count(self) -> int:
        adj = self.adjacency()
        return sum(1 for i, j in self.edges for k in adj[i] & adj[j] if k > j)

    def vertex_names(self) -> list[str]:
        return [f"q{i + 1}" for i in range(self.n)]

    def canonical_form(self) -> tuple[tuple[int, int], ...]:
        return canonical_form(self.n, self.edges)


def _refine(adj: list[set[int]], cells: list[list[int]]) -> list[list[int]]:
    """Equitable refinement; new cells are ordered by invariant signatures."""
    while True:
        index = {}
        for ci, cell in enumerate(cells):
            for v in cell:
                index[v] = ci
        new: list[list[int]] = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                new.append(cell)
                continue
            sig = {}
            for v in cell:
                counts = Counter(index[u] for u in adj[v])
                sig[v] = tuple(sorted(counts.items()))
            groups: dict = {}
            for v in cell:
                groups.setdefault(sig[v], []).append(v)
            if len(groups) > 1:
                changed = True
            for key in sorted(groups):
                new.append(groups[key])
        cells = new
        if not changed:
            return cells


def canonical_form(n: int, edges: Sequence[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    """Canonical edge list by individualization-refinement without pruning.

    The set of leaves of the search tree is invariant under relabeling, so the
    smallest relabeled edge list over all leaves is a complete invariant.
    """
    adj = [set() for _ in range(n)]
    for i, j in edges:
        adj[i].add(j)
        adj[j].add(i)
    best = None

    def search(cells):
        nonlocal best
        cells = _refine(adj, cells)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            pos = {c[0]: i for i, c in enumerate(cells)}
            code = tuple(sorted(tuple(sorted((pos[i], pos[j]))) for i, j in edges))
            if best is None or code < best:
                best = code
            return
        cell = cells[target]
        for v in cell:
            rest = [u for u in cell if u != v]
            search(cells[:target] + [[v], rest] + cells[target + 1:])

    search([list(range(n))])
    return best if best is not None else ()


def _regular_graphs_rooted(n: int, d: int):
    """Labeled d-regular graphs with vertex 0 adjacent to 1..d.

    Every d-regular graph is isomorphic to one of these, which cuts the
    labeled search by a factor of C(n-1, d).
    """
    if d >= n:
        return
    deg = [0] * n
    edges: list[tuple[int, int]] = []
    for j in range(1, d + 1):
        edges.append((0, j))
        deg[j] += 1
    deg[0] = d

    def fill(i):
        if i == n:
            yield tuple(edges)
            return
        need = d - deg[i]
        if need < 0:
            return
        options = [j for j in range(i + 1, n) if deg[j] < d]
        if len(options) < need:
            return
        for chosen in combinations(options, need):
            for j in chosen:
                edges.append((i, j))
                deg[j] += 1
            deg[i] += need
            yield from fill(i + 1)
            deg[i] -= need
            for j in chosen:
                edges.pop()
                deg[j] -= 1

    yield from fill(1)


def enumerate_regular_topologies(v: int, d: int) -> list[Topology]:
    """Connected simple d-regular graphs on v vertices, one per isomorphism class."""
    if v < 1 or d < 0:
        raise ValueError("need v >= 1 and d >= 0")
    if (v * d) % 2:
        raise ValueError(f"no {d}-regular graph on {v} vertices: v*d is odd")
    if v > MAX_VERTICES:
        raise ValueError(f"v = {v} is beyond desk scale (at most {MAX_VERTICES})")
    if d == 0:
        return [Topology(1, ())] if v == 1 else []
    seen = {}
    for edges in _regular_graphs_rooted(v, d):
        t = Topology(v, edges)
        if not t.is_connected():
            continue
        key = t.canonical_form()
        if key not in seen:
            seen[key] = Topology(v, key)
    return [seen[k] for k in sorted(seen)]


# Vertex numbering of the two cubic 6-vertex topologies used in the proofs:
# the prism has triangles q1q2q3, q4q5q6 and rungs q1q4, q2q5, q3q6.
PRISM = Topology(6, ((0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (0, 3), (1, 4), (2, 5)))
K33 = Topology(6, ((0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (2, 4), (2, 5), (3, 4), (3, 5)))


def topology_name(t: Topology) -> str:
    key = t.canonical_form()
    if key == PRISM.canonical_form():
        return "prism"
    if key == K33.canonical_form():
        return "K3,3"
    return f"{t.n}-vertex graph"


# -- labeling search --------------------------------------------------------

@dataclass
class SearchResult:
    topology: Topology
    radius: int
    survivors: list[LabeledGraph]
    pruned: Counter = field(default_factory=Counter)


def _t_range(y: Sequence[int], w: Sequence[int], bound: int) -> range:
    """Integers t with every entry of y + t*w in [-bound, bound]."""
    lo, hi = None, None
    for yi, wi in zip(y, w):
        if wi == 0:
            if abs(yi) > bound:
                return range(0)
            continue
        a = Fraction(-bound - yi, wi)
        b = Fraction(bound - yi, wi)
        if a > b:
            a, b = b, a
        a_int = -((-a.numerator) // a.denominator)
        b_int = b.numerator // b.denominator
        lo = a_int if lo is None else max(lo, a_int)
        hi = b_int if hi is None else min(hi, b_int)
    if lo is None:
        return range(0)
    return range(lo, hi + 1)


def search_labelings(topology: Topology, radius: int) -> SearchResult:
    """All labelings of a d-regular topology valid at torus-manifold level.

    Gauge: vertex q1 carries the standard basis of Z^d on its edges in order.
    Every other label has entries in [-radius, radius]. Candidates at a vertex
    are generated from the congruence with an already completed neighbour
    (each remaining weight is a weight of the neighbour plus a multiple of
    the connecting label), which makes the search exhaustive over the box.
    """
    n = topology.n
    adj = topology.adjacency()
    degs = [len(a) for a in adj]
    d = degs[0] if n else 0
    if any(x != d for x in degs):
        raise ValueError("topology is not regular")
    edge_index = {e: i for i, e in enumerate(topology.edges)}
    names = topology.vertex_names()
    incident = [[edge_index[tuple(sorted((x, y)))] for y in sorted(adj[x])] for x in range(n)]
    labels: list[Optional[lat.Weight]] = [None] * len(topology.edges)
    result = SearchResult(topology, radius, [])
    pruned = result.pruned

    def weight(x: int, ei: int) -> lat.Weight:
        lo = topology.edges[ei][0]
        return labels[ei] if x == lo else lat.neg(labels[ei])

    def set_weight(x: int, ei: int, w: lat.Weight):
        lo = topology.edges[ei][0]
        labels[ei] = w if x == lo else lat.neg(w)

    # BFS order with parents
    order, parent = [0], {0: None}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y in sorted(adj[x]):
            if y not in parent:
                parent[y] = x
                order.append(y)
                queue.append(y)
    if len(order) != n:
        raise ValueError("topology is not connected")
    position = {x: i for i, x in enumerate(order)}

    for ei, w in zip(incident[0], lat.standard_basis(d)):
        set_weight(0, ei, w)

    def finish():
        g = LabeledGraph(d, d, tuple(names), tuple(
            Edge(names[i], names[j], labels[k]) for k, (i, j) in enumerate(topology.edges)))
        report = validate_description(g, "torus")
        if report.ok:
            result.survivors.append(g)
            pruned["survivor"] += 1
        else:
            for code in sorted(report.codes()):
                pruned[code] += 1

    def complete(x: int) -> bool:
        # congruence against every earlier completed neighbour
        wx = [weight(x, ei) for ei in incident[x]]
        if not lat.is_basis(wx):
            pruned["basis"] += 1
            return False
        for ei in incident[x]:
            y = topology.edges[ei][0] if topology.edges[ei][1] == x else topology.edges[ei][1]
            if position[y] < position[x]:
                wy = [weight(y, ej) for ej in incident[y]]
                if not lat.multiset_congruent_mod(labels[ei], wx, wy):
                    pruned["congruence"] += 1
                    return False
        return True

    def step(i: int):
        if i == len(order):
            finish()
            return
        x = order[i]
        p = parent[x]
        link = edge_index[tuple(sorted((x, p)))]
        w = weight(p, link)
        others_p = [weight(p, ej) for ej in incident[p] if ej != link]
        slots = [ej for ej in incident[x] if ej != link]
        for perm in permutations(others_p):
            choices = []
            for ej, y in zip(slots, perm):
                if labels[ej] is not None:
                    known = weight(x, ej)
                    diff = lat.sub(known, y)
                    t = _multiple_of(diff, w)
                    if t is None:
                        pruned["congruence"] += 1
                        choices = None
                        break
                    choices.append([known])
                else:
                    opts = [lat.add(y, lat.scale(t, w)) for t in _t_range(y, w, radius)]
                    opts = [o for o in opts if not lat.is_zero(o)]
                    if not opts:
                        pruned["range"] += 1
                        choices = None
                        break
                    choices.append(opts)
            if choices is None:
                continue
            fresh = [ej for ej in slots if labels[ej] is None]
            for combo in product(*choices):
                for ej, val in zip(slots, combo):
                    if labels[ej] is None or ej in fresh:
                        set_weight(x, ej, val)
                if complete(x):
                    step(i + 1)
                for ej in fresh:
                    labels[ej] = None

    step(1)
    return result


def _multiple_of(v: Sequence[int], w: Sequence[int]) -> Optional[int]:
    """The integer t with v = t*w, or None."""
    t = None
    for vi, wi in zip(v, w):
        if wi == 0:
            if vi != 0:
                return None
            continue
        if vi % wi:
            return None
        q = vi // wi
        if t is None:
            t = q
        elif t != q:
            return None
    return 0 if t is None else t


# -- the 6-vertex cubic case ----------------------------------------------

@dataclass(frozen=True)
class LabelAssignment:
    graph: LabeledGraph
    base: str
    tags: tuple[str, ...]

    def labels(self) -> dict[str, list[int]]:
        return {f"{e.source}-{e.target}": list(e.label) for e in self.graph.edges}


def verify_k33_unlabelable(radius: int = 2) -> dict:
    """Exhaustive search for valid labelings of K3,3; expected to find none."""
    if radius < 1:
        raise ValueError("radius must be positive")
    res = search_labelings(K33, radius)
    return {
        "topology": "K3,3",
        "radius": radius,
        "survivors": len(res.survivors),
        "pruned": dict(sorted(res.pruned.items())),
        "labelings": [[list(e.label) for e in g.edges] for g in res.survivors],
    }


def determinant_signature(g: LabeledGraph) -> tuple[tuple[int, int], ...]:
    """Histogram of |det| over all rank-sized sets of edge labels.

    Unchanged by a change of basis, by renaming vertices and by reversing
    edges, so graphs with different signatures are not isomorphic.
    """
    labels = [e.label for e in g.edges]
    hist = Counter(abs(lat.determinant(list(ws))) for ws in combinations(labels, g.rank))
    return tuple(sorted(hist.items()))


def family_tags(g: LabeledGraph, radius: int) -> tuple[str, ...]:
    """Every m1(k) / m2(k,l) with |k|, |l| <= 2*radius isomorphic to ``g``.

    In the normalized gauge a label a + k*c has entries bounded by the radius
    and so do a and c, which bounds |k| by twice the radius.
    """
    bound = 2 * radius
    c13 = chern_number(g, (1, 1, 1))
    tags = []
    ksq = c13 / 2 - 27
    if ksq.denominator == 1 and ksq >= 0:
        r = int(round(float(ksq) ** 0.5))
        while r * r > ksq:
            r -= 1
        while (r + 1) * (r + 1) <= ksq:
            r += 1
        if r * r == ksq and r <= bound:
            for k in sorted({-r, r}):
                if isomorphic_up_to_basis(g, m1(k)) is not None:
                    tags.append(f"m1(k={k})")
    if c13 == 54:
        sig = determinant_signature(g)
        for k in range(-bound, bound + 1):
            for l in range(-bound, bound + 1):
                candidate = m2(k, l)
                if determinant_signature(candidate) != sig:
                    continue
                if isomorphic_up_to_basis(g, candidate) is not None:
                    tags.append(f"m2(k={k},l={l})")
    return tuple(tags)


def classify_prism_labelings(radius: int = 2) -> list[LabelAssignment]:
    """Valid prism labelings in the box, each tagged with its family members."""
    if radius < 1:
        raise ValueError("radius must be positive")
    res = search_labelings(PRISM, radius)
    return [LabelAssignment(g, "q1", family_tags(g, radius)) for g in res.survivors]


def _prism_order(g: LabeledGraph) -> list[str]:
    """Vertices of ``g`` listed as q1..q6 of the prism numbering."""
    if len(g.vertices) != 6:
        raise ValueError("prism graphs have 6 vertices")
    pairs = {frozenset((e.source, e.target)) for e in g.edges}
    if len(pairs) != 9 or len(g.edges) != 9:
        raise ValueError("graph does not have prism topology")
    for perm in permutations(g.vertices):
        if all(frozenset((perm[i], perm[j])) in pairs for i, j in PRISM.edges):
            return list(perm)
    raise ValueError("graph does not have prism topology")


def prism_labels(g: LabeledGraph, order: Optional[Sequence[str]] = None) -> dict:
    """``w[(i, j)]`` for i < j: the label oriented from q_i to q_j."""
    order = list(order) if order is not None else _prism_order(g)
    pos = {v: i + 1 for i, v in enumerate(order)}
    w = {}
    for e in g.edges:
        i, j = pos[e.source], pos[e.target]
        w[(min(i, j), max(i, j))] = e.label if i < j else lat.neg(e.label)
    return w


def verify_prism_relations(g: LabeledGraph, order: Optional[Sequence[str]] = None) -> dict:
    """Check the five label relations of a valid prism and report the branches."""
    w = prism_labels(g, order)

    def cong(x, y, mod):
        return lat.congruent_mod(mod, x, y)

    def either(p, q, r, s):
        # p = q and r = s (mod p), or r = s and p = q (mod r)
        first = w[p] == w[q] and cong(w[r], w[s], w[p])
        second = w[r] == w[s] and cong(w[p], w[q], w[r])
        return [name for name, ok in (("first", first), ("second", second)) if ok]

    relations = {
        "1": ["holds"] if lat.add(w[(1, 2)], w[(2, 3)]) == w[(1, 3)] else [],
        "2": ["holds"] if lat.add(w[(4, 5)], w[(5, 6)]) == w[(4, 6)] else [],
        "3": either((1, 2), (4, 5), (1, 4), (2, 5)),
        "4": either((1, 3), (4, 6), (1, 4), (3, 6)),
        "5": either((2, 3), (5, 6), (2, 5), (3, 6)),
    }
    return {"relations": relations, "ok": all(relations.values())}


# -- the 4-dimensional relations --------------------------------------------

def _bases_in_box(radius: int) -> list[tuple[lat.Weight, lat.Weight]]:
    box = [v for v in product(range(-radius, radius + 1), repeat=2) if v != (0, 0)]
    return [(a, b) for a in box for b in box if abs(a[0] * b[1] - a[1] * b[0]) == 1]


def _integral_of_one(g: LabeledGraph) -> MultiPoly:
    return localization_sum(g, ()).numerator


def verify_triangle_relation(radius: int = 3) -> dict:
    """The integral of 1 over a 3-vertex 4-dimensional graph vanishes iff c = a + b.

    Symbolically: with a, b, c independent generic forms, the numerator of
    the sum is a multiple of a + b - c. By sweep: every basis a, b and every
    nonzero c with entries in [-radius, radius].
    """
    generic = triangle(*lat.standard_basis(3))
    numerator = _integral_of_one(generic)
    relation = MultiPoly.linear((1, 1, -1))
    q, r = numerator.divmod(relation)
    symbolic_ok = r.is_zero() and q.degree() == 0 and not q.is_zero()

    box = [v for v in product(range(-radius, radius + 1), repeat=2) if v != (0, 0)]
    checked = zeros = 0
    mismatches = []
    for a, b in _bases_in_box(radius):
        for c in box:
            checked += 1
            vanishes = _integral_of_one(triangle(a, b, c)).is_zero()
            zeros += vanishes
            if vanishes != (c == lat.add(a, b)):
                mismatches.append([list(a), list(b), list(c)])
    return {
        "symbolic_numerator": str(numerator),
        "symbolic_ok": symbolic_ok,
        "radius": radius,
        "checked": checked,
        "vanishing": zeros,
        "mismatches": mismatches,
        "ok": symbolic_ok and not mismatches,
    }


def verify_square_relation(radius: int = 3, basis_radius: int = 0) -> dict:
    """The integral of 1 over a 4-cycle vanishes iff a = d or b = c.

    Labels: p1 -a-> p2, p1 -b-> p3, p2 -c-> p4, p3 -d-> p4. Symbolically the
    numerator for generic a, b, c, d is a multiple of (d - a)(c - b). The
    sweep runs a, b over bases with entries in [-basis_radius, basis_radius]
    (only the standard basis when ``basis_radius`` is 0, which loses nothing
    since both vanishing and validity are basis independent) and c, d over
    all nonzero vectors with entries in [-radius, radius]. For
    vanishing cases that also pass validation, the edge congruence forces
    c = b + m*a (when a = d) or d = a + m*b (when b = c).
    """
    generic = square(*lat.standard_basis(4))
    numerator = _integral_of_one(generic)
    x = [MultiPoly.linear(e) for e in lat.standard_basis(4)]
    relation = (x[3] - x[0]) * (x[2] - x[1])
    q, r = numerator.divmod(relation)
    symbolic_ok = r.is_zero() and q.degree() == 0 and not q.is_zero()

    box = [v for v in product(range(-radius, radius + 1), repeat=2) if v != (0, 0)]
    checked = zeros = valid = 0
    mismatches, form_failures = [], []
    bases = _bases_in_box(basis_radius) if basis_radius > 0 else [tuple(lat.standard_basis(2))]
    for a, b in bases:
        for c in box:
            for d in box:
                checked += 1
                g = square(a, b, c, d)
                vanishes = _integral_of_one(g).is_zero()
                if vanishes != (a == d or b == c):
                    mismatches.append([list(a), list(b), list(c), list(d)])
                if not vanishes:
                    continue
                zeros += 1
                if not validate_description(g, "gkm").ok:
                    continue
                valid += 1
                shaped = (a == d and lat.in_sublattice([a], lat.sub(c, b))) or \
                         (b == c and lat.in_sublattice([b], lat.sub(d, a)))
                if not shaped:
                    form_failures.append([list(a), list(b), list(c), list(d)])
    return {
        "symbolic_numerator": str(numerator),
        "symbolic_ok": symbolic_ok,
        "radius": radius,
        "basis_radius": basis_radius,
        "checked": checked,
        "vanishing": zeros,
        "valid": valid,
        "mismatches": mismatches,
        "form_failures": form_failures,
        "ok": symbolic_ok and not mismatches and not form_failures,
    }


# -- report -------------------------------------------------------------------

def classify_report(radius: int = 2) -> dict:
    """Topology census, K3,3 search and tagged prism survivors as plain data."""
    census = enumerate_regular_topologies(6, 3)
    k33 = verify_k33_unlabelable(radius)
    prism = search_labelings(PRISM, radius)
    survivors = []
    untagged = 0
    for g in prism.survivors:
        tags = family_tags(g, radius)
        untagged += not tags
        survivors.append({
            "labels": {f"{e.source}-{e.target}": list(e.label) for e in g.edges},
            "tags": list(tags),
        })
    return {
        "radius": radius,
        "census": {
            "vertices": 6,
            "valence": 3,
            "classes": len(census),
            "topologies": [{"name": topology_name(t), "edges": [list(e) for e in t.edges]}
                           for t in census],
        },
        "k33": {k: v for k, v in k33.items() if k != "labelings"},
        "prism": {
            "survivors": len(survivors),
            "untagged": untagged,
            "pruned": dict(sorted(prism.pruned.items())),
            "labelings": survivors,
        },
    }
