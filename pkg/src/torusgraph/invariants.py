"""Chern numbers by localization and the chi_y-genus by Kosniowski's formula.

At an isolated fixed point with tangent weights w_1..w_n, the equivariant
Chern class c_i restricts to the i-th elementary symmetric polynomial of the
weights (as linear forms), and the equivariant Euler class of the normal
space is their product. A Chern number is therefore a sum of fractions over
the vertices, which must collapse to a constant.
"""

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import lattice as lat
from .graph import LabeledGraph, subgraph_for_circle, weights_at
from .symbolic import (FactoredRational, MultiPoly, add_fractions, evaluate_at,
                       extract_constant, poly_elementary_symmetric)


def partitions(d: int, largest: Optional[int] = None):
    """Nonincreasing partitions of ``d`` (the empty tuple for ``d = 0``)."""
    if largest is None:
        largest = d
    if d == 0:
        yield ()
        return
    for first in range(min(d, largest), 0, -1):
        for rest in partitions(d - first, first):
            yield (first,) + rest


def partition_name(parts: Sequence[int]) -> str:
    """Report key for a Chern monomial, e.g. ``(2, 1) -> "c1c2"``."""
    if not parts:
        return "1"
    c = Counter(parts)
    return "".join(f"c{i}" + (f"^{c[i]}" if c[i] > 1 else "") for i in sorted(c))


def _normalize_parts(parts) -> tuple[int, ...]:
    parts = tuple(sorted((int(p) for p in parts), reverse=True))
    if any(p < 1 for p in parts):
        raise ValueError(f"partition parts must be positive, got {parts}")
    return parts


def localization_sum(g: LabeledGraph, parts: Sequence[int]) -> FactoredRational:
    """``sum_v prod_j sigma_{parts_j}(weights at v) / prod(weights at v)``."""
    parts = _normalize_parts(parts)
    terms = []
    for v in g.vertices:
        ws = weights_at(g, v)
        num = MultiPoly.constant(g.rank, 1)
        for p in parts:
            if p > len(ws):
                num = MultiPoly.zero(g.rank)
                break
            num = num * poly_elementary_symmetric(ws, p)
        terms.append(FactoredRational.from_weights(num, ws))
    return add_fractions(terms)


class DegreeVanishingError(ValueError):
    pass


def _sample_points(f: FactoredRational, count: int, rng: random.Random, spread: int = 10**6):
    points = []
    while len(points) < count:
        pt = [rng.randint(-spread, spread) for _ in range(f.nvars)]
        if all(form.value(pt) != 0 for form in f.denominator):
            points.append(pt)
    return points


def chern_number(g: LabeledGraph, parts: Sequence[int], fast: bool = False,
                 rng: Optional[random.Random] = None) -> Fraction:
    """The Chern number of the monomial ``c_{p_1} ... c_{p_m}``.

    With ``fast=True`` the sum is evaluated at three random integer points and
    the values must agree; this is not a certificate.
    """
    parts = _normalize_parts(parts)
    if sum(parts) != g.half_dim:
        raise ValueError(f"partition {parts} has degree {sum(parts)}, expected {g.half_dim}")
    total = localization_sum(g, parts)
    if not fast:
        return extract_constant(total)
    rng = rng or random.Random(0)
    values = {evaluate_at(total, pt) for pt in _sample_points(total, 3, rng)}
    if len(values) != 1:
        raise ValueError(f"sum is not a constant: sampled values {sorted(values)}")
    return values.pop()


def pushforward_monomial(g: LabeledGraph, parts: Sequence[int]) -> Fraction:
    """Integral of a Chern monomial of degree at most ``n``.

    Below top degree the integral lands in negative degree and must vanish;
    a nonzero sum raises :class:`DegreeVanishingError`.
    """
    parts = _normalize_parts(parts)
    d = sum(parts)
    if d > g.half_dim:
        raise ValueError(f"degree {d} exceeds {g.half_dim}")
    if d == g.half_dim:
        return chern_number(g, parts)
    total = localization_sum(g, parts)
    if not total.numerator.is_zero():
        raise DegreeVanishingError(
            f"degree vanishing violated for {partition_name(parts)}: {total}")
    return Fraction(0)


@dataclass(frozen=True)
class GenusPolynomial:
    """``chi_y = sum_i coeffs[i] * (-y)^i``."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @property
    def n(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, y) -> Fraction:
        return sum((Fraction(c) * Fraction(-y) ** i for i, c in enumerate(self.coeffs)),
                   Fraction(0))

    def reversed(self) -> "GenusPolynomial":
        return GenusPolynomial(self.coeffs[::-1])

    def __str__(self):
        terms = []
        for i, a in enumerate(self.coeffs):
            c = a * (-1) ** i
            if c == 0:
                continue
            mono = "" if i == 0 else ("y" if i == 1 else f"y^{i}")
            if mono and abs(c) == 1:
                s = ("-" if c < 0 else "") + mono
            else:
                s = f"{c}{mono}"
            terms.append(s)
        return " + ".join(terms).replace("+ -", "- ") or "0"


class InconsistentNormalDataError(ValueError):
    pass


def _check_circle(g: LabeledGraph, xi: Sequence[int]) -> None:
    if len(xi) != g.rank:
        raise ValueError(f"circle direction has {len(xi)} entries, rank is {g.rank}")
    for e in g.edges:
        if lat.dot(e.label, xi) == 0:
            raise ValueError(f"circle {list(xi)} pairs to zero with edge "
                             f"{e.source}->{e.target} label {list(e.label)}")


def default_circle(g: LabeledGraph) -> lat.Weight:
    labels = g.labels()
    return lat.generic_circle(labels) if labels else lat.unit_vector(g.rank, 0)


def chi_y_kosniowski(g: LabeledGraph, xi: Optional[Sequence[int]] = None,
                     sign: str = "-") -> GenusPolynomial:
    """Coefficient ``a_i`` counts vertices with exactly ``i`` negative weights.

    ``sign="+"`` counts positive weights instead; both give the same genus on
    a graph that describes a manifold.
    """
    if sign not in "+-" or len(sign) != 1:
        raise ValueError("sign must be '+' or '-'")
    xi = lat.as_weight(xi) if xi is not None else default_circle(g)
    _check_circle(g, xi)
    coeffs = [0] * (g.half_dim + 1)
    for v in g.vertices:
        pairings = [lat.dot(w, xi) for w in weights_at(g, v)]
        d = sum(1 for p in pairings if (p < 0 if sign == "-" else p > 0))
        coeffs[d] += 1
    return GenusPolynomial(tuple(coeffs))


def _as_integer(q: Fraction, what: str) -> int:
    if q.denominator != 1:
        raise ValueError(f"{what} = {q} is not an integer")
    return q.numerator


def chi_y_from_chern(g: LabeledGraph) -> GenusPolynomial:
    """chi_y of a 6-manifold from the Chern numbers c1c2 and c3."""
    if g.half_dim != 3:
        raise ValueError("chi_y from Chern numbers is implemented for half dimension 3 only")
    c1c2 = chern_number(g, (2, 1))
    c3 = chern_number(g, (3,))
    a0 = _as_integer(c1c2 / 24, "c1c2/24")
    a1 = _as_integer(-(c1c2 - 12 * c3) / 24, "-(c1c2 - 12 c3)/24")
    return GenusPolynomial((a0, a1, a1, a0))


def derived_genera(chi: GenusPolynomial) -> dict:
    return {
        "euler": int(chi.evaluate(-1)),
        "todd": int(chi.evaluate(0)),
        "signature": int(chi.evaluate(1)),
    }


def kosniowski_fibered(g: LabeledGraph, xi: Sequence[int]) -> GenusPolynomial:
    """chi_y as a sum over the fixed components of the circle through ``xi``.

    Edges whose label pairs to zero with ``xi`` span the fixed components.
    Each component's genus is computed from its own subgraph and shifted by
    the number of normal weights pairing negatively with ``xi``.
    """
    xi = lat.as_weight(xi)
    if len(xi) != g.rank or lat.is_zero(xi):
        raise ValueError("circle direction must be a nonzero vector of the torus rank")
    coeffs = [0] * (g.half_dim + 1)
    for comp in subgraph_for_circle(g, xi):
        members = set(comp.vertices)
        shifts = set()
        for v in comp.vertices:
            internal = sum(1 for e in comp.edges if v in (e.source, e.target))
            if internal != comp.half_dim:
                raise InconsistentNormalDataError(
                    f"inconsistent normal data: component of {comp.vertices[0]} is not regular")
            normal = [lat.dot(w, xi) for w in weights_at(g, v)]
            shifts.add(sum(1 for p in normal if p < 0))
        if len(shifts) != 1:
            raise InconsistentNormalDataError(
                f"inconsistent normal data on component {sorted(members)}: "
                f"negative normal counts {sorted(shifts)}")
        shift = shifts.pop()
        inner = chi_y_kosniowski(comp)
        for i, a in enumerate(inner.coeffs):
            coeffs[i + shift] += a
    return GenusPolynomial(tuple(coeffs))


def invariant_report(g: LabeledGraph, graph_id: str, fast: bool = False,
                     xi: Optional[Sequence[int]] = None,
                     rng: Optional[random.Random] = None) -> dict:
    """JSON-ready summary of the genus and all top-degree Chern numbers."""
    chi = chi_y_kosniowski(g, xi)
    chern = {}
    for parts in partitions(g.half_dim):
        q = chern_number(g, parts, fast=fast, rng=rng)
        chern[partition_name(parts)] = str(q)
    report = {"graph_id": graph_id}
    report.update(derived_genera(chi))
    report["chi_y"] = list(chi.coeffs)
    report["chern_numbers"] = dict(sorted(chern.items()))
    report["certified"] = not fast
    return report
