"""Exact integer linear algebra on weight vectors.

Weights are plain tuples of Python ints (arbitrary precision). Nothing here
touches floating point.
"""

from collections import Counter
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Iterable, Optional, Sequence

Weight = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]


def as_weight(w: Iterable[int]) -> Weight:
    return tuple(int(x) for x in w)


def is_zero(w: Sequence[int]) -> bool:
    return all(x == 0 for x in w)


def content(w: Sequence[int]) -> int:
    """Return the gcd of the absolute values of the entries of ``w``."""
    g = 0
    for x in w:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero weight")
    return g


def add(u: Sequence[int], v: Sequence[int]) -> Weight:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence[int], v: Sequence[int]) -> Weight:
    return tuple(a - b for a, b in zip(u, v))


def neg(u: Sequence[int]) -> Weight:
    return tuple(-a for a in u)


def scale(c: int, u: Sequence[int]) -> Weight:
    return tuple(c * a for a in u)


def dot(u: Sequence[int], v: Sequence[int]):
    return sum(a * b for a, b in zip(u, v))


def canonical_sign(w: Sequence[int]) -> int:
    """+1 if the first nonzero entry is positive, -1 otherwise."""
    for x in w:
        if x:
            return 1 if x > 0 else -1
    raise ValueError("zero weight")


def unit_vector(k: int, i: int) -> Weight:
    return tuple(1 if j == i else 0 for j in range(k))


def standard_basis(k: int) -> list[Weight]:
    return [unit_vector(k, i) for i in range(k)]


# -- matrices -------------------------------------------------------------

def mat_vec(m: Sequence[Sequence[int]], v: Sequence[int]) -> Weight:
    return tuple(dot(row, v) for row in m)


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(dot(row, col) for col in cols) for row in a)


def transpose(m: Sequence[Sequence[int]]) -> Matrix:
    return tuple(zip(*m))


def identity(k: int) -> Matrix:
    return tuple(unit_vector(k, i) for i in range(k))


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Integer determinant by fraction-free (Bareiss) elimination."""
    a = [list(row) for row in m]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank(vectors: Sequence[Sequence[int]]) -> int:
    """Rank over Q of a list of integer vectors."""
    rows = [[Fraction(x) for x in v] for v in vectors]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def linearly_independent(vectors: Sequence[Sequence[int]]) -> bool:
    return rank(vectors) == len(vectors)


def is_basis(ws: Sequence[Sequence[int]]) -> bool:
    """True iff the ``k`` vectors ``ws`` form a basis of Z^k."""
    if not ws:
        raise ValueError("empty weight list")
    k = len(ws[0])
    if len(ws) != k:
        raise ValueError(f"expected {k} weights for rank {k}, got {len(ws)}")
    return abs(determinant(ws)) == 1


def hermite_normal_form(vectors: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of the lattice spanned by ``vectors``.

    Rows are returned in echelon order with positive pivots and entries above
    each pivot reduced into ``[0, pivot)``. Zero rows are dropped.
    """
    rows = [list(v) for v in vectors if not is_zero(v)]
    if not rows:
        return []
    ncols = len(rows[0])
    out: list[list[int]] = []
    for c in range(ncols):
        active = [r for r in rows if r[c] != 0]
        rest = [r for r in rows if r[c] == 0]
        # Euclid on the column until one row keeps a nonzero entry.
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[c]))
            head = active[0]
            reduced = [head]
            for r in active[1:]:
                q = r[c] // head[c]
                r = [x - q * y for x, y in zip(r, head)]
                if r[c] != 0:
                    reduced.append(r)
                elif not is_zero(r):
                    rest.append(r)
            active = reduced
        if active:
            pivot = active[0]
            if pivot[c] < 0:
                pivot = [-x for x in pivot]
            out.append(pivot)
        rows = rest
        if not rows:
            break
    for i, row in enumerate(out):
        c = next(j for j, x in enumerate(row) if x)
        for prev in out[:i]:
            q = prev[c] // row[c]
            if q:
                prev[:] = [x - q * y for x, y in zip(prev, row)]
    return out


def in_sublattice(generators: Sequence[Sequence[int]], w: Sequence[int]) -> bool:
    """True iff ``w`` is an integer combination of ``generators``."""
    rest = list(w)
    for row in hermite_normal_form(generators):
        c = next(j for j, x in enumerate(row) if x)
        if rest[c] % row[c]:
            return False
        q = rest[c] // row[c]
        rest = [x - q * y for x, y in zip(rest, row)]
    return is_zero(rest)


# -- residues modulo Z*w ---------------------------------------------------

def _column_reducer(w: Sequence[int]) -> Matrix:
    """Unimodular ``U`` with ``U @ w = (content(w), 0, ..., 0)``.

    This is the left factor of the Smith normal form of the one-column
    matrix ``[w]``.
    """
    k = len(w)
    col = list(w)
    u = [list(r) for r in identity(k)]
    while True:
        nz = [i for i in range(k) if col[i] != 0]
        if not nz:
            raise ValueError("zero weight")
        i = min(nz, key=lambda j: (abs(col[j]), j))
        for j in nz:
            if j != i:
                q = col[j] // col[i]
                col[j] -= q * col[i]
                u[j] = [x - q * y for x, y in zip(u[j], u[i])]
        if sum(1 for x in col if x) == 1:
            break
    i = next(j for j in range(k) if col[j])
    if i != 0:
        col[0], col[i] = col[i], col[0]
        u[0], u[i] = u[i], u[0]
    if col[0] < 0:
        col[0] = -col[0]
        u[0] = [-x for x in u[0]]
    return tuple(tuple(r) for r in u)


class ResidueMap:
    """Canonical representatives of Z^k / Z*w."""

    def __init__(self, w: Sequence[int]):
        self.w = as_weight(w)
        self.g = content(self.w)
        self._u = _column_reducer(self.w)

    def __call__(self, x: Sequence[int]) -> Weight:
        y = mat_vec(self._u, x)
        return (y[0] % self.g,) + y[1:]


def congruent_mod(w: Sequence[int], x: Sequence[int], y: Sequence[int]) -> bool:
    """True iff ``x - y`` lies in Z*w."""
    return in_sublattice([w], sub(x, y))


def multiset_congruent_mod(w, a, b) -> bool:
    """True iff some bijection ``a -> b`` matches elements that differ by Z*w."""
    if len(a) != len(b):
        raise ValueError(f"multiset sizes differ: {len(a)} != {len(b)}")
    res = ResidueMap(w)
    return Counter(res(x) for x in a) == Counter(res(x) for x in b)


def generic_circle(labels: Sequence[Sequence[int]]) -> Weight:
    """A direction pairing nonzero with every label.

    Returns ``(1, N, N^2, ...)`` with ``N = 2B + 1`` where ``B`` bounds the
    absolute entries; a nonzero label then has a nonzero balanced base-N
    expansion.
    """
    if not labels:
        raise ValueError("empty label list")
    k = len(labels[0])
    bound = max(abs(x) for w in labels for x in w)
    base = 2 * bound + 1
    return tuple(base ** i for i in range(k))


# -- unimodular maps -------------------------------------------------------

def _solve_rational(src: Sequence[Sequence[int]], dst: Sequence[Sequence[int]]):
    """Solve ``U @ s_i = d_i`` for square invertible ``src`` (rows s_i)."""
    k = len(src)
    # U S^T = D^T  <=>  S U^T = D ; Gauss-Jordan on [S | D].
    aug = [[Fraction(x) for x in s] + [Fraction(x) for x in d] for s, d in zip(src, dst)]
    for c in range(k):
        p = next((r for r in range(c, k) if aug[r][c] != 0), None)
        if p is None:
            return None
        aug[c], aug[p] = aug[p], aug[c]
        piv = aug[c][c]
        aug[c] = [x / piv for x in aug[c]]
        for r in range(k):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    ut = [row[k:] for row in aug]
    return [[ut[j][i] for j in range(k)] for i in range(k)]


def _integral_unimodular(m) -> Optional[Matrix]:
    if m is None or any(x.denominator != 1 for row in m for x in row):
        return None
    mi = tuple(tuple(int(x) for x in row) for row in m)
    return mi if abs(determinant(mi)) == 1 else None


def find_unimodular_map(pairs, bound: int = 3) -> Optional[Matrix]:
    """Find ``U`` in GL(k, Z) with ``U @ s = d`` for every pair ``(s, d)``.

    When the sources span Q^k the map is unique and is solved for directly.
    Otherwise the images of a completing set of unit vectors are enumerated
    with entries in ``[-bound, bound]``. Returns ``None`` if nothing fits.
    """
    pairs = [(as_weight(s), as_weight(d)) for s, d in pairs]
    if not pairs:
        return None
    k = len(pairs[0][0])
    chosen: list[tuple[Weight, Weight]] = []
    for s, d in pairs:
        if rank([c[0] for c in chosen] + [s]) > len(chosen):
            chosen.append((s, d))
    missing: list[Weight] = []
    for i in range(k):
        e = unit_vector(k, i)
        if rank([c[0] for c in chosen] + missing + [e]) > len(chosen) + len(missing):
            missing.append(e)

    def check(u: Matrix) -> bool:
        return all(mat_vec(u, s) == d for s, d in pairs)

    src = [c[0] for c in chosen] + missing
    if not missing:
        u = _integral_unimodular(_solve_rational(src, [c[1] for c in chosen]))
        return u if u is not None and check(u) else None
    box = range(-bound, bound + 1)
    for images in product(product(box, repeat=k), repeat=len(missing)):
        u = _integral_unimodular(_solve_rational(src, [c[1] for c in chosen] + list(images)))
        if u is not None and check(u):
            return u
    return None
