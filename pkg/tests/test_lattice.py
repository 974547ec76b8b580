from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torusgraph import lattice as lat

small = st.integers(-6, 6)


def vec(k):
    return st.tuples(*[small] * k)


def nonzero_vec(k):
    return vec(k).filter(lambda v: any(v))


@pytest.mark.parametrize("w, expected", [((2, 4, 6), 2), ((1, 0, 0), 1), ((0, -3, 0), 3)])
def test_content(w, expected):
    assert lat.content(w) == expected


def test_content_zero_weight():
    with pytest.raises(ValueError, match="zero weight"):
        lat.content((0, 0))


def test_in_sublattice_examples():
    a, b = (1, 0, 0), (0, 1, 0)
    assert lat.in_sublattice([a, b], (1, 1, 0))
    assert not lat.in_sublattice([a, b], (0, 0, 1))
    assert not lat.in_sublattice([(2, 0)], (1, 0))
    assert lat.in_sublattice([], (0, 0))
    assert not lat.in_sublattice([], (1, 0))


@settings(max_examples=100, deadline=None)
@given(nonzero_vec(2), nonzero_vec(2), vec(2))
def test_in_sublattice_matches_cramer(g1, g2, w):
    det = g1[0] * g2[1] - g1[1] * g2[0]
    if det == 0:
        return
    # unique rational coefficients; membership iff both are integers
    x = Fraction(w[0] * g2[1] - w[1] * g2[0], det)
    y = Fraction(g1[0] * w[1] - g1[1] * w[0], det)
    expected = x.denominator == 1 and y.denominator == 1
    assert lat.in_sublattice([g1, g2], w) == expected


@settings(max_examples=60, deadline=None)
@given(nonzero_vec(3), vec(3))
def test_in_sublattice_single_generator(g, w):
    # w in Zg iff w is parallel to g with an integral ratio
    i = next(j for j, x in enumerate(g) if x)
    expected = w[i] % g[i] == 0 and lat.scale(w[i] // g[i], g) == tuple(w)
    assert lat.in_sublattice([g], w) == expected


@settings(max_examples=60, deadline=None)
@given(st.lists(nonzero_vec(3), min_size=1, max_size=3), vec(3), st.integers(-3, 3))
def test_in_sublattice_presentation_independent(gens, w, t):
    # replacing a generator by itself plus a multiple of another keeps the lattice
    alt = list(gens)
    if len(alt) > 1:
        alt[0] = lat.add(alt[0], lat.scale(t, alt[1]))
    alt.append(lat.add(gens[0], gens[-1]))
    assert lat.in_sublattice(gens, w) == lat.in_sublattice(alt, w)


def _brute_congruent(w, A, B):
    for perm in permutations(B):
        if all(lat.in_sublattice([w], lat.sub(x, y)) for x, y in zip(A, perm)):
            return True
    return False


@pytest.mark.parametrize("k", range(-4, 5))
def test_congruence_prism_pair(k):
    A = [(1, 0, 0), (1, 1, 0), (0, 0, 1)]
    B = [(-1, 0, 0), (0, 1, 0), (k, 0, 1)]
    assert lat.multiset_congruent_mod((1, 0, 0), A, B)


def test_congruence_examples():
    assert lat.multiset_congruent_mod((3, 1), [(1, 2), (0, 5)], [(1, 2), (0, 5)])
    assert not lat.multiset_congruent_mod((1, 1), [(0, 1)], [(1, 0)])
    with pytest.raises(ValueError):
        lat.multiset_congruent_mod((1, 0), [(1, 0)], [])


def test_congruence_non_primitive_modulus():
    # (1,0) and (3,0) differ by (2,0) in Z(2,0); (1,0) and (2,0) do not
    assert lat.multiset_congruent_mod((2, 0), [(1, 0)], [(3, 0)])
    assert not lat.multiset_congruent_mod((2, 0), [(1, 0)], [(2, 0)])


@settings(max_examples=150, deadline=None)
@given(nonzero_vec(2), st.lists(vec(2), min_size=1, max_size=3), st.data())
def test_congruence_matches_brute_force(w, A, data):
    B = data.draw(st.lists(vec(2), min_size=len(A), max_size=len(A)))
    assert lat.multiset_congruent_mod(w, A, B) == _brute_congruent(w, A, B)


@settings(max_examples=80, deadline=None)
@given(nonzero_vec(3), st.lists(vec(3), min_size=1, max_size=3), st.data())
def test_congruence_shifted_copies(w, A, data):
    shifts = data.draw(st.lists(st.integers(-3, 3), min_size=len(A), max_size=len(A)))
    B = [lat.add(a, lat.scale(t, w)) for a, t in zip(A, shifts)][::-1]
    assert lat.multiset_congruent_mod(w, A, B)


def test_generic_circle_examples():
    assert lat.generic_circle([(1, 0)]) == (1, 3)
    assert lat.dot((1, -1), lat.generic_circle([(1, -1)])) == -2
    assert lat.generic_circle([(2, 0, 1), (-1, 1, 0)]) == (1, 5, 25)
    with pytest.raises(ValueError):
        lat.generic_circle([])


@settings(max_examples=100, deadline=None)
@given(st.lists(nonzero_vec(3), min_size=1, max_size=8))
def test_generic_circle_never_pairs_to_zero(labels):
    xi = lat.generic_circle(labels)
    assert all(lat.dot(w, xi) != 0 for w in labels)


def test_is_basis():
    assert lat.is_basis([(1, 0, 0), (1, 1, 0), (0, 0, 1)])
    assert not lat.is_basis([(2, 0), (0, 1)])
    a, b, c = lat.standard_basis(3)
    assert lat.is_basis([a, lat.add(a, b), c])
    with pytest.raises(ValueError):
        lat.is_basis([(1, 0)])


def test_determinant_matches_cofactor_expansion():
    m = ((2, -1, 3), (0, 4, 1), (5, 2, -2))
    cof = (2 * (4 * -2 - 1 * 2) - (-1) * (0 * -2 - 1 * 5) + 3 * (0 * 2 - 4 * 5))
    assert lat.determinant(m) == cof


def test_rank():
    assert lat.rank([(1, 0), (2, 0)]) == 1
    assert lat.rank([(1, 2, 3), (4, 5, 6), (7, 8, 9)]) == 2


def test_find_unimodular_identity_and_swap():
    e = lat.standard_basis(3)
    assert lat.find_unimodular_map([(v, v) for v in e]) == lat.identity(3)
    u = lat.find_unimodular_map([(e[0], e[1]), (e[1], e[0]), (e[2], e[2])])
    assert u == ((0, 1, 0), (1, 0, 0), (0, 0, 1))
    assert lat.determinant(u) == -1


def test_find_unimodular_basis_substitution():
    # a2 - a1, a3 - a2, a1  ->  a, b, c
    pairs = [((-1, 1, 0), (1, 0, 0)), ((0, -1, 1), (0, 1, 0)), ((1, 0, 0), (0, 0, 1))]
    u = lat.find_unimodular_map(pairs)
    assert u is not None and abs(lat.determinant(u)) == 1
    for src, dst in pairs:
        assert lat.mat_vec(u, src) == dst


def test_find_unimodular_none():
    assert lat.find_unimodular_map([((1, 0), (2, 0)), ((0, 1), (0, 1))]) is None
    assert lat.find_unimodular_map([((1, 0), (1, 0)), ((2, 0), (0, 1))]) is None


def test_find_unimodular_rank_deficient_sources():
    u = lat.find_unimodular_map([((1, 0, 0), (0, 1, 0))])
    assert u is not None and abs(lat.determinant(u)) == 1
    assert lat.mat_vec(u, (1, 0, 0)) == (0, 1, 0)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_find_unimodular_recovers_random_map(data):
    import random
    from corpus import random_unimodular
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    u = random_unimodular(3, rng)
    src = lat.standard_basis(3) + [(1, 1, 1)]
    found = lat.find_unimodular_map([(s, lat.mat_vec(u, s)) for s in src])
    assert found == u
