from fractions import Fraction
from itertools import combinations

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from torusgraph.symbolic import (FactoredRational, LinearForm, MultiPoly, NonConstantSumError,
                                 add_fractions, evaluate_at, extract_constant,
                                 poly_elementary_symmetric)

X = sympy.symbols("x1:5")


def to_sympy(p: MultiPoly):
    return sum((sympy.Rational(c.numerator, c.denominator)
                * sympy.Mul(*[X[i] ** k for i, k in enumerate(e)])
                for e, c in p.terms.items()), sympy.Integer(0))


def form_sympy(w):
    return sum(c * X[i] for i, c in enumerate(w))


def frac_sympy(f: FactoredRational):
    return to_sympy(f.numerator) / sympy.Mul(*[form_sympy(l.weight) for l in f.denominator])


def test_poly_arithmetic_against_sympy():
    p = MultiPoly.linear((1, 2, 0)) * MultiPoly.linear((0, -1, 3)) + 5
    q = MultiPoly.linear((1, 1, 1)) ** 3 - MultiPoly.variable(3, 2)
    for got, want in [
        (p + q, to_sympy(p) + to_sympy(q)),
        (p * q, to_sympy(p) * to_sympy(q)),
        (p - q, to_sympy(p) - to_sympy(q)),
    ]:
        assert sympy.expand(to_sympy(got) - want) == 0


def test_poly_no_zero_coefficients_stored():
    p = MultiPoly.linear((1, 1)) - MultiPoly.linear((1, 0))
    assert p.terms == {(0, 1): 1}
    assert (p - p).is_zero() and (p - p).terms == {}


def test_grlex_serialization_is_stable():
    p = MultiPoly.linear((1, 1)) ** 2
    assert str(p) == "x1^2 + 2*x1*x2 + x2^2"
    assert [e for e, _ in p.sorted_terms()] == [(2, 0), (1, 1), (0, 2)]


def test_divmod_exact_and_inexact():
    a, b = MultiPoly.linear((1, 0)), MultiPoly.linear((0, 1))
    q, r = (a * b + b * b).divmod(a + b)
    assert q == b and r.is_zero()
    q, r = (a * a + b).divmod(a)
    assert r == b


def test_elementary_symmetric_examples():
    assert poly_elementary_symmetric([(1, 0), (0, 1)], 0) == 1
    assert str(poly_elementary_symmetric([(1, 0), (0, 1)], 1)) == "x1 + x2"
    s2 = poly_elementary_symmetric([(1, 0), (0, 1), (1, 1)], 2)
    assert s2 == MultiPoly(2, {(2, 0): 1, (1, 1): 3, (0, 2): 1})
    with pytest.raises(ValueError):
        poly_elementary_symmetric([(1, 0)], 2)


def _brute_sigma(forms, i):
    nvars = len(forms[0])
    total = MultiPoly.zero(nvars)
    for subset in combinations(forms, i):
        term = MultiPoly.constant(nvars, 1)
        for w in subset:
            term = term * MultiPoly.linear(w)
        total = total + term
    return total


vec3 = st.tuples(*[st.integers(-4, 4)] * 3).filter(any)


@settings(max_examples=40)
@given(st.lists(vec3, min_size=1, max_size=4), st.data())
def test_elementary_symmetric_matches_subsets(forms, data):
    i = data.draw(st.integers(0, len(forms)))
    assert poly_elementary_symmetric(forms, i) == _brute_sigma(forms, i)


@settings(max_examples=30)
@given(st.lists(vec3, min_size=1, max_size=4))
def test_top_sigma_is_product(forms):
    prod = MultiPoly.constant(3, 1)
    for w in forms:
        prod = prod * MultiPoly.linear(w)
    assert poly_elementary_symmetric(forms, len(forms)) == prod


def test_linear_form_canonical():
    s, f = LinearForm.canonical((0, -2, 4))
    assert s == -2 and f.weight == (0, 1, -2)
    with pytest.raises(ValueError):
        LinearForm((0, 0))


def one_over(*ws, num=1):
    nvars = len(ws[0])
    return FactoredRational.from_weights(MultiPoly.constant(nvars, num), ws)


def test_add_fractions_cancellation():
    s = add_fractions([one_over((1, 0), (0, 1)), one_over((1, 0), (0, 1), num=-1)])
    assert s.numerator.is_zero()


def test_add_fractions_triangle_identity():
    a, b = (1, 0), (0, 1)
    ab = (1, 1)
    s = add_fractions([one_over(a, ab), one_over((-1, 0), b), one_over((0, -1), (-1, -1))])
    assert s.numerator.is_zero()


def test_add_fractions_square_factorization():
    a, b, c, d = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
    neg = lambda w: tuple(-x for x in w)
    s = add_fractions([one_over(a, b), one_over(neg(a), c), one_over(neg(b), d),
                       one_over(neg(c), neg(d))])
    A, B, C, D = (form_sympy(w) for w in (a, b, c, d))
    assert sympy.simplify(frac_sympy(s) - (1 / A - 1 / D) * (1 / B - 1 / C)) == 0
    # the denominator stays a product of the four forms
    assert len(s.denominator) == 4


def test_denominator_forms_stay_factored():
    s = add_fractions([one_over((1, 0), (1, 1)), one_over((2, 0), (0, 3))])
    assert all(isinstance(f, LinearForm) for f in s.denominator)
    assert [f.weight for f in s.denominator] == [(0, 1), (1, 0), (1, 1)]


fracs = st.lists(st.tuples(st.integers(-3, 3), st.lists(vec3, min_size=1, max_size=2)),
                 min_size=1, max_size=3)


@settings(max_examples=40)
@given(fracs, fracs)
def test_add_fractions_commutative_associative(xs, ys):
    fx = [one_over(*ws, num=n) for n, ws in xs]
    fy = [one_over(*ws, num=n) for n, ws in ys]
    left = add_fractions([add_fractions(fx), add_fractions(fy)])
    right = add_fractions(fy[::-1] + fx)
    assert sympy.simplify(frac_sympy(left) - frac_sympy(right)) == 0


def test_extract_constant_examples():
    forms = [(1, 0), (1, 1)]
    prod = MultiPoly.linear(forms[0]) * MultiPoly.linear(forms[1])
    assert extract_constant(FactoredRational.from_weights(prod * 6, forms)) == 6
    assert extract_constant(FactoredRational.from_weights(MultiPoly.zero(2), forms)) == 0


def test_extract_constant_rejects_non_constant():
    f = FactoredRational.from_weights(MultiPoly.linear((1, 0)) ** 2, [(1, 0), (0, 1)])
    with pytest.raises(NonConstantSumError, match="sum is not a constant"):
        extract_constant(f)
    # degree guard: nonzero numerator of lower degree
    g = FactoredRational.from_weights(MultiPoly.linear((1, 0)), [(1, 0), (0, 1)])
    with pytest.raises(NonConstantSumError, match="sum is not a constant"):
        extract_constant(g)


def test_evaluate_at():
    assert evaluate_at(one_over((1,)), [2]) == Fraction(1, 2)
    f = FactoredRational.from_weights(MultiPoly.linear((1, 1)), [(1, 0), (0, 1)])
    assert evaluate_at(f, [1, 1]) == 2
    with pytest.raises(ZeroDivisionError, match="<1,-1>"):
        evaluate_at(one_over((1, -1)), [3, 3])
