"""Sparse polynomials over Q and sums of fractions with linear-form denominators.

Every localization sum on a describing graph has the shape
``sum_v P_v(x) / prod_i <w_{v,i}, x>``. Denominators are kept as multisets of
primitive linear forms and are never multiplied out; a common denominator is
a multiset maximum, so no multivariate gcd is ever needed.
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .lattice import Weight, as_weight, canonical_sign, content, dot, is_zero

Exponent = tuple[int, ...]


def _grlex_key(e: Exponent):
    return (sum(e), e)


class MultiPoly:
    """Sparse polynomial in ``nvars`` variables with rational coefficients."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, object] = ()):
        self.nvars = nvars
        clean: dict[Exponent, Fraction] = {}
        for e, c in dict(terms).items():
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
            c = Fraction(c)
            if c:
                clean[tuple(e)] = c
        self.terms = clean
        self._hash = None

    # constructors
    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "MultiPoly":
        return cls(nvars, {tuple(1 if j == i else 0 for j in range(nvars)): 1})

    @classmethod
    def linear(cls, weight: Sequence[int]) -> "MultiPoly":
        """The linear form ``x -> <weight, x>``."""
        k = len(weight)
        return cls(k, {tuple(1 if j == i else 0 for j in range(k)): c
                       for i, c in enumerate(weight) if c})

    # structure
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, d: int) -> bool:
        return all(sum(e) == d for e in self.terms)

    def leading(self):
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    # arithmetic
    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return MultiPoly.constant(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = Fraction(other)
            return MultiPoly(self.nvars, {e: c * v for e, v in self.terms.items()})
        other = self._coerce(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        pt = [Fraction(x) for x in point]
        for e, c in self.terms.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v *= x ** k
            total += v
        return total

    def divmod(self, divisor: "MultiPoly"):
        """Multivariate division by a single polynomial (graded-lex order).

        A single polynomial is a Groebner basis of its ideal, so the remainder
        is zero exactly when ``divisor`` divides ``self``.
        """
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        le, lc = divisor.leading()
        quotient: dict[Exponent, Fraction] = {}
        remainder: dict[Exponent, Fraction] = {}
        p = dict(self.terms)
        while p:
            e = max(p, key=_grlex_key)
            c = p[e]
            if all(a >= b for a, b in zip(e, le)):
                qe = tuple(a - b for a, b in zip(e, le))
                qc = c / lc
                quotient[qe] = quotient.get(qe, 0) + qc
                for de, dc in divisor.terms.items():
                    t = tuple(a + b for a, b in zip(qe, de))
                    v = p.get(t, 0) - qc * dc
                    if v:
                        p[t] = v
                    else:
                        p.pop(t, None)
            else:
                remainder[e] = c
                del p[e]
        return MultiPoly(self.nvars, quotient), MultiPoly(self.nvars, remainder)

    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"x{i + 1}" + (f"^{k}" if k > 1 else "")
                            for i, k in enumerate(e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


@dataclass(frozen=True, order=True)
class LinearForm:
    """A primitive linear form with positive leading entry."""

    weight: Weight

    def __post_init__(self):
        if is_zero(self.weight):
            raise ValueError("zero linear form")

    @classmethod
    def canonical(cls, w: Sequence[int]) -> tuple[int, "LinearForm"]:
        """Split ``w`` as ``scalar * form`` with ``form`` canonical."""
        w = as_weight(w)
        s = canonical_sign(w) * content(w)
        return s, cls(tuple(x // s for x in w))

    def poly(self) -> MultiPoly:
        return MultiPoly.linear(self.weight)

    def value(self, point: Sequence) -> Fraction:
        return Fraction(dot(self.weight, [Fraction(x) for x in point]))

    def __str__(self):
        return "<" + ",".join(map(str, self.weight)) + ">"


@dataclass(frozen=True)
class FactoredRational:
    """``numerator / prod(denominator)`` with the product left unexpanded."""

    numerator: MultiPoly
    denominator: tuple[LinearForm, ...]

    @classmethod
    def from_weights(cls, numerator: MultiPoly, weights: Iterable[Sequence[int]]):
        scalar = Fraction(1)
        forms = []
        for w in weights:
            s, f = LinearForm.canonical(w)
            scalar *= s
            forms.append(f)
        return cls(numerator * (1 / scalar), tuple(sorted(forms)))

    @property
    def nvars(self) -> int:
        return self.numerator.nvars

    def __str__(self):
        den = "".join(str(f) for f in self.denominator) or "1"
        return f"({self.numerator}) / {den}"


def _expand_forms(forms: Iterable[LinearForm], nvars: int) -> MultiPoly:
    out = MultiPoly.constant(nvars, 1)
    for f in forms:
        out = out * f.poly()
    return out


def add_fractions(terms: Sequence[FactoredRational]) -> FactoredRational:
    """Sum over the least common multiple of the factored denominators."""
    if not terms:
        raise ValueError("empty sum")
    nvars = terms[0].nvars
    lcm: Counter = Counter()
    counts = []
    for t in terms:
        c = Counter(t.denominator)
        counts.append(c)
        lcm |= c
    total = MultiPoly.zero(nvars)
    for t, c in zip(terms, counts):
        total = total + t.numerator * _expand_forms((lcm - c).elements(), nvars)
    return FactoredRational(total, tuple(sorted(lcm.elements())))


class NonConstantSumError(ValueError):
    pass


def extract_constant(f: FactoredRational) -> Fraction:
    """The rational ``q`` with ``numerator == q * prod(denominator)``."""
    num = f.numerator
    if num.is_zero():
        return Fraction(0)
    if not num.is_homogeneous(len(f.denominator)):
        raise NonConstantSumError(
            f"sum is not a constant: numerator degree {num.degree()} "
            f"over {len(f.denominator)} linear factors")
    for form in f.denominator:
        num, rem = num.divmod(form.poly())
        if not rem.is_zero():
            raise NonConstantSumError(f"sum is not a constant: {form} does not divide")
    if num.degree() > 0:
        raise NonConstantSumError("sum is not a constant")
    return num.terms.get((0,) * num.nvars, Fraction(0))


def evaluate_at(f: FactoredRational, point: Sequence) -> Fraction:
    den = Fraction(1)
    for form in f.denominator:
        v = form.value(point)
        if v == 0:
            raise ZeroDivisionError(f"linear form {form} vanishes at {tuple(point)}")
        den *= v
    return f.numerator.evaluate(point) / den


def poly_elementary_symmetric(forms: Sequence[Sequence[int]], i: int) -> MultiPoly:
    """The i-th elementary symmetric polynomial of the given linear forms."""
    if not forms:
        raise ValueError("need at least one form to fix the variable count")
    if not 0 <= i <= len(forms):
        raise ValueError(f"index {i} out of range 0..{len(forms)}")
    nvars = len(forms[0])
    polys = [MultiPoly.linear(w) for w in forms]
    # e_j recurrence avoids enumerating all i-subsets
    e = [MultiPoly.constant(nvars, 1)] + [MultiPoly.zero(nvars)] * i
    for p in polys:
        for j in range(i, 0, -1):
            e[j] = e[j] + e[j - 1] * p
    return e[i]

