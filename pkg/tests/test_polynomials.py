from __future__ import annotations

from fractions import Fraction
from itertools import permutations

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from koszul_resonance.polynomials import IdealSlice, MultiPoly, determinant, parse_monomial


def x(n, i):
    return MultiPoly.variable(n, i - 1)


def test_arithmetic_and_printing():
    n = 3
    f = x(n, 1) * x(n, 2) - 2 * x(n, 3) * x(n, 3)
    assert str(f) == "x1*x2 - 2*x3^2"
    assert str(-x(n, 2)) == "-x2"
    assert str(MultiPoly(n)) == "0"
    assert (f - f).is_zero()
    assert f.degree() == 2 and f.is_homogeneous()
    assert not (f + 1).is_homogeneous()
    assert parse_monomial(3, "x2*x3^2") == x(n, 2) * x(n, 3) * x(n, 3)
    assert str(MultiPoly(n, {(1, 0, 0): Fraction(1, 2)})) == "1/2*x1"


def test_vector_round_trip():
    n = 3
    f = x(n, 1) * x(n, 2) + 3 * x(n, 3) * x(n, 3)
    assert MultiPoly.from_vector(n, 2, f.to_vector(2)) == f
    with pytest.raises(ValueError):
        (f + x(n, 1)).to_vector(2)


def test_primitive_scaling():
    n = 2
    f = MultiPoly(n, {(1, 0): Fraction(-2, 3), (0, 1): Fraction(4, 3)})
    assert str(f.primitive()) == "x1 - 2*x2"


def _sympy_det(rows, n):
    syms = sympy.symbols(f"x1:{n + 1}")
    def conv(p):
        return sum((sympy.Rational(c.numerator, c.denominator) * sympy.prod([s**k for s, k in zip(syms, e)]) for e, c in p.terms.items()), sympy.Integer(0))
    return sympy.expand(sympy.Matrix([[conv(p) for p in r] for r in rows]).det()), conv


linear = st.builds(
    lambda cs: MultiPoly(3, {tuple(int(i == j) for i in range(3)): c for j, c in enumerate(cs)}),
    st.lists(st.integers(-2, 2), min_size=3, max_size=3),
)


@given(st.integers(1, 4).flatmap(lambda k: st.lists(st.lists(linear, min_size=k, max_size=k), min_size=k, max_size=k)))
def test_determinant_matches_sympy(rows):
    expected, conv = _sympy_det(rows, 3)
    assert sympy.expand(conv(determinant(rows, 3)) - expected) == 0


def test_determinant_by_permutation_sum():
    n = 2
    rows = [[x(n, 1), x(n, 2), MultiPoly(n)], [MultiPoly(n), x(n, 1), x(n, 2)], [x(n, 2), MultiPoly(n), x(n, 1)]]
    total = MultiPoly(n)
    for perm in permutations(range(3)):
        sign = 1
        for i in range(3):
            for j in range(i + 1, 3):
                if perm[i] > perm[j]:
                    sign = -sign
        term = MultiPoly.constant(n, sign)
        for i, j in enumerate(perm):
            term = term * rows[i][j]
        total = total + term
    assert determinant(rows, n) == total


def test_ideal_slices():
    n = 2
    gen = x(n, 1) * x(n, 2)
    s3 = IdealSlice.from_generators(n, [gen], 3)
    assert str(s3) == "{x1^2*x2, x1*x2^2}"
    assert s3.issubset(IdealSlice.full(n, 3))
    assert IdealSlice.zero(n, 3).issubset(s3)
    a = IdealSlice.from_generators(n, [x(n, 1)], 2)
    b = IdealSlice.from_generators(n, [x(n, 2)], 2)
    assert a.intersect(b).same_as(IdealSlice.from_generators(n, [gen], 2))
    assert IdealSlice.from_generators(n, [gen], 2).times_linear_forms().same_as(s3)
    with pytest.raises(ValueError):
        a.intersect(s3)
