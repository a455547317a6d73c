from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from koszul_resonance.errors import AmbientMismatch, BadPrime, DependentVectors
from koszul_resonance.exact_linalg import (
    Matrix,
    SubspaceBasis,
    certified_rank,
    format_rational,
    hstack,
    intersect,
    is_contained,
    kernel_basis,
    rank,
    rank_modular,
    random_prime,
    same_span,
    span_sum,
    to_rational,
    vstack,
)

from conftest import matrices


def sympy_rank(m: Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return sympy.Matrix(m.to_rows()).rank()


def test_to_rational_parses_strings_exactly():
    assert to_rational("3/6") == Fraction(1, 2)
    assert to_rational("-7") == Fraction(-7)
    assert to_rational(4) == Fraction(4)
    with pytest.raises(TypeError):
        to_rational(0.5)
    with pytest.raises(TypeError):
        to_rational(True)


def test_format_rational():
    assert format_rational(Fraction(6, 4)) == "3/2"
    assert format_rational(Fraction(-5)) == "-5"
    assert format_rational(Fraction(0)) == "0"


def test_rank_small_cases():
    assert rank(Matrix.identity(3)) == 3
    assert rank(Matrix.zeros(4, 5)) == 0
    assert rank(Matrix.from_rows([[1, 2], [2, 4]])) == 1
    assert rank(Matrix.zeros(0, 3)) == 0


def test_kernel_examples():
    assert kernel_basis(Matrix.identity(3)).dim == 0
    assert kernel_basis(Matrix.zeros(2, 3)).dim == 3
    ker = kernel_basis(Matrix.from_rows([[1, 2], [2, 4]]))
    assert ker.dim == 1
    (v,) = ker.basis
    assert v[0] == -2 * v[1] or v[0] == 2 * -v[1]
    assert 1 * v[0] + 2 * v[1] == 0


def test_matrix_shape_checks():
    with pytest.raises(ValueError):
        Matrix(2, 2, [1, 2, 3])
    with pytest.raises(ValueError):
        Matrix.from_rows([[1, 2], [3]])


def test_stacking():
    a = Matrix.from_rows([[1, 0]])
    b = Matrix.from_rows([[0, 1]])
    assert vstack(a, b) == Matrix.identity(2)
    assert hstack(a, b).shape == (1, 4)


@given(matrices())
def test_rank_matches_sympy(m):
    assert rank(m) == sympy_rank(m)


@given(matrices())
def test_rank_of_transpose(m):
    assert rank(m) == rank(m.T)


@given(matrices())
def test_rank_nullity(m):
    ker = kernel_basis(m)
    assert ker.dim + rank(m) == m.cols
    for v in ker.basis:
        col = Matrix.from_rows([[x] for x in v], 1) if v else None
        if col is not None:
            assert (m @ col).is_zero()


@given(matrices(), st.integers(0, 2**20))
def test_modular_rank_is_lower_bound(m, seed):
    p = random_prime(62, random.Random(seed))
    try:
        r = rank_modular(m, p)
    except BadPrime:
        return
    assert r <= rank(m)


@given(matrices(entries=st.integers(-2, 2)))
def test_modular_rank_can_drop_at_small_primes(m):
    # a prime dividing no minor gives the true rank; 2 and 3 may lose rank
    for p in (2, 3):
        assert rank_modular(m, p) <= rank(m)


def test_modular_rank_loses_rank_when_prime_divides_det():
    m = Matrix.from_rows([[1, 1], [1, 6]])  # det 5
    assert rank(m) == 2
    assert rank_modular(m, 5) == 1
    assert rank_modular(m, 7) == 2


def test_bad_prime():
    with pytest.raises(BadPrime):
        rank_modular(Matrix.identity(2), 4)
    with pytest.raises(BadPrime):
        rank_modular(Matrix.from_rows([[Fraction(1, 3)]]), 3)


@given(matrices())
def test_certified_rank_modes_agree(m):
    assert certified_rank(m) == certified_rank(m, exact=True) == rank(m)


def test_subspace_rejects_dependent():
    with pytest.raises(DependentVectors):
        SubspaceBasis(2, ((1, 2), (2, 4)))
    with pytest.raises(ValueError):
        SubspaceBasis(3, ((1, 2),))


def test_intersect_examples():
    e1 = SubspaceBasis(2, ((1, 0),))
    e2 = SubspaceBasis(2, ((0, 1),))
    assert intersect(e1, e2).dim == 0
    plane_a = SubspaceBasis(3, ((1, 0, 0), (0, 1, 0)))
    plane_b = SubspaceBasis(3, ((0, 1, 0), (0, 0, 1)))
    meet = intersect(plane_a, plane_b)
    assert same_span(meet, SubspaceBasis(3, ((0, 1, 0),)))
    with pytest.raises(AmbientMismatch):
        intersect(e1, plane_a)


@st.composite
def subspace_pairs(draw):
    n = draw(st.integers(1, 5))
    def sub():
        k = draw(st.integers(0, n))
        vecs = [[draw(st.integers(-2, 2)) for _ in range(n)] for _ in range(k)]
        return SubspaceBasis.from_spanning(n, vecs)
    return sub(), sub()


@given(subspace_pairs())
def test_grassmann_dimension_formula(pair):
    a, b = pair
    assert a.dim + b.dim == intersect(a, b).dim + span_sum(a, b).dim
    meet = intersect(a, b)
    assert is_contained(meet, a) and is_contained(meet, b)


@given(subspace_pairs())
def test_canonical_basis_is_span_invariant(pair):
    a, _ = pair
    shuffled = SubspaceBasis.from_spanning(a.ambient_dim, list(reversed(a.basis)) + list(a.basis))
    assert shuffled.basis == a.canonical().basis
