from __future__ import annotations

import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from koszul_resonance.errors import DependentVectors
from koszul_resonance.exact_linalg import Matrix, rank, same_span
from koszul_resonance.multilinear import (
    PairSpec,
    apply,
    complete_perp,
    delta1_matrix,
    delta2_matrix,
    delta2_on,
    delta3_matrix,
    mono_rank,
    mono_unrank,
    monomials,
    pairs,
    sym_dim,
    triples,
    unit_bivector,
    wedge,
    wedge_square_map,
)

from conftest import random_independent


def test_sym_dim_and_orders():
    assert sym_dim(3, 2) == 6
    assert sym_dim(4, 0) == 1
    assert sym_dim(2, -1) == 0
    assert monomials(2, 2) == ((2, 0), (1, 1), (0, 2))
    assert pairs(3) == ((0, 1), (0, 2), (1, 2))
    assert triples(4)[0] == (0, 1, 2)
    for r in range(sym_dim(4, 3)):
        assert mono_rank(mono_unrank(4, 3, r)) == r


def test_differential_shapes():
    assert delta1_matrix(3, 0).shape == (6, 9)
    assert delta2_matrix(3, 0).shape == (9, 3)
    # Λ²V ⊗ S_1 has 3 * 3 = 9 rows, Λ³V ⊗ S_0 one column
    assert delta3_matrix(3, 1).shape == (9, 1)
    assert delta3_matrix(3, 0).shape == (3, 0)


def test_delta2_on_basis_pair():
    # δ2(v1∧v2 ⊗ 1) = v2 ⊗ x1 − v1 ⊗ x2
    m = delta2_matrix(2, 0)
    col = [m[i, 0] for i in range(m.rows)]
    # rows: v1⊗x1, v1⊗x2, v2⊗x1, v2⊗x2
    assert col == [0, -1, 1, 0]


@pytest.mark.parametrize("n", [2, 3, 4, 5])
@pytest.mark.parametrize("q", [0, 1, 2, 3])
def test_complex_squares_to_zero(n, q):
    assert (delta1_matrix(n, q) @ delta2_matrix(n, q)).is_zero()
    assert (delta2_matrix(n, q) @ delta3_matrix(n, q)).is_zero()


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("q", [0, 1, 2, 3])
def test_delta1_is_onto(n, q):
    assert rank(delta1_matrix(n, q)) == sym_dim(n, q + 2)


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("q", [0, 1, 2])
def test_koszul_exactness_at_middle(n, q):
    # the full Koszul complex is exact: im δ2 = ker δ1
    ker = n * sym_dim(n, q + 1) - sym_dim(n, q + 2)
    assert rank(delta2_matrix(n, q)) == ker


def test_delta2_on_matches_full_matrix():
    rng = random.Random(3)
    n, q = 4, 2
    vecs = random_independent(comb(n, 2), 3, rng)
    restricted = delta2_on(n, q, vecs)
    s0 = sym_dim(n, q)
    full = delta2_matrix(n, q)
    for c, v in enumerate(vecs):
        for m in range(s0):
            expected = [sum((v[p] * full[r, p * s0 + m] for p in range(len(v))), Fraction(0)) for r in range(full.rows)]
            assert [restricted[r, c * s0 + m] for r in range(full.rows)] == expected


def test_wedge_is_alternating():
    a = (1, 2, 0)
    b = (0, 1, 3)
    assert wedge(a, a) == (0, 0, 0)
    assert wedge(a, b) == tuple(-x for x in wedge(b, a))
    assert wedge((1, 0, 0), (0, 1, 0)) == unit_bivector(3, 0, 1)


@st.composite
def small_matrix(draw, m, n):
    return Matrix(m, n, [draw(st.integers(-3, 3)) for _ in range(m * n)])


@given(st.data())
def test_wedge_square_is_multiplicative(data):
    m = data.draw(st.integers(2, 4))
    n = data.draw(st.integers(2, 4))
    k = data.draw(st.integers(2, 4))
    a = data.draw(small_matrix(m, n))
    b = data.draw(small_matrix(n, k))
    assert wedge_square_map(a @ b) == wedge_square_map(a) @ wedge_square_map(b)


@given(st.data())
def test_wedge_square_on_decomposables(data):
    m = data.draw(st.integers(2, 4))
    n = data.draw(st.integers(2, 4))
    p = data.draw(small_matrix(m, n))
    u = [data.draw(st.integers(-3, 3)) for _ in range(n)]
    v = [data.draw(st.integers(-3, 3)) for _ in range(n)]
    assert apply(wedge_square_map(p), wedge(u, v)) == wedge(apply(p, u), apply(p, v))


def test_complete_perp_requires_one_side():
    with pytest.raises(ValueError):
        complete_perp(3)
    with pytest.raises(ValueError):
        complete_perp(3, k_basis=[], kperp_basis=[])
    with pytest.raises(DependentVectors):
        PairSpec.from_k(3, [(1, 0, 0), (2, 0, 0)])
    with pytest.raises(ValueError):
        PairSpec.from_k(3, [(1, 0)])


@given(st.integers(0, 2**32))
def test_complete_perp_is_an_involution(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 5)
    N = comb(n, 2)
    k = rng.randint(0, N)
    spec = PairSpec.from_k(n, random_independent(N, k, rng))
    assert spec.dim_k + spec.dim_kperp == N
    pairing = Matrix.from_rows(spec.k_basis, N) @ Matrix.from_rows(spec.kperp_basis, N).T if k and k < N else None
    if pairing is not None:
        assert pairing.is_zero()
    back = PairSpec.from_kperp(n, spec.kperp_basis)
    assert same_span(back.k_space(), spec.k_space()) if k else back.dim_k == 0
