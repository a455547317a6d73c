"""Bases of Sym^q V, Λ²V, Λ³V and the Koszul differentials between them.

Orderings (all matrices in the package are written in these bases):

* degree-q monomials in ``itertools.combinations_with_replacement`` order of
  their variable indices, so x1^2, x1x2, ..., x2^2, ... (exponent vectors in
  decreasing lexicographic order);
* pairs (i, j), i < j, and triples (i, j, k), i < j < k, lexicographically;
* tensor products ``A ⊗ Sym^q V`` are ordered A-major: the index of
  ``a ⊗ m`` is ``a * sym_dim(n, q) + m``.

Indices are 0-based in code; user-facing text and files use 1-based names.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from math import comb
from typing import Sequence

from .errors import DependentVectors
from .exact_linalg import Matrix, SubspaceBasis, kernel_basis, rank, to_rational

Vector = tuple[Fraction, ...]


def sym_dim(n: int, q: int) -> int:
    if q < 0:
        return 0
    return comb(n - 1 + q, q)


@lru_cache(maxsize=None)
def monomials(n: int, q: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of the degree-q monomials in n variables, in basis order."""
    if q < 0:
        return ()
    out = []
    for idx in combinations_with_replacement(range(n), q):
        e = [0] * n
        for i in idx:
            e[i] += 1
        out.append(tuple(e))
    return tuple(out)


@lru_cache(maxsize=None)
def _mono_index(n: int, q: int) -> dict[tuple[int, ...], int]:
    return {e: i for i, e in enumerate(monomials(n, q))}


def mono_rank(exponents: Sequence[int]) -> int:
    e = tuple(exponents)
    return _mono_index(len(e), sum(e))[e]


def mono_unrank(n: int, q: int, r: int) -> tuple[int, ...]:
    return monomials(n, q)[r]


@lru_cache(maxsize=None)
def _times_var(n: int, q: int) -> tuple[tuple[int, ...], ...]:
    # table[m][i] = index in degree q+1 of x_i * (monomial m of degree q)
    up = _mono_index(n, q + 1)
    table = []
    for e in monomials(n, q):
        row = []
        for i in range(n):
            f = list(e)
            f[i] += 1
            row.append(up[tuple(f)])
        table.append(tuple(row))
    return tuple(table)


@lru_cache(maxsize=None)
def pairs(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(combinations(range(n), 2))


@lru_cache(maxsize=None)
def pair_index(n: int) -> dict[tuple[int, int], int]:
    return {p: i for i, p in enumerate(pairs(n))}


@lru_cache(maxsize=None)
def triples(n: int) -> tuple[tuple[int, int, int], ...]:
    return tuple(combinations(range(n), 3))


def wedge(a: Sequence, b: Sequence) -> Vector:
    """Coordinates of a∧b in the pair basis, for vectors a, b of length n."""
    n = len(a)
    if len(b) != n:
        raise ValueError("length mismatch")
    a = [to_rational(x) for x in a]
    b = [to_rational(x) for x in b]
    return tuple(a[i] * b[j] - a[j] * b[i] for i, j in pairs(n))


def unit_bivector(n: int, i: int, j: int) -> Vector:
    """The basis bivector with 0-based indices i < j."""
    v = [Fraction(0)] * comb(n, 2)
    v[pair_index(n)[(i, j)]] = Fraction(1)
    return tuple(v)


# -- Koszul differentials ----------------------------------------------------


def delta1_matrix(n: int, q: int) -> Matrix:
    """Multiplication V ⊗ Sym^{q+1} V -> Sym^{q+2} V."""
    s1 = sym_dim(n, q + 1)
    up = _times_var(n, q + 1)
    items = {}
    for i in range(n):
        for m in range(s1):
            items[(up[m][i], i * s1 + m)] = 1
    return Matrix.from_sparse(sym_dim(n, q + 2), n * s1, items)


def _delta2_column(n: int, q: int, i: int, j: int, m: int) -> dict[int, int]:
    # δ2(v_i∧v_j ⊗ f) = v_j ⊗ x_i f − v_i ⊗ x_j f
    s1 = sym_dim(n, q + 1)
    up = _times_var(n, q)[m]
    return {j * s1 + up[i]: 1, i * s1 + up[j]: -1}


def delta2_matrix(n: int, q: int) -> Matrix:
    """Koszul differential Λ²V ⊗ Sym^q V -> V ⊗ Sym^{q+1} V."""
    s0 = sym_dim(n, q)
    items = {}
    for p, (i, j) in enumerate(pairs(n)):
        for m in range(s0):
            for row, v in _delta2_column(n, q, i, j, m).items():
                items[(row, p * s0 + m)] = v
    return Matrix.from_sparse(n * sym_dim(n, q + 1), comb(n, 2) * s0, items)


def delta2_on(n: int, q: int, vectors: Sequence[Sequence]) -> Matrix:
    """δ2 restricted to span(vectors) ⊗ Sym^q V, one column per (vector, monomial)."""
    s0 = sym_dim(n, q)
    s1 = sym_dim(n, q + 1)
    ps = pairs(n)
    up = _times_var(n, q)
    data = [dict() for _ in range(n * s1)]
    for c, vec in enumerate(vectors):
        support = [(ps[p], to_rational(x)) for p, x in enumerate(vec) if x]
        for m in range(s0):
            col = c * s0 + m
            row_up = up[m]
            for (i, j), x in support:
                for row, sign in ((j * s1 + row_up[i], x), (i * s1 + row_up[j], -x)):
                    v = data[row].get(col, 0) + sign
                    if v:
                        data[row][col] = v
                    else:
                        data[row].pop(col, None)
    return Matrix._trusted(n * s1, len(vectors) * s0, data)


def delta3_matrix(n: int, q: int) -> Matrix:
    """Koszul differential Λ³V ⊗ Sym^{q-1} V -> Λ²V ⊗ Sym^q V.

    δ3(v_i∧v_j∧v_k ⊗ f) = v_j∧v_k ⊗ x_i f − v_i∧v_k ⊗ x_j f + v_i∧v_j ⊗ x_k f.
    For q = 0 the source is zero and the matrix has no columns.
    """
    rows = comb(n, 2) * sym_dim(n, q)
    if q < 1:
        return Matrix.zeros(rows, 0)
    sm = sym_dim(n, q - 1)
    sq = sym_dim(n, q)
    pidx = pair_index(n)
    up = _times_var(n, q - 1)
    items = {}
    for t, (i, j, k) in enumerate(triples(n)):
        for m in range(sm):
            col = t * sm + m
            items[(pidx[(j, k)] * sq + up[m][i], col)] = 1
            items[(pidx[(i, k)] * sq + up[m][j], col)] = -1
            items[(pidx[(i, j)] * sq + up[m][k], col)] = 1
    return Matrix.from_sparse(rows, comb(n, 3) * sm, items)


# -- K and its orthogonal ------------------------------------------------------


@dataclass(frozen=True)
class PairSpec:
    """An instance (V, K): n = dim V with bases of K ⊆ Λ²V and K^⊥ ⊆ Λ²V^∨.

    Both bases are coordinate vectors in the pair basis; the pairing between
    v_i∧v_j and e_k∧e_l is the Kronecker delta.
    """

    n: int
    k_basis: tuple[Vector, ...]
    kperp_basis: tuple[Vector, ...]

    @classmethod
    def from_k(cls, n: int, k_vectors: Sequence[Sequence]) -> PairSpec:
        return complete_perp(n, k_basis=k_vectors)

    @classmethod
    def from_kperp(cls, n: int, kperp_vectors: Sequence[Sequence]) -> PairSpec:
        return complete_perp(n, kperp_basis=kperp_vectors)

    @property
    def dim_k(self) -> int:
        return len(self.k_basis)

    @property
    def dim_kperp(self) -> int:
        return len(self.kperp_basis)

    def k_space(self) -> SubspaceBasis:
        return SubspaceBasis._trusted(comb(self.n, 2), self.k_basis)

    def kperp_space(self) -> SubspaceBasis:
        return SubspaceBasis._trusted(comb(self.n, 2), self.kperp_basis)


def _orthogonal(n: int, vectors: Sequence[Vector]) -> tuple[Vector, ...]:
    N = comb(n, 2)
    if not vectors:
        return SubspaceBasis.full(N).basis
    return kernel_basis(Matrix.from_rows(vectors, N)).basis


def complete_perp(n: int, k_basis=None, kperp_basis=None) -> PairSpec:
    """Fill in whichever of K, K^⊥ is missing as the null space of the pairing."""
    if (k_basis is None) == (kperp_basis is None):
        raise ValueError("supply exactly one of k_basis / kperp_basis")
    N = comb(n, 2)
    given = [tuple(to_rational(x) for x in v) for v in (k_basis if k_basis is not None else kperp_basis)]
    if any(len(v) != N for v in given):
        raise ValueError(f"bivectors must have C({n},2) = {N} coordinates")
    if given and rank(Matrix.from_rows(given, N)) != len(given):
        raise DependentVectors("supplied bivectors are linearly dependent")
    other = _orthogonal(n, given)
    if k_basis is not None:
        return PairSpec(n, tuple(given), other)
    return PairSpec(n, other, tuple(given))


def wedge_square_map(p: Matrix) -> Matrix:
    """Λ²p for an m x n matrix p, as a C(m,2) x C(n,2) matrix."""
    m, n = p.shape
    rows = p.to_rows()
    items = {}
    for r, (s, t) in enumerate(pairs(m)):
        ps, pt = rows[s], rows[t]
        for c, (i, j) in enumerate(pairs(n)):
            v = ps[i] * pt[j] - ps[j] * pt[i]
            if v:
                items[(r, c)] = v
    return Matrix.from_sparse(comb(m, 2), comb(n, 2), items)


def apply(m: Matrix, v: Sequence) -> Vector:
    """Matrix-vector product for a coordinate vector."""
    v = [to_rational(x) for x in v]
    out = []
    for i in range(m.rows):
        out.append(sum((x * v[j] for j, x in m.row_dict(i).items()), Fraction(0)))
    return tuple(out)
