"""Graded pieces of the Koszul module W(V, K) and its annihilator.

W_q(V, K) is the middle homology of

    K ⊗ Sym^q V  -->  V ⊗ Sym^{q+1} V  -->  Sym^{q+2} V

and, equivalently, the cokernel of Λ³V ⊗ Sym^{q-1} V --> (Λ²V / K) ⊗ Sym^q V.
Both routes are computed independently and compared by ``hilbert_table``.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from math import comb

from .errors import CrossCheckFailure, GuardExceeded
from .exact_linalg import Matrix, certified_rank, kernel_basis
from .multilinear import (
    PairSpec,
    _times_var,
    delta2_matrix,
    delta2_on,
    pair_index,
    sym_dim,
    triples,
)
from .polynomials import IdealSlice, MultiPoly, determinant

MAX_DIMENSION = 50_000
MAX_FITTING = 12


def check_guard(n: int, q: int, force: bool = False) -> None:
    """Refuse degrees where V ⊗ Sym^{q+1} V exceeds the tractable size."""
    size = n * sym_dim(n, q + 1)
    if size > MAX_DIMENSION and not force:
        raise GuardExceeded(f"n={n}, q={q}: dimension {size} exceeds {MAX_DIMENSION}")


def wq_dim_homology(spec: PairSpec, q: int, exact: bool = False, force: bool = False) -> int:
    """dim W_q as dim ker(δ1) − rank(δ2 restricted to K ⊗ Sym^q V).

    δ1 is onto Sym^{q+2} V, so its kernel has dimension n·dim S_{q+1} − dim S_{q+2}.
    """
    if q < 0:
        raise ValueError("q must be non-negative")
    n = spec.n
    check_guard(n, q, force)
    ker_delta1 = n * sym_dim(n, q + 1) - sym_dim(n, q + 2)
    if not spec.k_basis:
        return ker_delta1
    return ker_delta1 - certified_rank(delta2_on(n, q, spec.k_basis), exact)


def cokernel_relations(spec: PairSpec, q: int) -> Matrix:
    """Image of δ3 in (Λ²V/K) ⊗ Sym^q V.

    Λ²V/K is coordinatized by pairing with the K^⊥ basis; rows are
    (generator, monomial of degree q), columns (triple, monomial of degree q-1).
    """
    n = spec.n
    gens = spec.dim_kperp
    sq = sym_dim(n, q)
    if q < 1:
        return Matrix.zeros(gens * sq, 0)
    sm = sym_dim(n, q - 1)
    pidx = pair_index(n)
    up = _times_var(n, q - 1)
    data = [dict() for _ in range(gens * sq)]
    for t, (i, j, k) in enumerate(triples(n)):
        terms = ((pidx[(j, k)], i, 1), (pidx[(i, k)], j, -1), (pidx[(i, j)], k, 1))
        for r, w in enumerate(spec.kperp_basis):
            for p, var, sign in terms:
                coeff = w[p]
                if not coeff:
                    continue
                for m in range(sm):
                    row = data[r * sq + up[m][var]]
                    col = t * sm + m
                    v = row.get(col, 0) + sign * coeff
                    if v:
                        row[col] = v
                    else:
                        row.pop(col, None)
    return Matrix._trusted(gens * sq, comb(n, 3) * sm, data)


def wq_dim_cokernel(spec: PairSpec, q: int, exact: bool = False, force: bool = False) -> int:
    """dim W_q from the presentation by Λ³V ⊗ S(−1) --> (Λ²V/K) ⊗ S."""
    if q < 0:
        raise ValueError("q must be non-negative")
    check_guard(spec.n, q, force)
    gens = spec.dim_kperp * sym_dim(spec.n, q)
    if gens == 0 or q == 0:
        return gens
    return gens - certified_rank(cokernel_relations(spec, q), exact)


@dataclass(frozen=True)
class HilbertRow:
    q: int
    dim_homology: int
    dim_cokernel: int


@dataclass(frozen=True)
class HilbertTable:
    spec: PairSpec
    rows: tuple[HilbertRow, ...]

    def dims(self) -> list[int]:
        return [r.dim_homology for r in self.rows]

    @property
    def consistent(self) -> bool:
        return all(r.dim_homology == r.dim_cokernel for r in self.rows)


def hilbert_table(
    spec: PairSpec,
    q_max: int,
    exact: bool = False,
    force: bool = False,
    workers: int | None = None,
    check: bool = True,
) -> HilbertTable:
    """Rows q = 0..q_max by both routes; with ``check`` a disagreement raises CrossCheckFailure."""
    if q_max < 0:
        raise ValueError("q_max must be non-negative")
    for q in range(q_max + 1):
        check_guard(spec.n, q, force)

    def row(q: int) -> HilbertRow:
        return HilbertRow(q, wq_dim_homology(spec, q, exact, force), wq_dim_cokernel(spec, q, exact, force))

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(row, range(q_max + 1)))
    else:
        rows = [row(q) for q in range(q_max + 1)]
    for r in rows:
        if check and r.dim_homology != r.dim_cokernel:
            raise CrossCheckFailure(
                f"q={r.q}: homology route gives {r.dim_homology}, cokernel route gives {r.dim_cokernel}"
            )
    return HilbertTable(spec, tuple(rows))


def annihilator_slice(spec: PairSpec, d: int, force: bool = False) -> IdealSlice:
    """Degree-d piece of Ann W(V, K).

    W is generated in degree 0 by the classes of δ2(w), w ∈ Λ²V, so f lies in
    the annihilator iff δ2(w ⊗ f) ∈ δ2(K ⊗ Sym^d V) for every basis pair w.
    Membership is tested with the left null space Q of δ2|K: all conditions
    Q·δ2(w ⊗ f) = 0 are stacked into one system in the coefficients of f.
    """
    if d < 0:
        raise ValueError("d must be non-negative")
    n = spec.n
    check_guard(n, d, force)
    s0 = sym_dim(n, d)
    full = delta2_matrix(n, d)
    if spec.k_basis:
        left = kernel_basis(delta2_on(n, d, spec.k_basis).T)
        if not left.basis:
            return IdealSlice.full(n, d)
        q_mat = Matrix.from_rows(left.basis, full.rows)
    else:
        q_mat = Matrix.identity(full.rows)
    reduced = q_mat @ full
    data = []
    for i in range(reduced.rows):
        row = reduced.row_dict(i)
        blocks: dict[int, dict] = {}
        for col, v in row.items():
            p, f = divmod(col, s0)
            blocks.setdefault(p, {})[f] = v
        data.extend(blocks.values())
    system = Matrix._trusted(len(data), s0, data)
    return IdealSlice.from_space(n, d, kernel_basis(system))


def presentation_matrix(spec: PairSpec) -> list[list[MultiPoly]]:
    """Linear-form matrix of Λ³V ⊗ S(−1) --> (Λ²V/K) ⊗ S.

    One row per triple (i, j, k), one column per K^⊥ basis vector w:
    w(j,k)·x_i − w(i,k)·x_j + w(i,j)·x_k.
    """
    n = spec.n
    pidx = pair_index(n)
    xs = [MultiPoly.variable(n, i) for i in range(n)]
    out = []
    for i, j, k in triples(n):
        row = []
        for w in spec.kperp_basis:
            row.append(xs[i] * w[pidx[(j, k)]] - xs[j] * w[pidx[(i, k)]] + xs[k] * w[pidx[(i, j)]])
        out.append(row)
    return out


def fitting_generators(spec: PairSpec, force: bool = False) -> list[MultiPoly]:
    """Nonzero maximal minors of the presentation matrix (generators of Fitt_0).

    The zero module (K = Λ²V) has Fitt_0 = (1), reported as [1].
    """
    n = spec.n
    gens = spec.dim_kperp
    if gens == 0:
        return [MultiPoly.constant(n, 1)]
    rows = [r for r in presentation_matrix(spec) if any(not p.is_zero() for p in r)]
    if (len(rows) > MAX_FITTING or gens > MAX_FITTING) and not force:
        raise GuardExceeded(f"presentation {len(rows)}x{gens} exceeds {MAX_FITTING}x{MAX_FITTING}")
    out = []
    for chosen in combinations(range(len(rows)), gens):
        m = determinant([rows[r] for r in chosen], n)
        if not m.is_zero():
            out.append(m)
    return out


def fitting_slice(spec: PairSpec, d: int, force: bool = False) -> IdealSlice:
    return IdealSlice.from_generators(spec.n, fitting_generators(spec, force), d)


__all__ = [
    "HilbertRow",
    "HilbertTable",
    "annihilator_slice",
    "check_guard",
    "cokernel_relations",
    "fitting_generators",
    "fitting_slice",
    "hilbert_table",
    "presentation_matrix",
    "wq_dim_cokernel",
    "wq_dim_homology",
]

