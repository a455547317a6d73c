"""Resonance membership and properties of linear components.

A component is a subspace of V^∨ given by a basis in the e-coordinates
(``SubspaceBasis`` with ambient dimension n). Separability is decided two
ways: directly from K^⊥ (``check_separable``) and through the map p_M in an
adapted basis (``check_separable_pm``); strong isotropy through the
multiplication map μ.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .errors import NonSeparableComponent
from .exact_linalg import Matrix, SubspaceBasis, intersect, kernel_basis, rank, to_rational, vstack
from .koszul import annihilator_slice, wq_dim_homology
from .multilinear import PairSpec, apply, monomials, pairs, sym_dim, wedge, wedge_square_map
from .polynomials import IdealSlice, MultiPoly

Vector = tuple[Fraction, ...]


def as_component(n: int, vectors: Sequence[Sequence]) -> SubspaceBasis:
    comp = SubspaceBasis(n, tuple(tuple(to_rational(x) for x in v) for v in vectors))
    if comp.dim < 1:
        raise ValueError("a component needs at least one basis vector")
    return comp


def _pairing_matrix(spec: PairSpec, bivectors: Sequence[Vector]) -> Matrix:
    # rows: bivectors in Λ²V^∨; columns: K basis; entry = <bivector, k>
    N = comb(spec.n, 2)
    if not spec.k_basis:
        return Matrix.zeros(len(bivectors), 0)
    return Matrix.from_rows(bivectors, N) @ Matrix.from_rows(spec.k_basis, N).T


def h_a(spec: PairSpec, a: Sequence) -> SubspaceBasis:
    """The subspace {b ∈ V^∨ : a∧b ∈ K^⊥}."""
    n = spec.n
    a = tuple(to_rational(x) for x in a)
    if len(a) != n:
        raise ValueError(f"a must have {n} coordinates")
    if not any(a):
        raise ValueError("a must be nonzero")
    if not spec.k_basis:
        return SubspaceBasis.full(n)
    # b -> (<a∧b, k>)_k ; a∧b ∈ K^⊥ iff it pairs to zero with all of K
    units = [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    columns = [wedge(a, u) for u in units]
    m = _pairing_matrix(spec, columns).T
    return kernel_basis(m)


def in_resonance(spec: PairSpec, a: Sequence) -> bool:
    if not any(to_rational(x) for x in a):
        return True
    return h_a(spec, a).dim > 1


def _wedges(vectors: Sequence[Vector]) -> list[Vector]:
    return [wedge(vectors[i], vectors[j]) for i in range(len(vectors)) for j in range(i + 1, len(vectors))]


def _span(N: int, vectors: Sequence[Vector]) -> SubspaceBasis:
    return SubspaceBasis.from_spanning(N, vectors)


def isotropy_witness(spec: PairSpec, comp: SubspaceBasis) -> Vector | None:
    """A wedge of two basis vectors of comp lying outside K^⊥, if any."""
    kperp = spec.kperp_space()
    for w in _wedges(comp.basis):
        if not kperp.contains(w):
            return w
    return None


def check_isotropic(spec: PairSpec, comp: SubspaceBasis) -> bool:
    """Λ²(comp) ⊆ K^⊥."""
    return isotropy_witness(spec, comp) is None


def separability_witness(spec: PairSpec, comp: SubspaceBasis) -> Vector | None:
    """An element of K^⊥ ∩ (comp ∧ V^∨) outside Λ²(comp), if any."""
    n = spec.n
    N = comb(n, 2)
    units = [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    ideal_part = _span(N, [wedge(c, u) for c in comp.basis for u in units])
    meet = intersect(spec.kperp_space(), ideal_part)
    inner = _span(N, _wedges(comp.basis))
    for v in meet.basis:
        if not inner.contains(v):
            return v
    return None


def check_separable(spec: PairSpec, comp: SubspaceBasis) -> bool:
    """K^⊥ ∩ <comp>_E ⊆ Λ²(comp), with the degree-2 part of the ideal as comp ∧ V^∨."""
    return separability_witness(spec, comp) is None


def adapted_basis(comp: SubspaceBasis) -> list[Vector]:
    """Comp basis followed by standard vectors completing it to a basis of V^∨."""
    n = comp.ambient_dim
    basis = list(comp.basis)
    for j in range(n):
        if len(basis) == n:
            break
        e = tuple(Fraction(int(i == j)) for i in range(n))
        if rank(Matrix.from_rows(basis + [e], n)) == len(basis) + 1:
            basis.append(e)
    return basis


def check_separable_pm(spec: PairSpec, comp: SubspaceBasis) -> bool:
    """Surjectivity of p_M : K ∩ ker(Λ²π) -> M in adapted coordinates.

    With F the matrix whose columns are the adapted basis of V^∨, vectors of V
    change coordinates by F^T, so K is carried by Λ²(F^T). In the new basis
    comp is spanned by the first m coordinates; L, M, H are the pairs with
    both / one / no index below m.
    """
    n = spec.n
    m = comp.dim
    if m == n:
        return True
    f_cols = adapted_basis(comp)
    ft = Matrix.from_rows(f_cols, n)  # rows of F^T are the adapted covectors
    lam = wedge_square_map(ft)
    k_new = [apply(lam, k) for k in spec.k_basis]
    ps = pairs(n)
    l_idx = [p for p, (s, t) in enumerate(ps) if t < m]
    m_idx = [p for p, (s, t) in enumerate(ps) if s < m <= t]
    target = len(m_idx)
    if not k_new:
        return target == 0
    # combinations of K with vanishing L-part
    l_part = Matrix.from_rows([[k[p] for k in k_new] for p in l_idx], len(k_new)) if l_idx else None
    if l_part is None:
        combos = SubspaceBasis.full(len(k_new)).basis
    else:
        combos = kernel_basis(l_part).basis
    images = []
    for c in combos:
        images.append([sum((c[i] * k_new[i][p] for i in range(len(k_new))), Fraction(0)) for p in m_idx])
    if not images:
        return target == 0
    return rank(Matrix.from_rows(images, target)) == target


def multiplication_map(spec: PairSpec, comp: SubspaceBasis) -> Matrix:
    """μ : comp ⊗ U^∨ -> K^∨, rows indexed by (comp vector, complement vector).

    Only well defined for isotropic comp.
    """
    basis = adapted_basis(comp)
    m = comp.dim
    rows = [wedge(basis[a], basis[t]) for a in range(m) for t in range(m, len(basis))]
    return _pairing_matrix(spec, rows)


def check_strongly_isotropic(spec: PairSpec, comp: SubspaceBasis) -> bool:
    """Injectivity of μ; False for a non-isotropic comp."""
    if not check_isotropic(spec, comp):
        return False
    mu = multiplication_map(spec, comp)
    if mu.rows == 0:
        return True
    return rank(mu) == mu.rows


def project_component(spec: PairSpec, comp: SubspaceBasis) -> PairSpec:
    """(V̄, K̄) with K̄ = Λ²π(K), π : V -> V̄ dual to comp ⊆ V^∨."""
    m = comp.dim
    lam = wedge_square_map(comp.matrix())
    images = [apply(lam, k) for k in spec.k_basis]
    kbar = SubspaceBasis.from_spanning(comb(m, 2), images)
    return PairSpec.from_k(m, kbar.basis)


@dataclass(frozen=True)
class ComponentReport:
    subspace: SubspaceBasis
    isotropic: bool
    separable: bool
    separable_pm: bool
    strongly_isotropic: bool
    kbar_dim: int
    witnesses: dict = field(default_factory=dict)


def analyze_component(spec: PairSpec, comp: SubspaceBasis) -> ComponentReport:
    iso_w = isotropy_witness(spec, comp)
    sep_w = separability_witness(spec, comp)
    sep_pm = check_separable_pm(spec, comp)
    strong = check_strongly_isotropic(spec, comp)
    kbar = project_component(spec, comp).dim_k
    witnesses = {}
    if iso_w is not None:
        witnesses["isotropy"] = iso_w
    if sep_w is not None:
        witnesses["separability"] = sep_w
    return ComponentReport(comp, iso_w is None, sep_w is None, sep_pm, strong, kbar, witnesses)


@dataclass(frozen=True)
class DecompositionRow:
    q: int
    whole: int
    parts: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.parts)

    @property
    def agrees(self) -> bool:
        return self.whole == self.total


@dataclass(frozen=True)
class DecompositionReport:
    components: tuple[SubspaceBasis, ...]
    rows: tuple[DecompositionRow, ...]
    first_agreement_q: int | None


def first_agreement(rows: Sequence[DecompositionRow]) -> int | None:
    """Least tested q from which every tested row agrees."""
    start = None
    for r in rows:
        if r.agrees:
            if start is None:
                start = r.q
        else:
            start = None
    return start


def verify_decomposition(
    spec: PairSpec, components: Sequence[SubspaceBasis], q_max: int, exact: bool = False, force: bool = False
) -> DecompositionReport:
    """Compare dim W_q(V,K) with the sum over components of dim W_q(V̄_t, K̄_t)."""
    for idx, comp in enumerate(components):
        w = separability_witness(spec, comp)
        if w is not None:
            raise NonSeparableComponent(idx, w)
    projected = [project_component(spec, c) for c in components]
    rows = []
    for q in range(q_max + 1):
        whole = wq_dim_homology(spec, q, exact, force)
        parts = tuple(wq_dim_homology(p, q, exact, force) for p in projected)
        rows.append(DecompositionRow(q, whole, parts))
    return DecompositionReport(tuple(components), tuple(rows), first_agreement(rows))


def restriction_matrix(comp: SubspaceBasis, d: int) -> Matrix:
    """Matrix of f -> f restricted to comp, from S_d to degree-d polynomials on comp.

    A point of comp is sum_a y_a c_a, so x_i becomes the linear form sum_a c_a[i] y_a.
    """
    n, m = comp.ambient_dim, comp.dim
    forms = [MultiPoly(m, {tuple(int(a == b) for b in range(m)): comp.basis[a][i] for a in range(m)}) for i in range(n)]
    cols = []
    for e in monomials(n, d):
        f = MultiPoly.constant(m, 1)
        for i, k in enumerate(e):
            for _ in range(k):
                f = f * forms[i]
        cols.append(f.to_vector(d))
    return Matrix.from_rows(cols, sym_dim(m, d)).T


def vanishing_slice(n: int, components: Sequence[SubspaceBasis], d: int) -> IdealSlice:
    """Degree-d slice of the intersection of the ideals of the given subspaces.

    Over the empty family this is all of S_d.
    """
    if not components:
        return IdealSlice.full(n, d)
    stacked = vstack(*(restriction_matrix(c, d) for c in components))
    return IdealSlice.from_space(n, d, kernel_basis(stacked))


@dataclass(frozen=True)
class ReducednessRow:
    d: int
    annihilator: IdealSlice
    radical: IdealSlice
    equal: bool


def reducedness_window(
    spec: PairSpec, components: Sequence[SubspaceBasis], d_range, force: bool = False
) -> list[ReducednessRow]:
    """Per degree, compare Ann_d with the slice of the ideal of the union of components."""
    out = []
    for d in d_range:
        ann = annihilator_slice(spec, d, force)
        rad = vanishing_slice(spec.n, components, d)
        out.append(ReducednessRow(d, ann, rad, ann.same_as(rad)))
    return out


def meets_only_at_zero(comp: SubspaceBasis, other: SubspaceBasis) -> bool:
    """Projective disjointness of two linear subspaces of V^∨."""
    return intersect(comp, other).dim == 0


def invalid_basis_vectors(spec: PairSpec, comp: SubspaceBasis) -> list[int]:
    """Indices of comp basis vectors that are not resonant (a supplied component must have none)."""
    return [i for i, v in enumerate(comp.basis) if not in_resonance(spec, v)]


__all__ = [
    "ComponentReport",
    "DecompositionReport",
    "DecompositionRow",
    "ReducednessRow",
    "analyze_component",
    "as_component",
    "check_isotropic",
    "check_separable",
    "check_separable_pm",
    "check_strongly_isotropic",
    "h_a",
    "in_resonance",
    "isotropy_witness",
    "separability_witness",
    "adapted_basis",
    "restriction_matrix",
    "first_agreement",
    "invalid_basis_vectors",
    "meets_only_at_zero",
    "multiplication_map",
    "project_component",
    "reducedness_window",
    "vanishing_slice",
    "verify_decomposition",
]
