"""Named instances used by the tests, demos and acceptance suite."""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable

from .closed_forms import surface_pairspec
from .exact_linalg import SubspaceBasis
from .multilinear import PairSpec, pair_index
from .raag import complete_graph, cycle_graph, discrete_graph, graph_to_pairspec, join, path_graph


def bivector(n: int, terms: Iterable[tuple]) -> tuple[Fraction, ...]:
    """Build a bivector from 1-based terms (coeff, i, j); i > j flips the sign."""
    pidx = pair_index(n)
    v = [Fraction(0)] * comb(n, 2)
    for c, i, j in terms:
        i, j = i - 1, j - 1
        sign = 1 if i < j else -1
        v[pidx[(min(i, j), max(i, j))]] += sign * Fraction(c)
    return tuple(v)


def span(n: int, *index_sets: Iterable[int]) -> SubspaceBasis:
    """Coordinate subspace of V^∨ spanned by e_i for 1-based i."""
    basis = [tuple(Fraction(int(k == i - 1)) for k in range(n)) for i in sorted(set().union(*map(set, index_sets)))]
    return SubspaceBasis(n, tuple(basis))


def isotropic_res0() -> PairSpec:
    """n = 4, K^⊥ = <e1∧e2>: resonance is the isotropic plane <e1, e2>."""
    return PairSpec.from_kperp(4, [bivector(4, [(1, 1, 2)])])


def separable_res() -> PairSpec:
    """n = 4, K^⊥ = <e1∧e2 + e3∧e4>: resonance is {0}."""
    return PairSpec.from_kperp(4, [bivector(4, [(1, 1, 2), (1, 3, 4)])])


def non_separable_res() -> PairSpec:
    """n = 4, K^⊥ = <e1∧e2, e1∧e3 + e2∧e4>; the plane <e1, e2> is not separable."""
    return PairSpec.from_kperp(4, [bivector(4, [(1, 1, 2)]), bivector(4, [(1, 1, 3), (1, 2, 4)])])


def ccml() -> PairSpec:
    """Six-dimensional example with coordinates e1, ē1, e2, ē2, e3, ē3 (indices 1..6)."""
    return PairSpec.from_kperp(
        6,
        [
            bivector(6, [(1, 1, 3)]),
            bivector(6, [(1, 2, 4)]),
            bivector(6, [(1, 1, 4)]),
            bivector(6, [(1, 3, 2)]),
            bivector(6, [(1, 1, 2), (-1, 3, 4)]),
        ],
    )


def ccml_component() -> SubspaceBasis:
    return span(6, [1, 2, 3, 4])


def p4() -> PairSpec:
    return graph_to_pairspec(path_graph(4))


def c4() -> PairSpec:
    return graph_to_pairspec(cycle_graph(4))


def k32():
    """The complete bipartite graph K̄3 ∗ K̄2."""
    return join(discrete_graph(3), discrete_graph(2))


__all__ = [
    "bivector",
    "c4",
    "ccml",
    "ccml_component",
    "complete_graph",
    "isotropic_res0",
    "k32",
    "non_separable_res",
    "p4",
    "separable_res",
    "span",
    "surface_pairspec",
]
