"""Exact computation of Koszul modules W(V, K) and their resonance.

The subpackages are layered: ``exact_linalg`` (ranks, kernels, subspaces
over Q), ``multilinear`` (bases and Koszul differentials), ``koszul``
(graded pieces, annihilator, Fitting ideal), ``resonance`` (isotropy,
separability, decomposition), ``raag`` (graphs) and ``closed_forms``.
"""

from .closed_forms import (
    chen_rank_kahler_conjectural,
    chen_rank_kodaira,
    chen_rank_strongly_isotropic,
    chen_rank_surface,
    chen_rank_via_engine,
    free_koszul_dim,
    grassmannian_degree_identity,
    porteous_coefficient,
    subpencil_count,
    surface_pairspec,
)
from .errors import (
    AmbientMismatch,
    BadPrime,
    CrossCheckFailure,
    DependentVectors,
    GuardExceeded,
    NonIntegral,
    NonSeparableComponent,
    ResonanceError,
)
from .exact_linalg import Matrix, SubspaceBasis, certified_rank, intersect, kernel_basis, rank, rank_modular
from .koszul import (
    annihilator_slice,
    fitting_generators,
    hilbert_table,
    presentation_matrix,
    wq_dim_cokernel,
    wq_dim_homology,
)
from .multilinear import PairSpec, complete_perp, wedge, wedge_square_map
from .polynomials import IdealSlice, MultiPoly
from .raag import Graph, graph_to_pairspec, raag_crosscheck, resonance_components, theta_matrix
from .resonance import (
    ComponentReport,
    DecompositionReport,
    analyze_component,
    check_isotropic,
    check_separable,
    check_separable_pm,
    check_strongly_isotropic,
    h_a,
    in_resonance,
    project_component,
    reducedness_window,
    verify_decomposition,
)

__version__ = "0.1.0"
