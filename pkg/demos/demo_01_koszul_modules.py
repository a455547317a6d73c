"""
Graded pieces of a Koszul module
================================

Build an instance (V, K), compute dim W_q by the homology route and the
cokernel route, and compare with closed formulas.
"""

# %%
# The free case K = 0 has dim W_q = (q+1) C(q+n, q+2).
from koszul_resonance import hilbert_table, free_koszul_dim
from koszul_resonance.multilinear import PairSpec

free = PairSpec.from_k(3, [])
table = hilbert_table(free, 4)
for row in table.rows:
    print(row.q, row.dim_homology, row.dim_cokernel, free_koszul_dim(3, row.q))

# %%
# Surface groups: V of dimension 2g, K spanned by one symplectic bivector.
# The graded dimensions are the Chen ranks theta_{q+2}.
from koszul_resonance.closed_forms import chen_rank_surface, surface_pairspec

for g in (2, 3):
    spec = surface_pairspec(g)
    dims = hilbert_table(spec, 5).dims()
    print(f"g={g}", dims, [chen_rank_surface(g, q + 2) for q in range(6)])

# %%
# Exact and modular rank modes give the same table; the modular mode uses two
# random 62-bit primes and falls back to exact elimination if they disagree.
spec = surface_pairspec(3)
assert hilbert_table(spec, 4, exact=True) == hilbert_table(spec, 4)
print("exact and modular tables agree")
