"""
Right-angled Artin groups
=========================

For a graph, K is spanned by the edges. Resonance components come from
maximal vertex subsets inducing a disconnected subgraph.
"""

# %%
from koszul_resonance.io import subset_str
from koszul_resonance.raag import (
    analyze_graph,
    cycle_graph,
    path_graph,
    raag_crosscheck,
    resonance_components,
    theta_matrix,
)

p4 = path_graph(4)
print(theta_matrix(p4))
print("components:", [subset_str(s) for s in resonance_components(p4)])
for r in analyze_graph(p4):
    print(subset_str(r.subset), "isotropic", r.isotropic, "separable", r.separable)

# %%
# The annihilator of the path on four vertices is (x2) ∩ (x3), a reduced ideal,
# although neither component is separable.
from koszul_resonance.instances import p4 as p4_spec, span
from koszul_resonance.resonance import reducedness_window

for row in reducedness_window(p4_spec(), [span(4, [1, 3, 4]), span(4, [1, 2, 4])], range(1, 4)):
    print(row.d, row.annihilator, row.equal)

# %%
# The square is a join of two discrete graphs: two strongly isotropic lines,
# so dim W_q = 2 (q + 1).
c4 = cycle_graph(4)
for row in raag_crosscheck(c4, 5):
    print(row.q, row.theta, row.engine)
