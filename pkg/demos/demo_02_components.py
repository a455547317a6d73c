"""
Isotropic and separable components
==================================

Pointwise resonance through H_a, then the component checks on four small
instances in dimension 4 and one in dimension 6.
"""

# %%
from koszul_resonance.instances import (
    ccml,
    ccml_component,
    isotropic_res0,
    non_separable_res,
    separable_res,
    span,
)
from koszul_resonance.io import bivector_str
from koszul_resonance.resonance import analyze_component, h_a, in_resonance

e1 = (1, 0, 0, 0)
for name, spec in [("<e1^e2>", isotropic_res0()), ("<e1^e2 + e3^e4>", separable_res())]:
    print(name, "H_a dim", h_a(spec, e1).dim, "resonant:", in_resonance(spec, e1))

# %%
# The plane <e1, e2> against three choices of K^perp.
plane = span(4, [1, 2])
for name, spec in [
    ("K^perp = <e1^e2>", isotropic_res0()),
    ("K^perp = <e1^e2, e1^e3 + e2^e4>", non_separable_res()),
    ("K^perp = <e1^e2 + e3^e4>", separable_res()),
]:
    rep = analyze_component(spec, plane)
    print(f"{name}: isotropic={rep.isotropic} separable={rep.separable} strong={rep.strongly_isotropic}")
    for kind, w in rep.witnesses.items():
        print(f"    {kind} witness: {bivector_str(4, w)}")

# %%
# A separable but non-isotropic component: the projection K̄ is a line.
rep = analyze_component(ccml(), ccml_component())
print("isotropic", rep.isotropic, "separable", rep.separable, "dim Kbar", rep.kbar_dim)

# %%
# Separable components split the Hilbert function in large degree.
from koszul_resonance.resonance import verify_decomposition

dec = verify_decomposition(ccml(), [ccml_component()], 4)
for row in dec.rows:
    print(row.q, row.whole, row.parts)
print("first agreement from q =", dec.first_agreement_q)
