"""
Subpencil counts and Chen rank formulas
=======================================

Exact big-integer evaluation of the counting formulas.
"""

# %%
from koszul_resonance.closed_forms import (
    chen_rank_kahler_conjectural,
    chen_rank_kodaira,
    chen_rank_surface,
    grassmannian_degree_identity,
    porteous_coefficient,
    subpencil_count,
    subpencil_range,
)

for g in range(1, 8):
    counts = {a: subpencil_count(g, a) for a in subpencil_range(g)}
    ident = grassmannian_degree_identity(g)
    print(f"g={g} counts={counts} sum={ident.lhs} Catalan={ident.rhs}")

# %%
# The Porteous class at d = 3g + 1 is a multiple of theta^g, which integrates
# to g! on the Jacobian.
cls = porteous_coefficient(4, 4, 13)
print(cls, "->", cls.count, "=", subpencil_count(4, 4))

# %%
# Chen ranks: two Kodaira fibrations add up; the Kähler formula is only a
# conjectured right-hand side.
print([chen_rank_kodaira(2, 3, q) for q in range(3, 8)])
print([chen_rank_surface(2, q) + chen_rank_surface(3, q) for q in range(3, 8)])
print("conjectural RHS, h_2 = 2:", [chen_rank_kahler_conjectural({2: 2}, q) for q in range(3, 8)])
