"""Closed formulas: free Koszul modules, Chen ranks and subpencil counts.

Every division that must be exact is checked and raises ``NonIntegral`` if it
is not, since a remainder can only come from a mistyped formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

from .errors import NonIntegral
from .koszul import wq_dim_homology
from .multilinear import PairSpec


def _exact_div(num: int, den: int, what: str) -> int:
    q, r = divmod(num, den)
    if r:
        raise NonIntegral(f"{what}: {num}/{den} is not an integer")
    return q


def multinomial(total: int, parts: Sequence[int]) -> int:
    if any(p < 0 for p in parts) or sum(parts) != total:
        raise ValueError(f"bad multinomial {total}; {tuple(parts)}")
    out = factorial(total)
    for p in parts:
        out //= factorial(p)
    return out


def free_koszul_dim(n: int, q: int) -> int:
    """dim W_q(V, 0) = (q+1) C(q+n, q+2) for dim V = n."""
    if n < 1 or q < 0:
        raise ValueError("need n >= 1 and q >= 0")
    return (q + 1) * comb(q + n, q + 2)


def chen_rank_strongly_isotropic(component_dims: Sequence[int], q: int) -> int:
    """Σ_t (q-1) C(q + d_t - 2, q) over the dimensions d_t of the components."""
    if q < 2:
        raise ValueError("q must be at least 2")
    if any(d < 1 for d in component_dims):
        raise ValueError("component dimensions must be positive")
    return sum((q - 1) * comb(q + d - 2, q) for d in component_dims)


def chen_rank_surface(g: int, q: int) -> int:
    """Chen ranks of the fundamental group of a closed genus-g surface."""
    if g < 2 or q < 1:
        raise ValueError("need g >= 2 and q >= 1")
    if q == 1:
        return 2 * g
    if q == 2:
        return 2 * g * g - g - 1
    return (q - 1) * comb(2 * g + q - 2, q) - comb(2 * g + q - 3, q - 2)


def chen_rank_kodaira(b1: int, b2: int, q: int) -> int:
    """Chen ranks (large q) of a surface with two independent Kodaira fibrations."""
    if b1 < 2 or b2 < 2 or q < 3:
        raise ValueError("need b1, b2 >= 2 and q >= 3")
    return (q - 1) * (comb(2 * b1 + q - 2, q) + comb(2 * b2 + q - 2, q)) - comb(2 * b1 + q - 3, q - 2) - comb(
        2 * b2 + q - 3, q - 2
    )


def chen_rank_kahler_conjectural(h: dict[int, int], q: int) -> int:
    """Right side of the conjectured Chen rank formula for Kähler groups.

    ``h`` maps a genus g >= 2 to the number of pencils onto curves of that genus.
    The value is what the conjecture predicts, not a proven rank.
    """
    if q < 1:
        raise ValueError("q must be positive")
    return sum(count * chen_rank_surface(g, q) for g, count in h.items())


def subpencil_range(g: int) -> range:
    """a from ceil((g+2)/2) to g+1."""
    return range((g + 3) // 2, g + 2)


def subpencil_count(g: int, a: int) -> int:
    """2^{2a-g-2}/(g+1) times the multinomial (g+1; g-a+1, g-a+2, 2a-g-2)."""
    if g < 1:
        raise ValueError("g must be positive")
    if a not in subpencil_range(g):
        raise ValueError(f"a={a} outside {subpencil_range(g).start}..{g + 1}")
    m = multinomial(g + 1, (g - a + 1, g - a + 2, 2 * a - g - 2))
    return _exact_div(2 ** (2 * a - g - 2) * m, g + 1, f"subpencil count g={g}, a={a}")


@dataclass(frozen=True)
class Identity:
    lhs: int
    rhs: int

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


def grassmannian_degree(g: int) -> int:
    """Degree of the Grassmannian of lines in P^{g+2}: the Catalan number C_{g+1}."""
    return _exact_div(factorial(2 * g + 2), factorial(g + 1) * factorial(g + 2), f"Grassmannian degree g={g}")


def grassmannian_degree_identity(g: int) -> Identity:
    """Sum of subpencil counts over a against the Grassmannian degree."""
    if g < 1:
        raise ValueError("g must be positive")
    return Identity(sum(subpencil_count(g, a) for a in subpencil_range(g)), grassmannian_degree(g))


@dataclass(frozen=True)
class PorteousClass:
    """coefficient * θ^power in the cohomology of Pic^a of a genus-g curve."""

    g: int
    coefficient: Fraction
    power: int

    @property
    def count(self) -> int | None:
        """Integer degree when the class is zero-dimensional (θ^g integrates to g!)."""
        if self.power != self.g:
            return None
        value = self.coefficient * factorial(self.g)
        if value.denominator != 1:
            raise NonIntegral(f"Porteous count {value} is not an integer")
        return value.numerator

    def __str__(self) -> str:
        return f"{self.coefficient} * theta^{self.power}"


def porteous_coefficient(g: int, a: int, d: int) -> PorteousClass:
    """2^{2g+2a-d-1} θ^{4g-d+1} / ((2g+2a-d-1)! (g-a+1)! (g-a+2)!).

    Accepted whenever every factorial argument and the θ power are non-negative.
    """
    e = 2 * g + 2 * a - d - 1
    power = 4 * g - d + 1
    if g < 1 or e < 0 or a > g + 1 or power < 0:
        raise ValueError(f"parameters g={g}, a={a}, d={d} outside the valid range")
    coeff = Fraction(2**e, factorial(e) * factorial(g - a + 1) * factorial(g - a + 2))
    return PorteousClass(g, coeff, power)


def chen_rank_via_engine(spec: PairSpec, q: int, exact: bool = False, force: bool = False) -> int:
    """θ_q = dim W_{q-2}; a Chen rank only for 1-formal groups."""
    if q < 2:
        raise ValueError("q must be at least 2")
    return wq_dim_homology(spec, q - 2, exact, force)


def surface_pairspec(g: int) -> PairSpec:
    """V of dimension 2g with K spanned by the dual of the symplectic form.

    Coordinates are ordered a_1, b_1, ..., a_g, b_g.
    """
    from .multilinear import pair_index

    n = 2 * g
    pidx = pair_index(n)
    vec = [Fraction(0)] * len(pidx)
    for i in range(g):
        vec[pidx[(2 * i, 2 * i + 1)]] = Fraction(1)
    return PairSpec.from_k(n, [vec])


__all__ = [
    "Identity",
    "PorteousClass",
    "chen_rank_kahler_conjectural",
    "chen_rank_kodaira",
    "chen_rank_strongly_isotropic",
    "chen_rank_surface",
    "chen_rank_via_engine",
    "free_koszul_dim",
    "grassmannian_degree",
    "grassmannian_degree_identity",
    "multinomial",
    "porteous_coefficient",
    "subpencil_count",
    "subpencil_range",
    "surface_pairspec",
]
