from __future__ import annotations

import random
from fractions import Fraction
from math import comb

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from koszul_resonance.exact_linalg import Matrix, SubspaceBasis, rank
from koszul_resonance.multilinear import PairSpec

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

small_ints = st.integers(min_value=-3, max_value=3)
rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


@st.composite
def matrices(draw, max_rows=6, max_cols=6, entries=rationals):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    rows = [[draw(entries) for _ in range(c)] for _ in range(r)]
    return Matrix(r, c, [x for row in rows for x in row])


def random_independent(n: int, k: int, rng: random.Random, lo: int = -2, hi: int = 2) -> list[tuple[Fraction, ...]]:
    """k independent vectors of length n with small integer entries, sparse-ish."""
    while True:
        vecs = [tuple(Fraction(rng.randint(lo, hi)) if rng.random() < 0.6 else Fraction(0) for _ in range(n)) for _ in range(k)]
        if k == 0 or rank(Matrix.from_rows(vecs, n)) == k:
            return vecs


def random_spec(rng: random.Random, n_min: int = 2, n_max: int = 5) -> PairSpec:
    n = rng.randint(n_min, n_max)
    N = comb(n, 2)
    k = rng.randint(0, N)
    if rng.random() < 0.4:
        # monomial-style: coordinate K^⊥
        idx = rng.sample(range(N), k)
        unit = [tuple(Fraction(int(i == j)) for i in range(N)) for j in idx]
        return PairSpec.from_kperp(n, unit)
    return PairSpec.from_kperp(n, random_independent(N, k, rng))


def random_component(n: int, rng: random.Random) -> SubspaceBasis:
    m = rng.randint(1, n)
    if rng.random() < 0.5:
        idx = sorted(rng.sample(range(n), m))
        return SubspaceBasis(n, tuple(tuple(Fraction(int(i == j)) for i in range(n)) for j in idx))
    return SubspaceBasis(n, tuple(random_independent(n, m, rng)))


@st.composite
def specs(draw, n_max=5):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_spec(random.Random(seed), 2, n_max)
