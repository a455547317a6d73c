"""Graphs, their monomial Koszul modules and combinatorial resonance.

For a simple graph on vertices 1..n, K is spanned by v_i∧v_j over the edges and
K^⊥ by e_i∧e_j over the non-edges. Resonance components are the coordinate
subspaces of maximal vertex subsets inducing a disconnected subgraph.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import CrossCheckFailure, GuardExceeded
from .exact_linalg import Matrix, SubspaceBasis, certified_rank
from .koszul import check_guard, wq_dim_homology
from .multilinear import PairSpec, monomials, mono_rank, sym_dim, triples, unit_bivector
from .polynomials import MultiPoly
from .resonance import check_isotropic, check_separable, in_resonance

MAX_VERTICES = 20


class GraphFormatError(ValueError):
    """Malformed graph description."""


@dataclass(frozen=True)
class Graph:
    """Simple graph on vertices 0..n-1; edges stored as sorted 0-based pairs."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.n < 1:
            raise GraphFormatError("a graph needs at least one vertex")
        for i, j in self.edges:
            if not 0 <= i < j < self.n:
                raise GraphFormatError(f"bad edge ({i + 1},{j + 1})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], one_based: bool = True) -> Graph:
        shift = 1 if one_based else 0
        out = set()
        for e in edges:
            if len(e) != 2:
                raise GraphFormatError(f"edge {e!r} is not a pair")
            i, j = int(e[0]) - shift, int(e[1]) - shift
            if i == j:
                raise GraphFormatError(f"loop at vertex {i + shift}")
            out.add((min(i, j), max(i, j)))
        return cls(n, frozenset(out))

    @classmethod
    def from_json(cls, data: dict) -> Graph:
        """Parse {"vertices": n, "edges": [[i, j], ...]} with 1-based i < j."""
        if not isinstance(data, dict) or "vertices" not in data:
            raise GraphFormatError('expected an object with "vertices" and "edges"')
        n = data["vertices"]
        if not isinstance(n, int) or isinstance(n, bool):
            raise GraphFormatError('"vertices" must be an integer')
        seen = set()
        for e in data.get("edges", []):
            if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e)):
                raise GraphFormatError(f"edge {e!r} is not a pair of integers")
            i, j = e
            if not 1 <= i < j <= n:
                raise GraphFormatError(f"edge [{i}, {j}] violates 1 <= i < j <= {n}")
            if (i, j) in seen:
                raise GraphFormatError(f"duplicate edge [{i}, {j}]")
            seen.add((i, j))
        return cls.from_edges(n, seen)

    @classmethod
    def load(cls, path) -> Graph:
        with open(path) as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise GraphFormatError(str(exc)) from exc
        return cls.from_json(data)

    def to_json(self) -> dict:
        return {"vertices": self.n, "edges": [[i + 1, j + 1] for i, j in sorted(self.edges)]}

    def adjacency(self) -> list[int]:
        adj = [0] * self.n
        for i, j in self.edges:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return adj

    def non_edges(self) -> list[tuple[int, int]]:
        return [p for p in combinations(range(self.n), 2) if p not in self.edges]

    def induced_edges(self, subset: Iterable[int]) -> list[tuple[int, int]]:
        s = set(subset)
        return [(i, j) for i, j in sorted(self.edges) if i in s and j in s]


# -- small families used in tests and demos ----------------------------------


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2), one_based=False)


def discrete_graph(n: int) -> Graph:
    return Graph(n, frozenset())


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], one_based=False)


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], one_based=False)


def join(*parts: Graph) -> Graph:
    """Disjoint union of the parts plus every edge between different parts."""
    edges = set()
    offsets = []
    total = 0
    for g in parts:
        offsets.append(total)
        edges |= {(i + total, j + total) for i, j in g.edges}
        total += g.n
    for a, b in combinations(range(len(parts)), 2):
        for i in range(parts[a].n):
            for j in range(parts[b].n):
                edges.add((i + offsets[a], j + offsets[b]))
    return Graph(total, frozenset(edges))


def cone(g: Graph) -> Graph:
    """Add a vertex adjacent to every vertex of g."""
    return join(g, Graph(1, frozenset()))


def random_graph(n: int, rng: random.Random, p: float = 0.5) -> Graph:
    return Graph.from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < p], one_based=False)


# -- translation and components ------------------------------------------------


def graph_to_pairspec(g: Graph) -> PairSpec:
    n = g.n
    k = [unit_bivector(n, i, j) for i, j in sorted(g.edges)]
    kperp = [unit_bivector(n, i, j) for i, j in g.non_edges()]
    return PairSpec(n, tuple(k), tuple(kperp))


def _connected(mask: int, adj: list[int]) -> bool:
    if mask == 0:
        return True
    seen = mask & -mask
    frontier = seen
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= adj[low.bit_length() - 1]
            f ^= low
        nxt &= mask & ~seen
        seen |= nxt
        frontier = nxt
    return seen == mask


def _bits(mask: int) -> tuple[int, ...]:
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


def resonance_components(g: Graph, force: bool = False) -> list[tuple[int, ...]]:
    """Maximal vertex subsets inducing a disconnected subgraph (0-based, sorted).

    A disconnected S is maximal iff S ∪ {v} is connected for every v outside S:
    if some T ⊋ S is disconnected, either a component of T misses S (add one of
    its vertices) or S meets several components of T (add any vertex of T∖S).
    Cost is 2^n connectivity tests.
    """
    n = g.n
    if n > MAX_VERTICES and not force:
        raise GuardExceeded(f"{n} vertices exceeds the enumeration guard of {MAX_VERTICES}")
    adj = g.adjacency()
    full = (1 << n) - 1
    connected = bytearray(1 << n)
    for mask in range(1 << n):
        connected[mask] = _connected(mask, adj)
    out = []
    for mask in range(1, 1 << n):
        if connected[mask]:
            continue
        rest = full & ~mask
        maximal = True
        while rest:
            low = rest & -rest
            if not connected[mask | low]:
                maximal = False
                break
            rest ^= low
        if maximal:
            out.append(_bits(mask))
    out.sort(key=lambda s: (-len(s), s))
    return out


def coordinate_subspace(n: int, subset: Iterable[int]) -> SubspaceBasis:
    basis = [tuple(Fraction(int(i == j)) for i in range(n)) for j in sorted(subset)]
    return SubspaceBasis._trusted(n, tuple(basis))


def _require_component(g: Graph, subset: Sequence[int]) -> None:
    s = tuple(sorted(subset))
    if s not in resonance_components(g):
        raise ValueError(f"{[v + 1 for v in s]} is not a maximal disconnected vertex subset")


def component_is_isotropic(g: Graph, subset: Sequence[int], validate: bool = True) -> bool:
    """The induced subgraph is discrete."""
    if validate:
        _require_component(g, subset)
    return not g.induced_edges(subset)


def component_is_separable(g: Graph, subset: Sequence[int], validate: bool = True) -> bool:
    """Every vertex of the subset is adjacent to every vertex outside it."""
    if validate:
        _require_component(g, subset)
    inside = set(subset)
    return all((min(i, j), max(i, j)) in g.edges for i in inside for j in range(g.n) if j not in inside)


def generic_components(g: Graph, seed: int = 0) -> list[tuple[int, ...]]:
    """Maximal coordinate subspaces contained in R(V, K), found by linear algebra.

    A coordinate subspace lies in the (closed) resonance set iff a generic point
    of it does; the generic point has random coefficients in [1, 10^9].
    """
    spec = graph_to_pairspec(g)
    rng = random.Random(seed)
    n = g.n
    resonant = set()
    for size in range(n, 0, -1):
        for s in combinations(range(n), size):
            if any(set(s) < set(t) for t in resonant):
                continue
            point = [Fraction(0)] * n
            for i in s:
                point[i] = Fraction(rng.randint(1, 10**9))
            if in_resonance(spec, point):
                resonant.add(s)
    return sorted(resonant, key=lambda s: (-len(s), s))


# -- the presentation matrix Θ ---------------------------------------------------


@dataclass(frozen=True)
class ThetaMatrix:
    """Θ with rows indexed by triangles missing an edge and columns by non-edges."""

    n: int
    row_labels: tuple[tuple[int, int, int], ...]
    col_labels: tuple[tuple[int, int], ...]
    entries: tuple[tuple[MultiPoly, ...], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_labels), len(self.col_labels)

    def __str__(self) -> str:
        cells = [[str(p) for p in row] for row in self.entries]
        width = max([len(c) for row in cells for c in row] + [3])
        head = " " * 4 + " ".join(f"{i + 1}{j + 1}".rjust(width) for i, j in self.col_labels)
        lines = [head]
        for (i, j, k), row in zip(self.row_labels, cells):
            lines.append(f"{i + 1}{j + 1}{k + 1} " + " ".join(c.rjust(width) for c in row))
        return "\n".join(lines)


def theta_matrix(g: Graph) -> ThetaMatrix:
    """Θ_{ijk, lm} is x_k at (i,j), -x_j at (i,k), x_i at (j,k), zero elsewhere."""
    n = g.n
    cols = tuple(g.non_edges())
    col_set = set(cols)
    rows = tuple(t for t in triples(n) if {(t[0], t[1]), (t[0], t[2]), (t[1], t[2])} & col_set)
    xs = [MultiPoly.variable(n, i) for i in range(n)]
    zero = MultiPoly(n)
    entries = []
    for i, j, k in rows:
        value = {(i, j): xs[k], (i, k): -xs[j], (j, k): xs[i]}
        entries.append(tuple(value.get(c, zero) for c in cols))
    return ThetaMatrix(n, rows, cols, tuple(entries))


def theta_degree_matrix(theta: ThetaMatrix, q: int) -> Matrix:
    """Degree-q piece of Θ: Span(T̄) ⊗ S_{q-1} -> Span(Ē) ⊗ S_q, columns are images."""
    n = theta.n
    sq = sym_dim(n, q)
    ncols = len(theta.row_labels) * sym_dim(n, q - 1)
    items = {}
    if q >= 1:
        src = monomials(n, q - 1)
        for r, row in enumerate(theta.entries):
            for a, e in enumerate(src):
                col = r * len(src) + a
                for c, poly in enumerate(row):
                    for exps, coeff in poly.terms.items():
                        target = tuple(x + y for x, y in zip(exps, e))
                        items[(c * sq + mono_rank(target), col)] = coeff
    return Matrix.from_sparse(len(theta.col_labels) * sq, ncols, items)


def theta_coker_dim(g: Graph, q: int, exact: bool = False, force: bool = False) -> int:
    check_guard(g.n, q, force)
    theta = theta_matrix(g)
    gens = len(theta.col_labels) * sym_dim(g.n, q)
    if gens == 0 or q == 0:
        return gens
    return gens - certified_rank(theta_degree_matrix(theta, q), exact)


@dataclass(frozen=True)
class RaagCrosscheckRow:
    q: int
    theta: int
    engine: int


def raag_crosscheck(g: Graph, q_max: int, exact: bool = False, force: bool = False) -> list[RaagCrosscheckRow]:
    """Θ-cokernel dimensions against the generic engine; raises on any mismatch."""
    spec = graph_to_pairspec(g)
    rows = []
    for q in range(q_max + 1):
        r = RaagCrosscheckRow(q, theta_coker_dim(g, q, exact, force), wq_dim_homology(spec, q, exact, force))
        if r.theta != r.engine:
            raise CrossCheckFailure(f"q={q}: Θ cokernel {r.theta}, engine {r.engine}")
        rows.append(r)
    return rows


@dataclass(frozen=True)
class GraphComponentReport:
    subset: tuple[int, ...]
    isotropic: bool
    separable: bool
    isotropic_generic: bool
    separable_generic: bool


def analyze_graph(g: Graph) -> list[GraphComponentReport]:
    """Combinatorial and linear-algebra answers side by side for every component."""
    spec = graph_to_pairspec(g)
    out = []
    for s in resonance_components(g):
        comp = coordinate_subspace(g.n, s)
        out.append(
            GraphComponentReport(
                s,
                component_is_isotropic(g, s, validate=False),
                component_is_separable(g, s, validate=False),
                check_isotropic(spec, comp),
                check_separable(spec, comp),
            )
        )
    return out


__all__ = [
    "Graph",
    "GraphComponentReport",
    "GraphFormatError",
    "RaagCrosscheckRow",
    "ThetaMatrix",
    "analyze_graph",
    "complete_graph",
    "component_is_isotropic",
    "component_is_separable",
    "cone",
    "coordinate_subspace",
    "cycle_graph",
    "discrete_graph",
    "generic_components",
    "graph_to_pairspec",
    "join",
    "path_graph",
    "raag_crosscheck",
    "random_graph",
    "resonance_components",
    "theta_coker_dim",
    "theta_degree_matrix",
    "theta_matrix",
]
