"""Sparse polynomials over Q and degree slices of homogeneous ideals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .exact_linalg import Matrix, SubspaceBasis, format_rational, intersect, is_contained, to_rational
from .multilinear import monomials, mono_rank, sym_dim


class MultiPoly:
    """Polynomial in x1..xn with rational coefficients, stored as {exponents: coeff}."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict | None = None):
        self.n = n
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != n:
                raise ValueError(f"exponent vector {e} has wrong length for n={n}")
            c = to_rational(c)
            if c:
                clean[e] = c
        self.terms = clean

    @classmethod
    def constant(cls, n: int, c=1) -> MultiPoly:
        return cls(n, {(0,) * n: c})

    @classmethod
    def variable(cls, n: int, i: int) -> MultiPoly:
        """The variable x_{i+1} (0-based index i)."""
        e = [0] * n
        e[i] = 1
        return cls(n, {tuple(e): 1})

    @classmethod
    def from_vector(cls, n: int, d: int, vec: Sequence) -> MultiPoly:
        mons = monomials(n, d)
        return cls(n, {mons[i]: v for i, v in enumerate(vec) if v})

    def _coerce(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            if other.n != self.n:
                raise ValueError("polynomials in different numbers of variables")
            return other
        return MultiPoly.constant(self.n, to_rational(other))

    def __add__(self, other) -> MultiPoly:
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(self.n, out)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> MultiPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> MultiPoly:
        return self._coerce(other) - self

    def __mul__(self, other) -> MultiPoly:
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(self.n, out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.n == other.n and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.constant(self.n, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def to_vector(self, d: int) -> tuple[Fraction, ...]:
        """Coordinates in the degree-d monomial basis; requires homogeneity of degree d."""
        vec = [Fraction(0)] * sym_dim(self.n, d)
        for e, c in self.terms.items():
            if sum(e) != d:
                raise ValueError(f"term of degree {sum(e)} in a degree-{d} slice")
            vec[mono_rank(e)] = c
        return tuple(vec)

    def primitive(self) -> MultiPoly:
        """Scale to coprime integer coefficients with a positive leading term."""
        if not self.terms:
            return self
        s = lcm(*(c.denominator for c in self.terms.values()))
        g = gcd(*(int(c * s) for c in self.terms.values()))
        lead = self.terms[self._ordered()[0]]
        factor = Fraction(s, g) * (1 if lead > 0 else -1)
        return MultiPoly(self.n, {e: c * factor for e, c in self.terms.items()})

    def _ordered(self) -> list[tuple[int, ...]]:
        # higher degree first, then decreasing lex in the exponents
        return sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e)))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in self._ordered():
            c = self.terms[e]
            mono = "*".join(f"x{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            mag = abs(c)
            if not mono:
                body = format_rational(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{format_rational(mag)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"MultiPoly({self})"


def parse_monomial(n: int, text: str) -> MultiPoly:
    """Parse products like ``x2*x3^2`` (used in tests and demos)."""
    e = [0] * n
    text = text.strip()
    if text != "1":
        for factor in text.split("*"):
            name, _, power = factor.strip().partition("^")
            if not name.startswith("x"):
                raise ValueError(f"bad factor {factor!r}")
            e[int(name[1:]) - 1] += int(power) if power else 1
    return MultiPoly(n, {tuple(e): 1})


@dataclass(frozen=True)
class IdealSlice:
    """Degree-d piece of a homogeneous ideal, as a basis of polynomials."""

    n: int
    degree: int
    basis: tuple[MultiPoly, ...]

    @classmethod
    def from_space(cls, n: int, d: int, space: SubspaceBasis) -> IdealSlice:
        return cls(n, d, tuple(MultiPoly.from_vector(n, d, v).primitive() for v in space.basis))

    @classmethod
    def full(cls, n: int, d: int) -> IdealSlice:
        return cls.from_space(n, d, SubspaceBasis.full(sym_dim(n, d)))

    @classmethod
    def zero(cls, n: int, d: int) -> IdealSlice:
        return cls(n, d, ())

    @classmethod
    def from_generators(cls, n: int, generators: Iterable[MultiPoly], d: int) -> IdealSlice:
        """Degree-d slice of the ideal generated by homogeneous polynomials."""
        vecs = []
        for g in generators:
            if g.is_zero():
                continue
            if not g.is_homogeneous():
                raise ValueError(f"{g} is not homogeneous")
            k = d - g.degree()
            if k < 0:
                continue
            for e in monomials(n, k):
                vecs.append((MultiPoly(n, {e: 1}) * g).to_vector(d))
        return cls.from_space(n, d, SubspaceBasis.from_spanning(sym_dim(n, d), vecs))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def space(self) -> SubspaceBasis:
        return SubspaceBasis.from_spanning(sym_dim(self.n, self.degree), [f.to_vector(self.degree) for f in self.basis])

    def intersect(self, other: IdealSlice) -> IdealSlice:
        self._check(other)
        return IdealSlice.from_space(self.n, self.degree, intersect(self.space(), other.space()))

    def issubset(self, other: IdealSlice) -> bool:
        self._check(other)
        return is_contained(self.space(), other.space())

    def same_as(self, other: IdealSlice) -> bool:
        return self.dim == other.dim and self.issubset(other)

    def times_linear_forms(self) -> IdealSlice:
        """The slice S_1 · I_d in degree d + 1."""
        return IdealSlice.from_generators(self.n, self.basis, self.degree + 1)

    def _check(self, other: IdealSlice) -> None:
        if (self.n, self.degree) != (other.n, other.degree):
            raise ValueError("slices live in different polynomial rings or degrees")

    def __str__(self) -> str:
        return "{" + ", ".join(str(f) for f in self.basis) + "}"


def determinant(rows: Sequence[Sequence[MultiPoly]], n: int) -> MultiPoly:
    """Determinant of a square polynomial matrix by Laplace expansion.

    Expansion runs down the columns; minors are memoized on the set of rows
    still in play, so the cost is 2^k * k polynomial products rather than k!.
    """
    k = len(rows)
    if k == 0:
        return MultiPoly.constant(n, 1)
    memo: dict[int, MultiPoly] = {}

    def minor(mask: int, col: int) -> MultiPoly:
        if col == k:
            return MultiPoly.constant(n, 1)
        hit = memo.get(mask)
        if hit is not None:
            return hit
        total = MultiPoly(n)
        sign = 1
        for r in range(k):
            if mask & (1 << r):
                continue
            entry = rows[r][col]
            if not entry.is_zero():
                term = entry * minor(mask | (1 << r), col + 1)
                total = total + term if sign > 0 else total - term
            sign = -sign
        memo[mask] = total
        return total

    return minor(0, 0)


def polymatrix_str(entries: Sequence[Sequence[MultiPoly]]) -> str:
    cells = [[str(p) for p in row] for row in entries]
    if not cells:
        return "[]"
    width = max((len(c) for row in cells for c in row), default=1)
    return "\n".join("[" + "  ".join(c.rjust(width) for c in row) + "]" for row in cells)


def as_matrix(slice_: IdealSlice) -> Matrix:
    return Matrix.from_rows([f.to_vector(slice_.degree) for f in slice_.basis], sym_dim(slice_.n, slice_.degree))
