"""Exact linear algebra over the rationals.

Matrices are stored as one sparse ``{column: Fraction}`` dict per row; the
Koszul matrices built elsewhere in the package are mostly zeros with unit
entries, so elimination works directly on those dicts.

Three elimination kernels live here:

* ``rank``: fraction-free elimination over the integers (denominators are
  cleared row by row, every new row is divided by its content);
* ``rank_modular``: the same loop over GF(p);
* ``kernel_basis``: Gauss-Jordan over ``Fraction`` for null spaces.

``certified_rank`` glues the first two together: two random 62-bit primes,
exact fallback whenever they disagree.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

import gmpy2

from .errors import AmbientMismatch, BadPrime, DependentVectors

Rational = Fraction


def to_rational(x) -> Fraction:
    """Parse an int, Fraction or ``"num/den"`` string exactly (no floats)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot read {x!r} as an exact rational")


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class Matrix:
    """Immutable rows x cols matrix of rationals.

    ``entries`` gives the dense row-major view; internally each row is a
    dict holding only the nonzero entries.
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, entries: Iterable = ()):
        entries = list(entries)
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        data = []
        for i in range(rows):
            row = {}
            for j in range(cols):
                v = to_rational(entries[i * cols + j])
                if v:
                    row[j] = v
            data.append(row)
        self.rows = rows
        self.cols = cols
        self._data = tuple(data)

    @classmethod
    def _trusted(cls, rows: int, cols: int, data: Sequence[dict]) -> Matrix:
        # data rows must already hold nonzero Fractions with column keys < cols
        m = object.__new__(cls)
        m.rows = rows
        m.cols = cols
        m._data = tuple(data)
        return m

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> Matrix:
        if cols is None:
            cols = len(rows[0]) if rows else 0
        flat = []
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
            flat.extend(r)
        return cls(len(rows), cols, flat)

    @classmethod
    def from_sparse(cls, rows: int, cols: int, items: dict) -> Matrix:
        """Build from ``{(i, j): value}``."""
        data = [dict() for _ in range(rows)]
        for (i, j), v in items.items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError((i, j))
            v = to_rational(v)
            if v:
                data[i][j] = v
        return cls._trusted(rows, cols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Matrix:
        return cls._trusted(rows, cols, [dict() for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls._trusted(n, n, [{i: Fraction(1)} for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def entries(self) -> tuple[Fraction, ...]:
        zero = Fraction(0)
        out = []
        for row in self._data:
            out.extend(row.get(j, zero) for j in range(self.cols))
        return tuple(out)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self._data[i].get(j, Fraction(0))

    def row_dict(self, i: int) -> dict[int, Fraction]:
        return dict(self._data[i])

    def to_rows(self) -> list[list[Fraction]]:
        zero = Fraction(0)
        return [[row.get(j, zero) for j in range(self.cols)] for row in self._data]

    @property
    def T(self) -> Matrix:
        data = [dict() for _ in range(self.cols)]
        for i, row in enumerate(self._data):
            for j, v in row.items():
                data[j][i] = v
        return Matrix._trusted(self.cols, self.rows, data)

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        for row in self._data:
            acc: dict[int, Fraction] = {}
            for k, a in row.items():
                for j, b in other._data[k].items():
                    acc[j] = acc.get(j, 0) + a * b
            out.append({j: v for j, v in acc.items() if v})
        return Matrix._trusted(self.rows, other.cols, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    __hash__ = None

    def is_zero(self) -> bool:
        return not any(self._data)

    def nnz(self) -> int:
        return sum(len(r) for r in self._data)

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols}, nnz={self.nnz()})"

    def __str__(self) -> str:
        cells = [[format_rational(v) for v in r] for r in self.to_rows()]
        if not cells:
            return f"[{self.rows}x{self.cols} matrix]"
        width = max((len(c) for r in cells for c in r), default=1)
        return "\n".join("[" + " ".join(c.rjust(width) for c in r) + "]" for r in cells)


def vstack(*ms: Matrix) -> Matrix:
    if not ms:
        raise ValueError("nothing to stack")
    cols = ms[0].cols
    if any(m.cols != cols for m in ms):
        raise ValueError("column counts differ")
    data = [r for m in ms for r in m._data]
    return Matrix._trusted(len(data), cols, data)


def hstack(*ms: Matrix) -> Matrix:
    if not ms:
        raise ValueError("nothing to stack")
    rows = ms[0].rows
    if any(m.rows != rows for m in ms):
        raise ValueError("row counts differ")
    data = [dict() for _ in range(rows)]
    offset = 0
    for m in ms:
        for i, r in enumerate(m._data):
            for j, v in r.items():
                data[i][j + offset] = v
        offset += m.cols
    return Matrix._trusted(rows, offset, data)


# -- integer (fraction-free) elimination ----------------------------------


def _integer_rows(m: Matrix) -> list[dict[int, int]]:
    rows = []
    for r in m._data:
        if not r:
            continue
        scale = lcm(*(v.denominator for v in r.values()))
        rows.append({j: v.numerator * (scale // v.denominator) for j, v in r.items()})
    return rows


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = gcd(*row.values())
    if g > 1:
        return {k: v // g for k, v in row.items()}
    return row


def _pivot_order(rows: list[dict[int, int]]) -> list[dict[int, int]]:
    # smallest bit-length first, then sparsest; stable so ties keep input order
    return sorted(rows, key=lambda r: (max(abs(v) for v in r.values()).bit_length(), len(r)))


def _echelon_int(rows: list[dict[int, int]]) -> dict[int, dict[int, int]]:
    basis: dict[int, dict[int, int]] = {}
    for row in _pivot_order(rows):
        row = _primitive(row)
        while row:
            c = min(row)
            b = basis.get(c)
            if b is None:
                basis[c] = row
                break
            g = gcd(row[c], b[c])
            a, p = row[c] // g, b[c] // g
            new = {k: p * v for k, v in row.items()}
            for k, v in b.items():
                x = new.get(k, 0) - a * v
                if x:
                    new[k] = x
                else:
                    new.pop(k, None)
            row = _primitive(new) if new else new
    return basis


def rank(m: Matrix) -> int:
    """Exact rank over Q."""
    return len(_echelon_int(_integer_rows(m)))


# -- modular fast path ----------------------------------------------------


def _check_prime(m: Matrix, p: int) -> None:
    if p < 2 or not gmpy2.is_prime(p):
        raise BadPrime(f"{p} is not prime")
    for r in m._data:
        for v in r.values():
            if v.denominator % p == 0:
                raise BadPrime(f"{p} divides the denominator of {v}")


def _rank_mod(m: Matrix, p: int) -> int:
    basis: dict[int, dict[int, int]] = {}
    for src in m._data:
        r = {}
        for k, v in src.items():
            x = v.numerator * pow(v.denominator, -1, p) % p if v.denominator != 1 else v.numerator % p
            if x:
                r[k] = x
        while r:
            c = min(r)
            b = basis.get(c)
            if b is None:
                inv = pow(r[c], -1, p)
                basis[c] = {k: v * inv % p for k, v in r.items()}
                break
            a = r[c]
            for k, v in b.items():
                x = (r.get(k, 0) - a * v) % p
                if x:
                    r[k] = x
                else:
                    r.pop(k, None)
    return len(basis)


def rank_modular(m: Matrix, prime: int) -> int:
    """Rank of ``m`` reduced mod ``prime``; never exceeds ``rank(m)``."""
    _check_prime(m, prime)
    return _rank_mod(m, prime)


def random_prime(bits: int = 62, rng: random.Random | None = None) -> int:
    rng = rng or random.Random()
    start = rng.getrandbits(bits - 1) | (1 << (bits - 1))
    return int(gmpy2.next_prime(start))


def _prime_avoiding(m: Matrix, rng: random.Random, exclude: set[int]) -> int:
    dens = {v.denominator for r in m._data for v in r.values() if v.denominator != 1}
    while True:
        p = random_prime(62, rng)
        if p not in exclude and all(d % p for d in dens):
            return p


_rng = random.Random()


def certified_rank(m: Matrix, exact: bool = False, rng: random.Random | None = None) -> int:
    """Rank with the modular fast path unless ``exact`` is set.

    Reduction mod p can only lose rank, so each modular rank is a lower
    bound. Two independent random primes must agree; on disagreement the
    exact integer elimination decides.
    """
    if exact:
        return rank(m)
    if m.rows == 0 or m.cols == 0:
        return 0
    rng = rng or _rng
    p1 = _prime_avoiding(m, rng, set())
    p2 = _prime_avoiding(m, rng, {p1})
    r1, r2 = _rank_mod(m, p1), _rank_mod(m, p2)
    if r1 == r2:
        return r1
    return rank(m)


# -- rational Gauss-Jordan and subspaces -----------------------------------


def _rref(rows: Iterable[dict[int, Fraction]]) -> dict[int, dict[int, Fraction]]:
    """Reduced row echelon form as ``{pivot column: row}`` (pivot entry 1)."""
    basis: dict[int, dict[int, Fraction]] = {}
    for src in rows:
        r = dict(src)
        while True:
            hits = [c for c in r if c in basis]
            if not hits:
                break
            c = min(hits)
            a = r[c]
            for k, v in basis[c].items():
                x = r.get(k, 0) - a * v
                if x:
                    r[k] = x
                else:
                    r.pop(k, None)
        if not r:
            continue
        c = min(r)
        inv = 1 / r[c]
        r = {k: v * inv for k, v in r.items()}
        for b in basis.values():
            a = b.get(c)
            if a:
                for k, v in r.items():
                    x = b.get(k, 0) - a * v
                    if x:
                        b[k] = x
                    else:
                        b.pop(k, None)
        basis[c] = r
    return basis


def _primitive_vector(v: dict[int, Fraction], n: int) -> tuple[Fraction, ...]:
    scale = lcm(*(x.denominator for x in v.values())) if v else 1
    ints = {k: x.numerator * (scale // x.denominator) for k, x in v.items()}
    g = gcd(*ints.values()) if ints else 1
    lead = ints[min(ints)] if ints else 1
    if lead < 0:
        g = -g
    return tuple(Fraction(ints.get(k, 0) // g) for k in range(n))


@dataclass(frozen=True)
class SubspaceBasis:
    """A subspace of Q^ambient_dim given by linearly independent vectors."""

    ambient_dim: int
    basis: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        vecs = tuple(tuple(to_rational(x) for x in v) for v in self.basis)
        if any(len(v) != self.ambient_dim for v in vecs):
            raise ValueError(f"basis vectors must have length {self.ambient_dim}")
        object.__setattr__(self, "basis", vecs)
        if vecs and rank(Matrix.from_rows(vecs, self.ambient_dim)) != len(vecs):
            raise DependentVectors("basis vectors are linearly dependent")

    @classmethod
    def from_spanning(cls, ambient_dim: int, vectors: Iterable[Sequence]) -> SubspaceBasis:
        """Canonical (reduced echelon, primitive integer) basis of a span."""
        rows = []
        for v in vectors:
            if len(v) != ambient_dim:
                raise ValueError(f"vectors must have length {ambient_dim}")
            rows.append({j: to_rational(x) for j, x in enumerate(v) if to_rational(x)})
        red = _rref(rows)
        vecs = tuple(_primitive_vector(red[c], ambient_dim) for c in sorted(red))
        return cls._trusted(ambient_dim, vecs)

    @classmethod
    def _trusted(cls, ambient_dim: int, vecs) -> SubspaceBasis:
        obj = object.__new__(cls)
        object.__setattr__(obj, "ambient_dim", ambient_dim)
        object.__setattr__(obj, "basis", tuple(vecs))
        return obj

    @classmethod
    def full(cls, n: int) -> SubspaceBasis:
        return cls._trusted(n, [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)])

    @classmethod
    def zero(cls, n: int) -> SubspaceBasis:
        return cls._trusted(n, ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def matrix(self) -> Matrix:
        """Basis vectors as the rows of a matrix."""
        return Matrix.from_rows(self.basis, self.ambient_dim)

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise AmbientMismatch("vector length differs from ambient dimension")
        if not any(v):
            return True
        return rank(Matrix.from_rows(list(self.basis) + [v], self.ambient_dim)) == self.dim

    def canonical(self) -> SubspaceBasis:
        return SubspaceBasis.from_spanning(self.ambient_dim, self.basis)


def kernel_basis(m: Matrix) -> SubspaceBasis:
    """Basis of the right null space of ``m``."""
    red = _rref(m._data)
    free = [j for j in range(m.cols) if j not in red]
    vecs = []
    for f in free:
        v = {f: Fraction(1)}
        for c, row in red.items():
            x = row.get(f)
            if x:
                v[c] = -x
        vecs.append(_primitive_vector(v, m.cols))
    return SubspaceBasis._trusted(m.cols, vecs)


def _same_ambient(a: SubspaceBasis, b: SubspaceBasis) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise AmbientMismatch(f"ambient dimensions {a.ambient_dim} and {b.ambient_dim} differ")


def span_sum(a: SubspaceBasis, b: SubspaceBasis) -> SubspaceBasis:
    _same_ambient(a, b)
    return SubspaceBasis.from_spanning(a.ambient_dim, list(a.basis) + list(b.basis))


def intersect(a: SubspaceBasis, b: SubspaceBasis) -> SubspaceBasis:
    """Basis of the intersection of two subspaces."""
    _same_ambient(a, b)
    n = a.ambient_dim
    if not a.basis or not b.basis:
        return SubspaceBasis.zero(n)
    # solve sum x_i a_i = sum y_j b_j; the x-part determines the point
    cols = [list(v) for v in a.basis] + [[-x for x in v] for v in b.basis]
    system = Matrix.from_rows([[c[i] for c in cols] for i in range(n)], len(cols))
    ker = kernel_basis(system)
    points = []
    for sol in ker.basis:
        x = sol[: a.dim]
        points.append([sum((x[i] * a.basis[i][k] for i in range(a.dim)), Fraction(0)) for k in range(n)])
    return SubspaceBasis.from_spanning(n, points)


def is_contained(a: SubspaceBasis, b: SubspaceBasis) -> bool:
    """True iff span(a) is a subspace of span(b)."""
    _same_ambient(a, b)
    if not a.basis:
        return True
    stacked = Matrix.from_rows(list(b.basis) + list(a.basis), a.ambient_dim)
    return rank(stacked) == b.dim


def same_span(a: SubspaceBasis, b: SubspaceBasis) -> bool:
    return a.dim == b.dim and is_contained(a, b)
