"""Instance files and report rendering.

Instance JSON::

    {"dim": 4,
     "Kperp": [[[1, 3, "1"]], [[1, 4, "1"]], [[2, 4, "1"]]],
     "components": [[["1", "0", "0", "0"], ["0", "0", "1", "0"], ...], ...]}

Exactly one of "K" / "Kperp" is given; each bivector is a list of terms
[i, j, "num/den"] with 1-based i < j. Rationals are strings or integers.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Any, Sequence

from .exact_linalg import SubspaceBasis, format_rational, to_rational
from .multilinear import PairSpec, pair_index, pairs


class InstanceFormatError(ValueError):
    """The instance file does not follow the schema."""


@dataclass(frozen=True)
class Instance:
    spec: PairSpec
    components: tuple[SubspaceBasis, ...]
    digest: str
    given: str  # "K" or "Kperp"


def _rational(x, where: str) -> Fraction:
    if isinstance(x, float):
        raise InstanceFormatError(f"{where}: floats are not accepted, write {x!r} as a string 'num/den'")
    try:
        return to_rational(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InstanceFormatError(f"{where}: cannot read {x!r} as a rational") from exc


def _bivector(n: int, terms, where: str) -> tuple[Fraction, ...]:
    if not isinstance(terms, list):
        raise InstanceFormatError(f"{where}: a bivector is a list of [i, j, coeff] terms")
    pidx = pair_index(n)
    vec = [Fraction(0)] * comb(n, 2)
    for t in terms:
        if not (isinstance(t, list) and len(t) == 3):
            raise InstanceFormatError(f"{where}: term {t!r} is not [i, j, coeff]")
        i, j, c = t
        if not (isinstance(i, int) and isinstance(j, int)) or isinstance(i, bool) or isinstance(j, bool):
            raise InstanceFormatError(f"{where}: indices in {t!r} must be integers")
        if not 1 <= i < j <= n:
            raise InstanceFormatError(f"{where}: term {t!r} violates 1 <= i < j <= {n}")
        vec[pidx[(i - 1, j - 1)]] += _rational(c, where)
    return tuple(vec)


def parse_components(n: int, raw, where: str = "components") -> tuple[SubspaceBasis, ...]:
    if not isinstance(raw, list):
        raise InstanceFormatError(f"{where}: expected a list of bases")
    out = []
    for a, basis in enumerate(raw):
        here = f"{where}[{a}]"
        if not isinstance(basis, list) or not basis:
            raise InstanceFormatError(f"{here}: a component is a non-empty list of vectors")
        vecs = []
        for v in basis:
            if not isinstance(v, list) or len(v) != n:
                raise InstanceFormatError(f"{here}: vectors must have {n} entries")
            vecs.append(tuple(_rational(x, here) for x in v))
        out.append(SubspaceBasis(n, tuple(vecs)))
    return tuple(out)


def parse_component_arg(n: int, text: str) -> SubspaceBasis:
    """Parse ``"1,0,0,0;0,1,0,0"`` (vectors separated by ';', entries by ',')."""
    vecs = []
    for chunk in text.split(";"):
        if not chunk.strip():
            continue
        entries = [e.strip() for e in chunk.split(",")]
        if len(entries) != n:
            raise InstanceFormatError(f"component vector {chunk!r} needs {n} entries")
        vecs.append(tuple(_rational(e, "--component") for e in entries))
    if not vecs:
        raise InstanceFormatError("empty --component")
    return SubspaceBasis(n, tuple(vecs))


def _canonical(n: int, key: str, vectors: Sequence[Sequence[Fraction]], components) -> dict:
    ps = pairs(n)
    biv = [[[i + 1, j + 1, format_rational(v[p])] for p, (i, j) in enumerate(ps) if v[p]] for v in vectors]
    out: dict[str, Any] = {"dim": n, key: biv}
    if components:
        out["components"] = [[[format_rational(x) for x in v] for v in c.basis] for c in components]
    return out


def digest_of(obj) -> str:
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def parse_instance(data) -> Instance:
    if not isinstance(data, dict):
        raise InstanceFormatError("instance must be a JSON object")
    n = data.get("dim")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InstanceFormatError('"dim" must be a positive integer')
    keys = [k for k in ("K", "Kperp") if k in data]
    if len(keys) != 1:
        raise InstanceFormatError('give exactly one of "K" and "Kperp"')
    key = keys[0]
    raw = data[key]
    if not isinstance(raw, list):
        raise InstanceFormatError(f'"{key}" must be a list of bivectors')
    vectors = [_bivector(n, t, f"{key}[{a}]") for a, t in enumerate(raw)]
    spec = PairSpec.from_k(n, vectors) if key == "K" else PairSpec.from_kperp(n, vectors)
    components = parse_components(n, data["components"]) if "components" in data else ()
    return Instance(spec, components, digest_of(_canonical(n, key, vectors, components)), key)


def load_instance(path) -> Instance:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InstanceFormatError(f"{path}: {exc}") from exc
    return parse_instance(data)


def instance_json(spec: PairSpec, components: Sequence[SubspaceBasis] = (), use_kperp: bool = False) -> dict:
    """Serialize a spec (and components) in the instance schema."""
    if use_kperp:
        return _canonical(spec.n, "Kperp", spec.kperp_basis, components)
    return _canonical(spec.n, "K", spec.k_basis, components)


# -- rendering ---------------------------------------------------------------------


def bivector_str(n: int, v: Sequence[Fraction], basis: str = "e") -> str:
    terms = []
    for p, (i, j) in enumerate(pairs(n)):
        c = v[p]
        if not c:
            continue
        name = f"{basis}{i + 1}^{basis}{j + 1}"
        mag = abs(c)
        body = name if mag == 1 else f"{format_rational(mag)}*{name}"
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def vector_str(v: Sequence[Fraction]) -> str:
    return "(" + ", ".join(format_rational(x) for x in v) + ")"


def subset_str(s: Sequence[int]) -> str:
    return "{" + ",".join(str(i + 1) for i in s) + "}"


def _cell(x) -> str:
    if isinstance(x, bool):
        return "yes" if x else "no"
    if x is None:
        return "-"
    if isinstance(x, Fraction):
        return format_rational(x)
    return str(x)


def _jsonable(x):
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


@dataclass
class Table:
    name: str
    columns: list[str]
    rows: list[list]


@dataclass
class Report:
    command: str
    digest: str | None
    flags: dict
    summary: dict
    tables: list[Table]
    status: str = "ok"

    def as_dict(self) -> dict:
        return _jsonable(
            {
                "command": self.command,
                "instance_sha256": self.digest,
                "flags": self.flags,
                "summary": self.summary,
                "tables": [{"name": t.name, "columns": t.columns, "rows": t.rows} for t in self.tables],
                "status": self.status,
            }
        )

    def render_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, ensure_ascii=False) + "\n"

    def render_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for k, t in enumerate(self.tables):
            if k:
                buf.write("\n")
            buf.write(f"# {t.name}\n")
            w.writerow(t.columns)
            for r in t.rows:
                w.writerow([_cell(x) for x in r])
        return buf.getvalue()

    def render_text(self) -> str:
        lines = [f"command: {self.command}"]
        if self.digest:
            lines.append(f"instance sha256: {self.digest}")
        if self.flags:
            lines.append("flags: " + ", ".join(f"{k}={_cell(v)}" for k, v in self.flags.items()))
        for k, v in self.summary.items():
            if isinstance(v, (list, tuple)):
                lines.append(f"{k}:")
                lines.extend(f"  {_cell(x)}" for x in v)
            else:
                lines.append(f"{k}: {_cell(v)}")
        for t in self.tables:
            lines.append("")
            lines.append(f"[{t.name}]")
            cells = [t.columns] + [[_cell(x) for x in r] for r in t.rows]
            widths = [max(len(r[c]) for r in cells) for c in range(len(t.columns))]
            # numbers right-aligned, text left-aligned
            numeric = [all(isinstance(r[c], int) for r in t.rows) for c in range(len(t.columns))]
            for r in cells:
                parts = [x.rjust(w) if num else x.ljust(w) for x, w, num in zip(r, widths, numeric)]
                lines.append("  ".join(parts).rstrip())
        lines.append("")
        lines.append(f"status: {self.status}")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        return {"json": self.render_json, "csv": self.render_csv}.get(fmt, self.render_text)()
