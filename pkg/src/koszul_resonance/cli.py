"""Command-line interface: ``resonance {hilbert,check,raag,ann,identities}``.

Exit codes: 0 success, 2 cross-check failure, 64 bad input, 65 size guard.
"""

from __future__ import annotations

import argparse
import os
import shlex
import sys
import time
from typing import Sequence

from .closed_forms import (
    chen_rank_kodaira,
    chen_rank_surface,
    grassmannian_degree_identity,
    porteous_coefficient,
    subpencil_count,
    subpencil_range,
)
from .errors import CrossCheckFailure, DependentVectors, GuardExceeded, NonIntegral, NonSeparableComponent
from .io import (
    InstanceFormatError,
    Report,
    Table,
    bivector_str,
    digest_of,
    load_instance,
    parse_component_arg,
    subset_str,
    vector_str,
)
from .koszul import annihilator_slice, check_guard, fitting_generators, hilbert_table
from .raag import (
    Graph,
    GraphFormatError,
    analyze_graph,
    coordinate_subspace,
    generic_components,
    graph_to_pairspec,
    raag_crosscheck,
    resonance_components,
)
from .resonance import analyze_component, invalid_basis_vectors, reducedness_window, verify_decomposition

EXIT_OK = 0
EXIT_CROSSCHECK = 2
EXIT_USAGE = 64
EXIT_GUARD = 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def degree_limit(n: int) -> int | None:
    """Default bound on q (or d): 8 for n <= 4, 6 for n <= 6, else only the size guard."""
    if n <= 4:
        return 8
    if n <= 6:
        return 6
    return None


def guard_degree(n: int, top: int, force: bool) -> None:
    limit = degree_limit(n)
    if limit is not None and top > limit and not force:
        raise GuardExceeded(f"degree {top} exceeds the default bound {limit} for n={n}; use --force")
    for q in range(top + 1):
        check_guard(n, q, force)


def workers() -> int:
    cap = os.environ.get("RESONANCE_THREADS")
    count = os.cpu_count() or 1
    if cap:
        try:
            count = min(count, max(1, int(cap)))
        except ValueError:
            raise UsageError(f"RESONANCE_THREADS={cap!r} is not an integer")
    return count


def _mode(args) -> str:
    return "exact" if args.exact else "modular"


def _flags(args, **extra) -> dict:
    out = {"mode": _mode(args), "force": args.force}
    out.update(extra)
    return out


def _load(args):
    inst = load_instance(args.input)
    if args.validate:
        for a, comp in enumerate(inst.components):
            bad = invalid_basis_vectors(inst.spec, comp)
            if bad:
                raise UsageError(f"component {a}: basis vectors {[b + 1 for b in bad]} are not resonant")
    return inst


# -- subcommands ---------------------------------------------------------------------


def cmd_hilbert(args, command: str) -> tuple[Report, int]:
    inst = _load(args)
    spec = inst.spec
    guard_degree(spec.n, args.qmax, args.force)
    table = hilbert_table(spec, args.qmax, args.exact, args.force, workers(), check=False)
    rows = [[r.q, r.dim_homology, r.dim_cokernel, r.dim_homology == r.dim_cokernel] for r in table.rows]
    summary = {"n": spec.n, "dim K": spec.dim_k, "dim Kperp": spec.dim_kperp}
    report = Report(
        command, inst.digest, _flags(args), summary, [Table("hilbert", ["q", "homology", "cokernel", "agree"], rows)]
    )
    if not table.consistent:
        report.status = "cross-check failure"
        return report, EXIT_CROSSCHECK
    return report, EXIT_OK


def cmd_check(args, command: str) -> tuple[Report, int]:
    inst = _load(args)
    spec = inst.spec
    comp = parse_component_arg(spec.n, args.component)
    rep = analyze_component(spec, comp)
    summary = {
        "n": spec.n,
        "component": [vector_str(v) for v in comp.basis],
        "dim": comp.dim,
        "basis vectors resonant": not invalid_basis_vectors(spec, comp),
        "isotropic": rep.isotropic,
        "separable": rep.separable,
        "separable (p_M route)": rep.separable_pm,
        "strongly isotropic": rep.strongly_isotropic,
        "dim Kbar": rep.kbar_dim,
    }
    for name, w in rep.witnesses.items():
        summary[f"{name} witness"] = bivector_str(spec.n, w)
    report = Report(command, inst.digest, _flags(args), summary, [])
    if rep.separable != rep.separable_pm or rep.strongly_isotropic != (rep.isotropic and rep.separable):
        report.status = "cross-check failure"
        return report, EXIT_CROSSCHECK
    return report, EXIT_OK


def cmd_raag(args, command: str) -> tuple[Report, int]:
    try:
        g = Graph.load(args.graph)
    except (OSError, GraphFormatError) as exc:
        raise UsageError(str(exc))
    guard_degree(g.n, args.qmax, args.force)
    comps = resonance_components(g, args.force)
    generic = generic_components(g)
    reports = analyze_graph(g)
    ok = generic == comps
    comp_rows = []
    for r in reports:
        ok &= r.isotropic == r.isotropic_generic and r.separable == r.separable_generic
        comp_rows.append([subset_str(r.subset), len(r.subset), r.isotropic, r.isotropic_generic, r.separable, r.separable_generic])
    tables = [
        Table(
            "components",
            ["vertices", "dim", "isotropic", "isotropic (generic)", "separable", "separable (generic)"],
            comp_rows,
        )
    ]
    try:
        rows = raag_crosscheck(g, args.qmax, args.exact, args.force)
        tables.append(Table("hilbert", ["q", "theta cokernel", "engine"], [[r.q, r.theta, r.engine] for r in rows]))
    except CrossCheckFailure as exc:
        ok = False
        tables.append(Table("hilbert", ["error"], [[str(exc)]]))
    summary = {
        "n": g.n,
        "edges": " ".join(subset_str(e) for e in sorted(g.edges)) or "none",
        "components": [subset_str(s) for s in comps] or ["none (resonance is {0})"],
        "generic route agrees": generic == comps,
    }
    if comps and all(r.separable for r in reports):
        dec = verify_decomposition(
            graph_to_pairspec(g), [coordinate_subspace(g.n, s) for s in comps], args.qmax, args.exact, args.force
        )
        tables.append(
            Table(
                "decomposition",
                ["q", "dim W_q", "sum over components", "agree"],
                [[r.q, r.whole, r.total, r.agrees] for r in dec.rows],
            )
        )
        summary["first agreement q"] = dec.first_agreement_q
    digest = digest_of(g.to_json())
    report = Report(command, digest, _flags(args), summary, tables)
    if not ok:
        report.status = "cross-check failure"
        return report, EXIT_CROSSCHECK
    return report, EXIT_OK


def cmd_ann(args, command: str) -> tuple[Report, int]:
    inst = _load(args)
    spec = inst.spec
    guard_degree(spec.n, args.dmax, args.force)
    rows = []
    for d in range(args.dmax + 1):
        ann = annihilator_slice(spec, d, args.force)
        rows.append([d, ann.dim, str(ann)])
    tables = [Table("annihilator", ["d", "dim", "basis"], rows)]
    summary = {"n": spec.n}
    if args.fitting:
        gens = fitting_generators(spec, args.force)
        summary["Fitting generators"] = [str(f) for f in gens]
    if inst.components:
        window = reducedness_window(spec, inst.components, range(args.dmax + 1), args.force)
        tables.append(
            Table(
                "reducedness window",
                ["d", "dim Ann_d", "dim radical slice", "equal"],
                [[r.d, r.annihilator.dim, r.radical.dim, r.equal] for r in window],
            )
        )
        summary["window claim"] = "per-degree equality only, no statement beyond the tested degrees"
    return Report(command, inst.digest, _flags(args), summary, tables), EXIT_OK


def cmd_identities(args, command: str) -> tuple[Report, int]:
    if args.gmax < 1:
        raise UsageError("--gmax must be at least 1")
    rows = []
    ok = True
    for g in range(1, args.gmax + 1):
        ident = grassmannian_degree_identity(g)
        vafa = subpencil_count(g, g + 1)
        porteous_ok = all(porteous_coefficient(g, a, 3 * g + 1).count == subpencil_count(g, a) for a in subpencil_range(g))
        ok &= ident.equal and vafa == 2**g and porteous_ok
        rows.append([g, ident.lhs, ident.rhs, ident.equal, vafa, vafa == 2**g, porteous_ok])
    kodaira_ok = all(
        chen_rank_kodaira(b1, b2, q) == chen_rank_surface(b1, q) + chen_rank_surface(b2, q)
        for b1 in range(2, 7)
        for b2 in range(2, 7)
        for q in range(3, 11)
    )
    ok &= kodaira_ok
    summary = {"Kodaira additivity (b1, b2 <= 6, 3 <= q <= 10)": kodaira_ok}
    report = Report(
        command,
        None,
        {},
        summary,
        [
            Table(
                "identities",
                ["g", "sum of subpencil counts", "Grassmannian degree", "equal", "count at a=g+1", "= 2^g", "Porteous = count"],
                rows,
            )
        ],
    )
    if not ok:
        report.status = "cross-check failure"
        return report, EXIT_CROSSCHECK
    return report, EXIT_OK


# -- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", help="JSON report")
    fmt.add_argument("--csv", dest="fmt", action="store_const", const="csv", help="CSV tables")
    mode = common.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="fraction-free rank only")
    mode.add_argument("--modular", action="store_true", help="two-prime rank with exact fallback (default)")
    common.add_argument("--force", action="store_true", help="override size guards")
    common.add_argument("--validate", action="store_true", help="check supplied components are resonant")
    common.add_argument("--timing", action="store_true", help="print elapsed time to stderr")

    parser = _Parser(prog="resonance", description="Koszul modules and resonance of (V, K) instances.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("hilbert", parents=[common], help="dim W_q by two routes")
    p.add_argument("--input", required=True)
    p.add_argument("--qmax", type=int, required=True)
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("check", parents=[common], help="isotropy and separability of a component")
    p.add_argument("--input", required=True)
    p.add_argument("--component", required=True, help='basis vectors, e.g. "1,0,0,0;0,1,0,0"')
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("raag", parents=[common], help="graph layer")
    p.add_argument("--graph", required=True)
    p.add_argument("--qmax", type=int, required=True)
    p.set_defaults(func=cmd_raag)

    p = sub.add_parser("ann", parents=[common], help="annihilator slices and Fitting generators")
    p.add_argument("--input", required=True)
    p.add_argument("--dmax", type=int, required=True)
    p.add_argument("--fitting", action="store_true")
    p.set_defaults(func=cmd_ann)

    p = sub.add_parser("identities", parents=[common], help="enumerative and Chen-rank identities")
    p.add_argument("--gmax", type=int, required=True)
    p.set_defaults(func=cmd_identities)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    for name in ("qmax", "dmax"):
        if getattr(args, name, 0) < 0:
            print(f"resonance: --{name} must be non-negative", file=sys.stderr)
            return EXIT_USAGE
    command = "resonance " + shlex.join(argv)
    start = time.perf_counter()
    try:
        report, code = args.func(args, command)
    except GuardExceeded as exc:
        print(f"resonance: guard exceeded: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (CrossCheckFailure, NonIntegral) as exc:
        print(f"resonance: cross-check failure: {exc}", file=sys.stderr)
        return EXIT_CROSSCHECK
    except NonSeparableComponent as exc:
        print(f"resonance: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, InstanceFormatError, DependentVectors, OSError) as exc:
        print(f"resonance: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(report.render(args.fmt or "text"))
    if args.timing:
        print(f"elapsed: {time.perf_counter() - start:.3f} s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
