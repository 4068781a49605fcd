"""Command-line entry point: ``ahg build | invariants | verify | loop-check``.

Exit codes: 0 ok, 1 usage or input error, 2 budget exhausted (for
``verify`` only with ``--strict``), 3 mismatch against a closed form
(``verify --strict``).  Data goes to stdout or ``--out``; diagnostics go to
stderr.
"""

import argparse
import sys

from . import hypergraph, invariants, verify
from .algebra import (
    builtin_order5_loop,
    check_moufang_identities,
    dihedral_group,
    is_associative,
    moufang_extension,
    nonassociative_witness,
    validate_loop,
)
from .errors import DomainError, InfeasibleError, LoopValidationError

SELECTORS = {
    "alpha": "alpha",
    "tau": "tau",
    "rho": "rho",
    "nu": "nu",
    "chi": "chi",
    "chi-strong": "chi_strong",
    "matching-poly": "matching_poly",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _diag(msg):
    print(msg, file=sys.stderr)


def _write(data, out):
    if isinstance(data, str):
        data = data.encode()
    if out in (None, "-"):
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
        return
    try:
        with open(out, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise UsageError(f"cannot write {out}: {exc.strerror}") from exc


def _check_n(n):
    if n < 3:
        raise UsageError("--n must be >= 3 (D_n nonabelian requires n >= 3)")


def _budget(value):
    b = invariants.default_budget() if value is None else value
    if b < 1:
        raise UsageError("--budget must be >= 1")
    return b


def _hypergraph(n):
    group, _ = dihedral_group(n)
    return hypergraph.build(moufang_extension(group))


def cmd_build(args):
    _check_n(args.n)
    h = _hypergraph(args.n)
    _diag(f"M(D_{args.n},2): {h.vertex_count} vertices, {len(h.directed_edges)} directed edges, "
          f"{len(h.support_edges)} support edges")
    _write(hypergraph.export(h, args.format), args.out)
    return 0


def _parse_selection(text):
    names = [s.strip() for s in text.split(",") if s.strip()]
    unknown = [s for s in names if s not in SELECTORS]
    if unknown or not names:
        raise UsageError(f"unknown selector(s) {', '.join(unknown) or '(empty)'}; "
                         f"choose from {', '.join(SELECTORS)}")
    return [SELECTORS[s] for s in names]


def cmd_invariants(args):
    _check_n(args.n)
    selection = _parse_selection(args.select)
    budget = _budget(args.budget)
    h = _hypergraph(args.n)
    exhausted = False
    lines = []
    for name in selection:
        if name == "matching_poly":
            p = invariants.matching_polynomial(h, budget)
            exhausted |= p.budget_exhausted
            flag = "PARTIAL" if p.budget_exhausted else "exact"
            lines.append(f"matching-poly = {invariants.format_matching_polynomial(p)}")
            lines.append(f"  coefficients={list(p.coefficients)} nodes={p.nodes_explored} {flag}")
            continue
        try:
            res = invariants.SOLVERS[name](h, budget)
        except InfeasibleError as exc:
            raise UsageError(str(exc)) from exc
        exhausted |= res.budget_exhausted
        flag = "BUDGET EXHAUSTED (best found)" if res.budget_exhausted else "optimal"
        lines.append(f"{name} = {res.value}")
        lines.append(f"  witness={_witness_summary(h, res)} nodes={res.nodes_explored} {flag}")
    _write("\n".join(lines) + "\n", args.out)
    return 2 if exhausted else 0


def _witness_summary(h, res):
    if res.name in ("alpha", "tau"):
        return "{" + ", ".join(h.names[v] for v in res.witness) + "}"
    if res.name in ("rho", "nu"):
        return "[" + " ".join("{" + ",".join(str(v) for v in h.support_edges[k]) + "}" for k in res.witness) + "]"
    return "[" + ",".join(str(c) for c in res.witness) + "]"


def cmd_verify(args):
    if not 3 <= args.n_min <= args.n_max:
        raise UsageError("need 3 <= --n-min <= --n-max")
    budget = _budget(args.budget)
    reports = verify.run_range(args.n_min, args.n_max, budget, workers=args.workers)
    if args.format == "structured":
        text = verify.reports_to_json(reports)
    else:
        text = "\n".join(verify.format_report(r) for r in reports)
    _write(text, args.out)
    counts, flagged = verify.summarize(reports)
    _diag(f"verify n={args.n_min}..{args.n_max}: {counts[verify.MATCH]} match, "
          f"{counts[verify.MISMATCH]} mismatch, {counts[verify.INCONCLUSIVE]} inconclusive")
    for n, section, ident, st in flagged:
        _diag(f"  n={n} {section} {ident}: {st}")
    return verify.exit_code(reports, args.strict)


def read_table_file(path):
    """Parse ``order identity`` then one space-separated row per line."""
    try:
        with open(path) as fh:
            lines = [ln.split() for ln in fh if ln.strip()]
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    if not lines or len(lines[0]) != 2:
        raise UsageError(f"{path}: first line must be 'order identity'")
    try:
        order, identity = int(lines[0][0]), int(lines[0][1])
        rows = [[int(x) for x in ln] for ln in lines[1:]]
    except ValueError as exc:
        raise UsageError(f"{path}: non-integer entry ({exc})") from exc
    if len(rows) != order:
        raise UsageError(f"{path}: expected {order} rows, found {len(rows)}")
    for i, r in enumerate(rows):
        if len(r) != order:
            raise UsageError(f"{path}: row {i} has {len(r)} entries, expected {order}")
    return rows, identity


def cmd_loop_check(args):
    if args.source == "builtin-order5":
        loop = builtin_order5_loop()
    else:
        rows, identity = read_table_file(args.source)
        try:
            loop = validate_loop(rows, identity)
        except LoopValidationError as exc:
            raise UsageError(f"{args.source}: {exc}") from exc
    out = [
        f"order: {loop.order}",
        "latin_square: yes",
        f"identity: {loop.identity}",
    ]
    assoc = is_associative(loop)
    out.append(f"associative: {'yes' if assoc else 'no'}")
    mouf = check_moufang_identities(loop)
    if mouf.holds:
        out.append("moufang: yes")
    else:
        ident, x, y, z = mouf.counterexample
        out.append(f"moufang: no (identity {ident} fails at x={x}, y={y}, z={z})")
    if not assoc:
        x, y, z = nonassociative_witness(loop)
        t = loop.table
        out.append(f"witness: ({x},{y},{z})  ({x}*{y})*{z} = {t[t[x, y], z]} != "
                   f"{x}*({y}*{z}) = {t[x, t[y, z]]}")
    _write("\n".join(out) + "\n", args.out)
    return 0


def make_parser():
    p = _Parser(prog="ahg", description="Associating hypergraphs of the Moufang loops M(D_n,2).")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("build", help="export the associating hypergraph of M(D_n,2)")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--format", choices=hypergraph.EXPORT_FORMATS, default="edge-json")
    b.add_argument("--out", default="-")
    b.set_defaults(func=cmd_build)

    i = sub.add_parser("invariants", help="compute exact invariants with witnesses")
    i.add_argument("--n", type=int, required=True)
    i.add_argument("--select", default=",".join(SELECTORS),
                   help="comma-separated subset of: " + ", ".join(SELECTORS))
    i.add_argument("--budget", type=int, default=None, help="search nodes per solver (env AHG_BUDGET)")
    i.add_argument("--out", default="-")
    i.set_defaults(func=cmd_invariants)

    v = sub.add_parser("verify", help="reconcile enumeration against the closed forms")
    v.add_argument("--n-min", type=int, required=True)
    v.add_argument("--n-max", type=int, required=True)
    v.add_argument("--budget", type=int, default=None, help="search nodes per solver (env AHG_BUDGET)")
    v.add_argument("--strict", action="store_true", help="exit 3 on any mismatch, 2 on inconclusive rows")
    v.add_argument("--format", choices=("table", "structured"), default="table")
    v.add_argument("--out", default="-")
    v.add_argument("--workers", type=int, default=1, help="processes across n (output order is by n)")
    v.set_defaults(func=cmd_verify)

    lc = sub.add_parser("loop-check", help="Latin/identity/associativity/Moufang checks for a loop table")
    lc.add_argument("source", help="'builtin-order5' or a table file ('order identity' then rows)")
    lc.add_argument("--out", default="-")
    lc.set_defaults(func=cmd_loop_check)
    return p


def main(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DomainError) as exc:
        _diag(f"ahg: error: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
