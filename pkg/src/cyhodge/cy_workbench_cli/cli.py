"""``cyhodge`` command-line interface.

Exit codes: 0 all checks passed, 1 internal inconsistency or failed check,
2 partial result (ambiguous or undetermined), 3 invalid input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from ..monodromy_engine import NotNilpotentError, check_axioms, weight_filtration
from ..theta_ops import OperatorSyntaxError, SeriesError, format_rational, parse_operator, series_solution
from . import report as report_io
from . import tables as tables_mod
from .analysis import PRECISION_ENV, analyze, default_precision
from .catalog import CLOSED_FORMS, CatalogError, closed_form_terms, default_catalog

EXIT_OK, EXIT_FAIL, EXIT_PARTIAL, EXIT_INPUT = 0, 1, 2, 3


class InputError(Exception):
    pass


def _operator_and_entry(target: str):
    cat = default_catalog()
    if target in cat:
        entry = cat.get(target)
        return entry.operator, entry
    try:
        return parse_operator(target), None
    except OperatorSyntaxError as exc:
        raise InputError(f"{target!r} is neither a catalog id nor a valid operator: {exc}") from exc


def _ab(text: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError("expected 'a,b' with integers") from exc
    return a, b


def cmd_analyze(args) -> int:
    op, entry = _operator_and_entry(args.target)
    e = args.pullback if args.pullback is not None else (entry.pullback if entry else 1)
    if e < 1:
        raise InputError("pullback exponent must be at least 1")
    mode = "numeric" if args.numeric else "symbolic" if args.symbolic else "auto"
    rep = analyze(op, e, entry_id=entry.id if entry else None, mode=mode, dps=args.precision,
                  tol=args.tol, verify=args.verify, asserted_ab=args.ab)
    print(report_io.dumps(rep) if args.json else report_io.render_text(rep))
    return rep.exit_code


def cmd_tables(args) -> int:
    ts = tables_mod.build_tables()
    if args.json:
        rendered = tables_mod.render_json(ts)
        name = tables_mod.GOLDEN_JSON
    else:
        rendered = tables_mod.render_text(ts)
        name = tables_mod.GOLDEN_TEXT
    if args.update_golden:
        for p in tables_mod.write_golden(ts, args.golden_dir or tables_mod.default_golden_dir()):
            print(f"wrote {p}", file=sys.stderr)
    diff = tables_mod.golden_diff(rendered, name, args.golden_dir)
    if args.json:
        doc = json.loads(rendered)
        doc["golden"] = {"file": name, "match": not diff, "diff": diff}
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        sys.stdout.write(rendered)
        sys.stdout.write(f"golden {name}: {'match' if not diff else 'DIFFERS'}\n")
        for line in diff:
            sys.stdout.write(line + "\n")
    return EXIT_FAIL if (ts.exit_code or diff) else EXIT_OK


def cmd_series(args) -> int:
    op, entry = _operator_and_entry(args.target)
    if args.terms < 0:
        raise InputError("--terms must be non-negative")
    try:
        sol = series_solution(op, args.terms)
    except SeriesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    coeffs = list(sol.coefficients)
    check = None
    if entry is not None and entry.closed_form in CLOSED_FORMS:
        check = coeffs == closed_form_terms(entry.closed_form, args.terms)
    if args.json:
        doc = {"schema": "cyhodge/1", "kind": "series", "operator": str(op),
               "coefficients": [format_rational(c) for c in coeffs]}
        if check is not None:
            doc["closed_form"] = {"name": entry.closed_form, "match": check}
        print(json.dumps(doc, indent=2))
    else:
        for n, c in enumerate(coeffs):
            print(f"A_{n} = {format_rational(c)}")
        if check is not None:
            print(f"closed form {entry.closed_form}: {'match' if check else 'MISMATCH'}")
    return EXIT_FAIL if check is False else EXIT_OK


def read_matrix(path: str) -> list[list[Fraction]]:
    with open(path, encoding="utf-8") as fh:
        tokens = fh.read().split()
    if not tokens:
        raise InputError("empty matrix file")
    try:
        n = int(tokens[0])
        vals = [Fraction(t) for t in tokens[1:]]
    except ValueError as exc:
        raise InputError(f"bad matrix entry: {exc}") from exc
    if n < 0 or len(vals) != n * n:
        raise InputError(f"expected {n * n} entries after the size line, found {len(vals)}")
    return [vals[i * n:(i + 1) * n] for i in range(n)]


def cmd_weightfilt(args) -> int:
    N = read_matrix(args.matrix_file)
    try:
        W = weight_filtration(N)
    except NotNilpotentError as exc:
        raise InputError(str(exc)) from exc
    bad = check_axioms(N, W)
    if args.json:
        doc = {"schema": "cyhodge/1", "kind": "weight-filtration", "n": W.n, "m": W.m,
               "dims": {str(k): d for k, d in W.dims().items()},
               "bases": {str(k): [[format_rational(x) for x in v] for v in W.W(k)] for k in W.dims()},
               "violations": bad}
        print(json.dumps(doc, indent=2))
    else:
        print(f"n = {W.n}, N^{W.m + 1} = 0" + (f", N^{W.m} != 0" if W.m > 0 else ""))
        print("dims (W_-m .. W_m): " + " ".join(str(d) for d in W.dim_list()))
        for k in range(-W.m, W.m + 1):
            vecs = ["(" + ", ".join(format_rational(x) for x in v) + ")" for v in W.W(k)]
            print(f"W_{k}: dim {len(vecs)}  basis {' '.join(vecs) if vecs else '-'}")
        print("axioms: " + ("ok" if not bad else "; ".join(bad)))
    return EXIT_FAIL if bad else EXIT_OK


def cmd_catalog(args) -> int:
    cat = default_catalog()
    if args.action == "list":
        for e in cat:
            t = f"table {e.table}" if e.table else "-"
            print(f"{e.id:<26} {e.model_label:<24} e={e.pullback:<3} {t:<8} {e.provenance}")
        return EXIT_OK
    if not args.id:
        raise InputError("catalog show needs an id")
    try:
        entry = cat.get(args.id)
    except CatalogError as exc:
        raise InputError(str(exc.args[0])) from exc
    print(json.dumps(entry.to_json(), indent=2, ensure_ascii=False))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cyhodge", description="Hodge numbers of Calabi-Yau type local systems.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="classify singular points and compute Hodge numbers")
    a.add_argument("target", help="catalog id or operator text such as 'T^4 - 5*z*(5*T+1)*...'")
    a.add_argument("--pullback", type=int, default=None, metavar="E")
    g = a.add_mutually_exclusive_group()
    g.add_argument("--numeric", action="store_true", help="continue the pulled-back operator numerically")
    g.add_argument("--symbolic", action="store_true", help="no numeric continuation")
    a.add_argument("--json", action="store_true")
    a.add_argument("--precision", type=int, default=None, metavar="DIGITS",
                   help=f"working precision (default ${PRECISION_ENV} or 50)")
    a.add_argument("--tol", default="1e-30", metavar="X")
    a.add_argument("--ab", type=_ab, default=None, metavar="a,b", help="asserted Hodge degrees")
    a.add_argument("--verify", action="store_true", help="also check symbolic data numerically")
    a.set_defaults(func=cmd_analyze)

    t = sub.add_parser("tables", help="regenerate the pullback tables and diff against golden files")
    t.add_argument("--json", action="store_true")
    t.add_argument("--golden-dir", default=None)
    t.add_argument("--update-golden", action="store_true")
    t.set_defaults(func=cmd_tables)

    s = sub.add_parser("series", help="holomorphic series solution at 0")
    s.add_argument("target")
    s.add_argument("--terms", type=int, required=True, metavar="M")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_series)

    w = sub.add_parser("weightfilt", help="weight filtration of a nilpotent matrix")
    w.add_argument("matrix_file")
    w.add_argument("--json", action="store_true")
    w.set_defaults(func=cmd_weightfilt)

    c = sub.add_parser("catalog", help="list or show catalog entries")
    c.add_argument("action", choices=("list", "show"))
    c.add_argument("id", nargs="?")
    c.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if getattr(args, "precision", None) is None and args.command == "analyze":
            args.precision = default_precision()
        return args.func(args)
    except (InputError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
