"""Command-line front end: ``pnbundles <command> [options]``.

Every command prints an envelope ``{command, inputs, result, provenance}`` as
JSON (default) or as an aligned text table (``--format table`` or the
``PNB_FORMAT`` environment variable). Integers and rationals are written as
decimal strings (``"p/q"`` for rationals). Exit codes: 0 on success, 2 on a
parse or validation error (a JSON error object goes to stderr), 64 for an
unknown command.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import __version__
from .chowring import (
    ChernVector,
    chern_dual,
    chern_twist,
    euler_characteristic,
    p_functor,
    schwarzenberger,
)
from .classifier import admissible_spectra, filter_chern, verify_thm_main
from .cohomtab import (
    CohomologyTable,
    Spectrum,
    bott,
    h1_formulas,
    spectrum_h1,
    spectrum_h2,
)
from .exterior import (
    Undecided,
    decomposable_in_subspace,
    h0_matrix,
    horrocks_epi_check,
    horrocks_ker_gg_check,
    parse_multivector,
    sasakura_gg_check,
    sasakura_spec,
    skew_rank,
)
from .monadlab import ComplexExpr, bundle_class, expr_data, monad_cohomology_table, parse_bundle

COMMANDS = ("chern", "pfun", "chi", "congr", "bott", "spectrum", "h1", "monad", "omega", "classify", "verify")
EXIT_OK, EXIT_USAGE, EXIT_UNKNOWN = 0, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- serialization ----------------------------------------------------------------


def to_jsonable(x: Any) -> Any:
    """Integers and rationals become strings; booleans and None are kept."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, ChernVector):
        return {"n": str(x.n), "rank": str(x.rank), "c": [str(v) for v in x.c]}
    if isinstance(x, CohomologyTable):
        return {"l": [str(l) for l in x.window], "h": [[to_jsonable(v) for v in row] for row in x.rows()]}
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    return str(x)


def _cell(v: Any) -> str:
    if v is None:
        return "?"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def render_table(env: dict) -> str:
    """Aligned text rendering of an envelope's result."""
    rows: list[tuple[str, str]] = []
    grids: list[str] = []
    _flatten("", env["result"], rows, grids)
    out = [f"# {env['command']}"]
    if rows:
        w = max(len(k) for k, _ in rows)
        out += [f"{k.ljust(w)}  {v}" for k, v in rows]
    out += grids
    return "\n".join(out)


def _flatten(prefix: str, v: Any, rows: list, grids: list) -> None:
    if isinstance(v, dict) and set(v) == {"l", "h"}:
        grids.append(_grid(prefix, v))
    elif isinstance(v, dict):
        for k, x in v.items():
            _flatten(f"{prefix}.{k}" if prefix else k, x, rows, grids)
    elif isinstance(v, list) and any(isinstance(x, (dict, list)) for x in v):
        for i, x in enumerate(v):
            _flatten(f"{prefix}[{i}]", x, rows, grids)
    elif isinstance(v, list):
        rows.append((prefix, ",".join(_cell(x) for x in v)))
    else:
        rows.append((prefix, _cell(v)))


def _grid(name: str, t: dict) -> str:
    header = ["q\\l"] + t["l"]
    body = [[f"h{q}"] + [_cell(x) for x in row] for q, row in enumerate(t["h"])]
    allrows = [header] + body
    widths = [max(len(r[i]) for r in allrows) for i in range(len(header))]
    lines = [f"{name}:"] + ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in allrows]
    return "\n".join(lines)


# -- argument helpers --------------------------------------------------------------


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _window(text: str) -> tuple[int, int]:
    try:
        a, b = text.split(":")
        lo, hi = int(a), int(b)
    except ValueError:
        raise UsageError(f"window must look like lmin:lmax, got {text!r}") from None
    if lo > hi:
        raise UsageError(f"empty window {text!r}")
    return lo, hi


def _class_from_args(args) -> ChernVector:
    if args.expr is not None:
        return bundle_class(parse_bundle(args.expr), args.n)
    if args.c is None:
        raise UsageError("give either --expr or --c (with --rank)")
    return ChernVector.of(args.n, args.rank, _ints(args.c))


def _add_class_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--expr", help="bundle expression, e.g. '4O(1)+T(-1)'")
    p.add_argument("--c", help="Chern classes c1,c2,... (use --c=-1,2 for a leading minus)")
    p.add_argument("--rank", type=int, default=0)


# -- commands ----------------------------------------------------------------------


def cmd_chern(args):
    c = _class_from_args(args)
    if args.dual:
        c = chern_dual(c)
    if args.twist:
        c = chern_twist(c, args.twist)
    return {"rank": c.rank, "c": list(c.c)}, ["whitney-sum", "twist-formula"]


def cmd_pfun(args):
    c = _class_from_args(args)
    p = p_functor(c, args.h0)
    return {"rank": p.rank, "c": list(p.c)}, ["p-functor"]


def cmd_chi(args):
    c = _class_from_args(args)
    lo, hi = _window(args.window or "0:0")
    return {"chi": {str(l): euler_characteristic(c, l) for l in range(lo, hi + 1)}}, ["hirzebruch-riemann-roch"]


def cmd_congr(args):
    c = _ints(args.c)
    if len(c) != 4:
        raise ValueError(f"need c1,c2,c3,c4, got {len(c)} values")
    return {"holds": schwarzenberger(c)}, ["schwarzenberger-congruence", "parity"]


def cmd_bott(args):
    lo, hi = _window(args.window or "-3:3")
    t = CohomologyTable.build(args.n, lo, hi, lambda l: bott(args.n, args.p, l))
    return {"table": t}, ["bott-formula"]


def cmd_spectrum(args):
    if args.action == "enum":
        if args.c2g is None or args.c3g is None:
            raise UsageError("spectrum enum needs --c2g and --c3g")
        found = admissible_spectra(args.c2g, args.c3g, args.nonpositive)
        return {"spectra": [list(s.k) for s, _ in found]}, list(found[0][1]) if found else ["spectrum-rules"]
    if args.k is None or args.l is None:
        raise UsageError("h1/h2 need --k and --l")
    s = Spectrum(tuple(_ints(args.k)))
    fn = spectrum_h1 if args.action == "h1" else spectrum_h2
    return {args.action: fn(s, args.l)}, ["spectrum-cohomology"]


def cmd_h1(args):
    v = h1_formulas(args.c2, args.c3, args.h0fm1)
    return {"h1_fm2": v.h1_fm2, "h1_fm1": v.h1_fm1, "consistent": v.consistent}, ["riemann-roch-h1"]


def cmd_monad(args):
    terms = {}
    for spec in args.term:
        deg, sep, expr = spec.partition("=")
        if not sep:
            raise UsageError(f"term must look like DEG=EXPR, got {spec!r}")
        try:
            terms[int(deg)] = parse_bundle(expr)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    cx = ComplexExpr(terms, args.kind, args.twist)
    lo, hi = _window(args.window or "-3:3")
    data = expr_data(cx, args.n, lo, hi)
    table = monad_cohomology_table(cx, args.n, lo, hi)
    chi = {str(l): euler_characteristic(data.chern, l) for l in range(lo, hi + 1)}
    return {"rank": data.rank, "c": list(data.chern.c), "chi": chi, "table": table}, [
        "whitney-sum",
        "bott-formula",
        "long-exact-sequences",
    ]


def cmd_omega(args):
    if args.action == "decomposable":
        if not args.basis:
            raise UsageError("decomposable needs at least one --basis")
        basis = [parse_multivector(b, args.dim, 2) for b in args.basis]
        try:
            w = decomposable_in_subspace(basis)
        except Undecided:
            return {"decomposable": None, "decided": False}, ["pencil-discriminant", "heuristic-search"]
        if w is None:
            return {"decomposable": False, "decided": True}, ["pencil-discriminant"]
        return {
            "decomposable": True,
            "decided": True,
            "a": str(w.a),
            "b": str(w.b),
            "minpoly": list(w.minpoly),
        }, ["pencil-discriminant"]
    if args.omega is None:
        raise UsageError(f"omega {args.action} needs --omega")
    omega = parse_multivector(args.omega, args.dim, 2)
    if args.action == "rank":
        return {"rank": skew_rank(omega)}, ["skew-rank"]
    if args.action == "horrocks":
        return {"epi": horrocks_epi_check(omega, args.dim)}, ["skew-rank"]
    if args.action == "kergg":
        return {"gg": horrocks_ker_gg_check(omega, args.dim)}, ["skew-rank"]
    if args.v is None:
        raise UsageError("omega sasakura needs --v")
    v = parse_multivector(args.v, args.dim, 1)
    m = h0_matrix(sasakura_spec(omega, v))
    return {"gg": sasakura_gg_check(omega, v, args.dim), "h0_rank": m.rank, "shape": list(m.shape)}, [
        "contraction-h0-matrix"
    ]


def cmd_classify(args):
    records = filter_chern(args.n, range(0, 13), args.disable or ())
    trace: list[str] = []
    for r in records:
        trace += [t for t in r.rule_trace if t not in trace]
    result = {
        "triples": [list(r.triple) for r in records],
        "records": [
            {
                "c": list(r.chern.c),
                "rank": r.rank,
                "construction": r.construction,
                "rule_trace": list(r.rule_trace),
            }
            for r in records
        ],
    }
    return result, trace


def cmd_verify(args):
    rep = verify_thm_main()
    return rep.as_dict(), ["chern-calculus", "p-functor", "schwarzenberger-congruence", "rank-formula"]


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default=None)
    common.add_argument("--n", type=int, default=4, help="ambient dimension of P^n")
    common.add_argument("--window", help="twist window lmin:lmax")

    parser = _Parser(prog="pnbundles", description="Exact computations for bundles on P^n.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("chern", parents=[common], help="rank and Chern classes")
    _add_class_args(p)
    p.add_argument("--twist", type=int, default=0)
    p.add_argument("--dual", action="store_true")

    p = sub.add_parser("pfun", parents=[common], help="Chern classes of P(E)")
    _add_class_args(p)
    p.add_argument("--h0", type=int)

    p = sub.add_parser("chi", parents=[common], help="Euler characteristics chi(E(l))")
    _add_class_args(p)

    p = sub.add_parser("congr", parents=[common], help="Schwarzenberger congruence on P^4")
    p.add_argument("--c", required=True, help="c1,c2,c3,c4")

    p = sub.add_parser("bott", parents=[common], help="cohomology of Omega^p(l)")
    p.add_argument("--p", type=int, required=True)

    p = sub.add_parser("spectrum", parents=[common], help="spectra of rank 3 bundles on P^3")
    p.add_argument("action", choices=("enum", "h1", "h2"))
    p.add_argument("--c2g", type=int)
    p.add_argument("--c3g", type=int)
    p.add_argument("--nonpositive", action="store_true")
    p.add_argument("--k", help="spectrum k1,...,km")
    p.add_argument("--l", type=int)

    p = sub.add_parser("h1", parents=[common], help="h^1(F(-2)), h^1(F(-1)) on P^3")
    p.add_argument("--c2", type=int, required=True)
    p.add_argument("--c3", type=int, required=True)
    p.add_argument("--h0fm1", type=int, required=True, help="h^0(F(-1))")

    p = sub.add_parser("monad", parents=[common], help="cohomology bundle of a display")
    p.add_argument("--term", action="append", required=True, help="DEG=EXPR, e.g. --term=-1=O(-1)")
    p.add_argument("--kind", choices=("resolution", "monad", "short_exact"), default="monad")
    p.add_argument("--twist", type=int, default=0)

    p = sub.add_parser("omega", parents=[common], help="exterior algebra criteria")
    p.add_argument("action", choices=("horrocks", "sasakura", "rank", "decomposable", "kergg"))
    p.add_argument("--omega", help="2-vector, e.g. 'e0^e1+e2^e3'")
    p.add_argument("--v", help="vector for sasakura, e.g. 'e4'")
    p.add_argument("--basis", action="append", help="basis 2-vector of a subspace (repeatable)")
    p.add_argument("--dim", type=int, default=6, help="dim V")

    p = sub.add_parser("classify", parents=[common], help="admissible Chern data on P^4")
    p.add_argument("--disable", action="append", help="skip a named filter (repeatable)")

    sub.add_parser("verify", parents=[common], help="regression check of the classification list")
    return parser


_DISPATCH = {
    "chern": cmd_chern,
    "pfun": cmd_pfun,
    "chi": cmd_chi,
    "congr": cmd_congr,
    "bott": cmd_bott,
    "spectrum": cmd_spectrum,
    "h1": cmd_h1,
    "monad": cmd_monad,
    "omega": cmd_omega,
    "classify": cmd_classify,
    "verify": cmd_verify,
}


def _inputs(args) -> dict:
    skip = {"command", "format"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


def _fail(command: str | None, kind: str, message: str, code: int) -> int:
    err = {"error": {"type": kind, "message": message, "command": command, "exit_code": code}}
    print(json.dumps(err), file=sys.stderr)
    return code


def run(argv: Sequence[str] | None = None) -> tuple[int, dict | None, str]:
    """Parse and execute; returns (exit code, envelope or None, output format)."""
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and not argv[0].startswith("-") and argv[0] not in COMMANDS:
        msg = f"unknown command {argv[0]!r}; choose from {', '.join(COMMANDS)}"
        return _fail(argv[0], "UnknownCommand", msg, EXIT_UNKNOWN), None, "json"
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        return _fail(argv[0] if argv else None, "UsageError", str(exc), EXIT_USAGE), None, "json"
    if args.command is None:
        return _fail(None, "UsageError", "a command is required", EXIT_USAGE), None, "json"
    fmt = args.format or os.environ.get("PNB_FORMAT", "json")
    if fmt not in ("json", "table"):
        return _fail(args.command, "UsageError", f"unknown format {fmt!r}", EXIT_USAGE), None, "json"
    try:
        result, provenance = _DISPATCH[args.command](args)
    except UsageError as exc:
        return _fail(args.command, "UsageError", str(exc), EXIT_USAGE), None, fmt
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        return _fail(args.command, type(exc).__name__, str(exc), EXIT_USAGE), None, fmt
    env = {
        "command": args.command,
        "inputs": to_jsonable(_inputs(args)),
        "result": to_jsonable(result),
        "provenance": list(provenance),
    }
    return EXIT_OK, env, fmt


def main(argv: Sequence[str] | None = None) -> int:
    try:
        code, env, fmt = run(argv)
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    if env is not None:
        print(render_table(env) if fmt == "table" else json.dumps(env, indent=2))
    return code


if __name__ == "__main__":
    sys.exit(main())
