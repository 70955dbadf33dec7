"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or guard error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from pathlib import Path

from . import choosability, circulations, polycoeff, transfer
from .checks import run_checks
from .graphs import (
    Graph,
    GraphError,
    make_complete,
    make_complete_bipartite,
    make_cycle,
    make_path,
    make_torus,
    parse_edge_list,
    parse_orientation,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


_NAMED = [
    (re.compile(r"^torus:(\d+)x(\d+)$"), lambda m: make_torus((int(m[1]), int(m[2])))),
    (re.compile(r"^cycle:(\d+)$"), lambda m: make_cycle(int(m[1]))),
    (re.compile(r"^path:(\d+)$"), lambda m: make_path(int(m[1]))),
    (re.compile(r"^K:(\d+)$"), lambda m: make_complete(int(m[1]))),
    (re.compile(r"^K:(\d+),(\d+)$"), lambda m: make_complete_bipartite(int(m[1]), int(m[2]))),
]


def load_graph(arg: str) -> Graph:
    """An edge-list file, ``-`` for stdin, or a name like ``cycle:5``, ``K:2,4``, ``torus:3x4``."""
    if arg == "-":
        return parse_edge_list(sys.stdin.read())
    path = Path(arg)
    if path.exists():
        return parse_edge_list(path.read_text())
    for pattern, build in _NAMED:
        m = pattern.match(arg)
        if m:
            return build(m)
    raise UsageError(f"no such graph file or graph name: {arg!r}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in re.split(r"[,\s]+", text.strip()) if x]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _guards(args) -> dict:
    return {
        "max_edges": args.max_edges,
        "max_universe": args.max_universe,
        "max_assignments": args.max_assignments,
        "max_layer": args.max_layer,
        "threads": args.threads,
    }


def cmd_at_torus(args) -> tuple:
    if args.m < 3 or args.n < 3:
        raise UsageError(f"torus sides must be >= 3, got ({args.m}, {args.n})")
    value, cert = transfer.at_torus(args.m, args.n, max_layer=args.max_layer, max_edges=args.max_edges)
    name = f"AT(T_{{{args.m},{args.n}}}) = {value}"
    if cert["trace"] is None:
        text = f"{name} (theorem-cited, not machine-verified: {cert['theorem']})"
    elif value == 3:
        tr = cert["trace"]["a"]
        text = (
            f"{name} (trace certificate, tr M^{cert['k']} = {tr}, sigma = {cert['sigma']}, "
            f"coefficient = {cert['sigma'] * tr})"
        )
        if "cited" in cert:
            text += f"; also {cert['cited']}"
    elif cert["witness"] is not None:
        text = f"{name} (trace = 0; capped-3 witness attached)"
    else:
        text = f"{name} (trace = 0; upper bound cited: {cert['cited']})"
    return {"at": value}, text, EXIT_OK, cert


def cmd_trace(args) -> tuple:
    if args.m < 3 or args.k < 1:
        raise UsageError("need --m >= 3 and --k >= 1")
    tm = transfer.build_matrix(make_cycle(args.m), "cycle_fast")
    tr = transfer.trace_power(tm, args.k)
    anti = transfer.is_antihermitian(tm)
    cert = {
        "m": args.m,
        "k": args.k,
        "dim": tm.dim,
        "trace": tr.to_json(),
        "antihermitian": anti,
        "sigma": transfer.sigma(args.m),
        "reality": tr.reality_class().value,
    }
    text = f"C_{args.m}: dim {tm.dim}, antihermitian {anti}, tr M^{args.k} = {tr} ({cert['reality']})"
    return {"trace": str(tr)}, text, EXIT_OK, cert


def cmd_coeff(args) -> tuple:
    g = load_graph(args.graph)
    t = _int_list(args.exponents)
    if len(t) != g.n:
        raise UsageError(f"need {g.n} exponents, got {len(t)}")
    coeff = polycoeff.coefficient_of(g, t, max_edges=args.max_edges)
    result = {"exponents": t, "coefficient": coeff}
    text = f"[{' '.join(map(str, t))}] f_G = {coeff}"
    if args.formula:
        sets = [list(range(ti + 1)) for ti in t]
        via = polycoeff.coefficient_formula(g, t, sets)
        result["coefficient_formula"] = via
        text += f"  (coefficient formula: {via})"
        if via != coeff:
            return result, text + "  MISMATCH", EXIT_FAIL, None
    return result, text, EXIT_OK, None


def cmd_expand(args) -> tuple:
    g = load_graph(args.graph)
    table = polycoeff.expand(g, args.cap, max_edges=args.max_edges)
    lines = polycoeff.table_to_jsonl(table)
    result = {"terms": len(table), "table": [json.loads(x) for x in lines.splitlines()]}
    text = lines.rstrip("\n") if table else "(no monomials within cap)"
    return result, text, EXIT_OK, None


def cmd_circ(args) -> tuple:
    path = Path(args.orientation)
    if not path.exists():
        raise UsageError(f"no such orientation file: {args.orientation!r}")
    d = parse_orientation(path.read_text())
    rep = circulations.verify_at_correspondence(d.graph, d)
    cert = rep.to_json()
    text = (
        f"indegrees {list(rep.indegrees)}: even {rep.counts.even}, odd {rep.counts.odd}, "
        f"sign {rep.sign}, coefficient {rep.coefficient}, correspondence {'ok' if rep.ok else 'FAILED'}"
    )
    return {"ok": rep.ok}, text, EXIT_OK if rep.ok else EXIT_FAIL, cert


def cmd_at(args) -> tuple:
    g = load_graph(args.graph)
    k, t, c = polycoeff.alon_tarsi_number(g, max_edges=args.max_edges)
    cert = {"at": k, "witness": {"exponents": list(t), "coefficient": c}}
    found = circulations.at_upper_bound_certificate(g, k, max_edges=args.max_edges)
    if found is not None:
        d, coeff, counts = found
        cert["orientation"] = {
            "arcs": [list(a) for a in d.arcs()],
            "indegrees": list(d.indegrees()),
            "sign": circulations.sign_of_orientation(d),
            "coefficient": coeff,
            **(counts.to_json() if counts else {}),
        }
    text = f"AT = {k} (witness exponents {list(t)}, coefficient {c})"
    return {"at": k}, text, EXIT_OK, cert


def cmd_choosable(args) -> tuple:
    g = load_graph(args.graph)
    universe = args.universe if args.universe is not None else args.k * g.n
    if universe > args.max_universe:
        raise UsageError(f"universe {universe} exceeds --max-universe {args.max_universe}")
    v = choosability.k_choosable(
        g, args.k, universe, method=args.method, max_assignments=args.max_assignments, threads=args.threads
    )
    text = f"{args.k}-{v.label} (universe {universe}, {v.assignments_checked} assignments checked)"
    if v.witness is not None:
        text += f"; bad lists {[list(x) for x in v.witness]}"
    return {"choosable": v.choosable}, text, EXIT_OK, v.to_json()


def cmd_selftest(args) -> tuple:
    results = run_checks(args.level)
    failed = [r for r in results if not r.passed]
    text = "\n".join(r.line() for r in results)
    if failed:
        text += f"\nfirst failure: {failed[0].name}: {'; '.join(failed[0].details) or 'time budget exceeded'}"
    payload = {"passed": not failed, "checks": [r.to_json() for r in results]}
    return payload, text, EXIT_FAIL if failed else EXIT_OK, None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON run report on stdout")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--max-edges", type=int, default=polycoeff.MAX_EXPAND_EDGES)
    common.add_argument("--max-universe", type=int, default=64)
    common.add_argument("--max-assignments", type=int, default=choosability.MAX_ASSIGNMENTS)
    common.add_argument("--max-layer", type=int, default=transfer.MAX_TRACE_LAYER)

    parser = argparse.ArgumentParser(prog="alontarsi", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("at-torus", parents=[common], help="Alon-Tarsi number of C_m box C_n")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_at_torus)

    p = sub.add_parser("trace", parents=[common], help="tr M^k for the layer C_m")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("coeff", parents=[common], help="one coefficient of f_G")
    p.add_argument("graph")
    p.add_argument("--exponents", required=True)
    p.add_argument("--formula", action="store_true", help="cross-check with the coefficient formula")
    p.set_defaults(func=cmd_coeff)

    p = sub.add_parser("expand", parents=[common], help="expand f_G, optionally under an exponent cap")
    p.add_argument("graph")
    p.add_argument("--cap", type=int, default=None)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("circ", parents=[common], help="circulation counts of an orientation file")
    p.add_argument("orientation")
    p.set_defaults(func=cmd_circ)

    p = sub.add_parser("at", parents=[common], help="Alon-Tarsi number of a small graph")
    p.add_argument("graph")
    p.set_defaults(func=cmd_at)

    p = sub.add_parser("choosable", parents=[common], help="exhaustive k-choosability")
    p.add_argument("graph")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--universe", type=int, default=None)
    p.add_argument("--method", choices=("reduced", "plain"), default="reduced")
    p.set_defaults(func=cmd_choosable)

    p = sub.add_parser("selftest", parents=[common], help="run the verification suite")
    p.add_argument("level", choices=("fast", "full"))
    p.set_defaults(func=cmd_selftest)
    return parser


def _parameters(args) -> dict:
    skip = {"func", "json", "command", "threads", "max_edges", "max_universe", "max_assignments", "max_layer"}
    return {k: v for k, v in vars(args).items() if k not in skip}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be >= 1")
    start = time.perf_counter()
    try:
        result, text, code, cert = args.func(args)
    except (UsageError, GraphError, polycoeff.SizeGuardError, polycoeff.SetSizeError, OSError) as exc:
        print(f"alontarsi {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as exc:
        print(f"alontarsi {args.command}: verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.json:
        report = {
            "command": args.command,
            "parameters": _parameters(args),
            "result": result,
            "certificate": cert,
            "guards": _guards(args),
            "wall_time": round(time.perf_counter() - start, 6),
        }
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
