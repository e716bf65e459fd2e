"""Command-line front end: load algebras, run computations, emit JSON or
text reports.

Exit codes: 0 success, 2 input error, 3 budget exceeded, 4 internal
invariant violation.  JSON is the canonical machine output; the text
renderer is presentation only.
"""

from __future__ import annotations

import argparse
import json
import os
import signal
import sys

from . import algebra, generic, identities, series, vpart
from .errors import BudgetExceeded, InvalidParams, PilabError


def _emit(doc: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(doc, indent=1, sort_keys=True))
    else:
        _render_text(doc)


def _render_text(doc: dict, indent: int = 0) -> None:
    pad = " " * indent
    for key in sorted(doc):
        value = doc[key]
        if isinstance(value, dict):
            print(f"{pad}{key}:")
            _render_text(value, indent + 2)
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            print(f"{pad}{key}:")
            for item in value:
                _render_text(item, indent + 2)
                print(f"{pad}  -")
        else:
            print(f"{pad}{key}: {value}")


def cmd_inspect(args) -> dict:
    a = algebra.load_algebra(args.input)
    rep = a.structure
    return {
        "command": "inspect",
        "input": os.path.basename(args.input),
        "dim": a.dim,
        "has_unit": a.has_unit,
        "radical_dim": len(rep.radical_basis),
        "blocks": rep.block_sizes,
        "t": rep.t,
        "s": rep.s,
        "q": rep.q,
    }


def cmd_codim(args) -> dict:
    a = algebra.load_algebra(args.input)
    rows = []
    for n in range(1, args.n + 1):
        rows.append([n, identities.codimension(a, n, workers=args.workers)])
    return {"command": "codim", "input": os.path.basename(args.input),
            "rows": rows}


def cmd_cochar(args) -> dict:
    a = algebra.load_algebra(args.input)
    rows = []
    for n in range(1, args.n + 1):
        rows.append(identities.cocharacter(a, n, workers=args.workers).to_json_dict())
    return {"command": "cochar", "input": os.path.basename(args.input),
            "rows": rows}


def cmd_kemer(args) -> dict:
    a = algebra.load_algebra(args.input)
    report = identities.kemer_index_search(a, args.mu, budget=args.budget,
                                           seed=args.seed)
    doc = report.to_json_dict()
    doc["command"] = "kemer"
    doc["input"] = os.path.basename(args.input)
    return doc


def cmd_hilbert(args) -> dict:
    a = algebra.load_algebra(args.input)
    if args.trace_ring:
        h = generic.trace_ring_hilbert(a, args.m, args.d)
    else:
        h = generic.relfree_hilbert(a, args.m, args.d)
    doc = {"command": "hilbert", "input": os.path.basename(args.input),
           "trace_ring": bool(args.trace_ring), "m": args.m,
           "hilbert": h.to_json_dict()}
    if args.fit:
        exponents = [int(x) for x in args.fit.split(",") if x]
        fitted = series.fit(h.series_prefix(), exponents,
                            margin=min(5, max(1, len(h.series_prefix()) - 2)))
        if fitted is None:
            doc["fit"] = None
        else:
            doc["fit"] = fitted.to_json_dict()
            doc["fit"]["dimension"] = series.dimension(fitted)
    return doc


def _load_vectors(path) -> vpart.VectorList:
    with open(path) as fh:
        doc = json.load(fh)
    return vpart.VectorList.from_json_dict(doc)


def cmd_vpart(args) -> dict:
    s = _load_vectors(args.input)
    doc = {"command": f"vpart-{args.action}", "input": os.path.basename(args.input)}
    if args.action == "count":
        if not args.b:
            raise InvalidParams("vpart count requires -b")
        b = [int(x) for x in args.b.split(",")]
        doc["b"] = b
        doc["count"] = vpart.count_bruteforce(s, b)
    elif args.action == "delta":
        doc["delta"] = vpart.zonotope_volume(s)
        doc["dm_dimension"] = vpart.dm_dimension(s)
        doc["cocircuits"] = [list(y) for y in vpart.cocircuits(s)]
    elif args.action == "cells":
        doc["cells"] = vpart.big_cells(s).to_json_dict()
    elif args.action == "quasi":
        dec = vpart.big_cells(s)
        counter = vpart.PartitionCounter(s)
        cells_out = []
        for cell in dec.cells:
            qp = vpart.cell_quasipolynomial(s, cell, seed=args.seed,
                                            counter=counter)
            entry = qp.to_json_dict()
            if args.verify:
                points = vpart.deep_sample_points(s, cell, 25, seed=args.seed)
                agree = all(qp.value(b) == counter.count(b) for b in points)
                entry["verified"] = bool(agree and vpart.verify_dm_relations(qp))
            cells_out.append(entry)
        doc["cells"] = cells_out
        if args.verify:
            doc["verified"] = all(c["verified"] for c in cells_out)
    else:
        raise InvalidParams(f"unknown vpart action {args.action}")
    return doc


def cmd_dims(args) -> dict:
    doc = {"command": "dims"}
    if args.blocks:
        blocks = [int(x) for x in args.blocks.split(",") if x]
        t = sum(n * n for n in blocks)
        q = len(blocks)
        doc["blocks"] = blocks
        doc["t"] = t
        doc["q"] = q
        if args.m:
            doc["m"] = args.m
            doc["gk_dimension"] = generic.gk_dimension_formula(t, q, args.m)
            doc["repvariety_dimension"] = generic.repvariety_dimension(blocks, args.m)
        doc["colength_dimension"] = generic.colength_dimension(t, q)
    elif args.t is not None and args.qinv is not None:
        doc["t"] = args.t
        doc["q"] = args.qinv
        if args.m:
            doc["m"] = args.m
            doc["gk_dimension"] = generic.gk_dimension_formula(args.t, args.qinv, args.m)
        doc["colength_dimension"] = generic.colength_dimension(args.t, args.qinv)
    else:
        raise InvalidParams("dims requires --blocks or both -t and --qinv")
    return doc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pilab",
        description="exact workbench for polynomial identity algebras")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_input=True):
        if needs_input:
            p.add_argument("--input", required=True, help="input JSON file")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--budget", type=int, default=identities.DEFAULT_KEMER_BUDGET)
        p.add_argument("--format", choices=("json", "text"), default="json")

    p = sub.add_parser("inspect", help="structure report of an algebra")
    common(p)
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("codim", help="codimension table c_1..c_n")
    common(p)
    p.add_argument("-n", type=int, required=True)
    p.set_defaults(func=cmd_codim)

    p = sub.add_parser("cochar", help="cocharacter tables up to degree n")
    common(p)
    p.add_argument("-n", type=int, required=True)
    p.set_defaults(func=cmd_cochar)

    p = sub.add_parser("kemer", help="Kemer index search and certification")
    common(p)
    p.add_argument("--mu", type=int, default=2)
    p.set_defaults(func=cmd_kemer)

    p = sub.add_parser("hilbert", help="relatively free / trace ring Hilbert table")
    common(p)
    p.add_argument("-m", type=int, required=True, help="number of generic elements")
    p.add_argument("-d", type=int, required=True, help="maximum degree")
    p.add_argument("--trace-ring", action="store_true")
    p.add_argument("--fit", help="denominator exponents, e.g. 1,1,2")
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("vpart", help="vector partition function toolkit")
    p.add_argument("action", choices=("count", "cells", "delta", "quasi"))
    common(p)
    p.add_argument("-b", help="target vector for count, e.g. 2,1")
    p.add_argument("--verify", action="store_true",
                   help="re-check quasi-polynomials on fresh deep points")
    p.set_defaults(func=cmd_vpart)

    p = sub.add_parser("dims", help="closed-form dimension formulas")
    common(p, needs_input=False)
    p.add_argument("--blocks", help="semisimple block sizes, e.g. 2,1")
    p.add_argument("-m", type=int)
    p.add_argument("-t", type=int)
    p.add_argument("--qinv", type=int)
    p.set_defaults(func=cmd_dims)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    budget_ms = os.environ.get("PILAB_BUDGET_MS")
    if budget_ms:
        def _alarm(signum, frame):
            raise BudgetExceeded(f"global time budget {budget_ms} ms exceeded")

        signal.signal(signal.SIGALRM, _alarm)
        signal.setitimer(signal.ITIMER_REAL, max(int(budget_ms), 1) / 1000.0)
    try:
        doc = args.func(args)
    except PilabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    finally:
        if budget_ms:
            signal.setitimer(signal.ITIMER_REAL, 0.0)
    _emit(doc, args.format)
    if doc.get("command") == "kemer" and doc.get("fundamental") == "inconclusive":
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
