"""Command line entry point: pgodd <command> [options].

Commands: table, bounds, construct, decomp, search, verify, plane dump.
Tables and search results go to stdout (or --out) as CSV or JSON; every
JSON envelope carries a run manifest with enough to rerun it.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import platform
import re
import sys
import time
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from . import __version__, bounds, constructions as cons, decomp, search
from .gf import FieldError, FieldSpec, build_field, parse_field_spec
from .plane import build_plane, get_plane
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class RunManifest:
    command: list[str]
    field: Optional[dict]
    seed: int
    versions: dict
    timing: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)


def _versions() -> dict:
    import numba

    return {"pgodd": __version__, "python": platform.python_version(), "numpy": np.__version__,
            "numba": numba.__version__}


def parse_duration(text: str) -> float:
    """'90', '90s', '10m', '2h' -> seconds."""
    m = re.fullmatch(r"\s*(\d+(?:\.\d+)?)\s*([smh]?)\s*", str(text))
    if not m:
        raise argparse.ArgumentTypeError(f"bad duration {text!r}")
    return float(m.group(1)) * {"": 1, "s": 1, "m": 60, "h": 3600}[m.group(2)]


def _emit(args, payload_text: str, result_json, manifest: RunManifest) -> None:
    digest = hashlib.sha256(payload_text.encode()).hexdigest()
    manifest.outputs["sha256"] = digest
    if args.format == "json":
        text = json.dumps({"manifest": asdict(manifest), "result": result_json}, indent=2, default=str) + "\n"
    else:
        text = payload_text
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        if args.format != "json":
            with open(args.out + ".manifest.json", "w") as fh:
                json.dump(asdict(manifest), fh, indent=2, default=str)
    else:
        sys.stdout.write(text)


def _manifest(args, argv) -> RunManifest:
    fld = None
    if getattr(args, "q", None):
        try:
            fld = build_field(args.q).describe()
        except FieldError:
            fld = None
    return RunManifest(list(argv), fld, args.seed, _versions())


# -- commands ---------------------------------------------------------------------------

def _default_method(q: int) -> str:
    N = q * q + q + 1
    if N <= search.EXHAUSTIVE_MAX_N:
        return "exhaustive"
    return "dual-sweep"


def cmd_table(args, man: RunManifest) -> int:
    q = args.q
    method = args.method or _default_method(q)
    t0 = time.perf_counter()
    sources = []
    tables = []
    if method == "exhaustive":
        tables.append(search.exhaustive_f(q, args.workers))
    elif method == "dual-sweep":
        s_max = args.s_max if args.s_max is not None else (12 if q <= 7 else 8)
        tables.append(search.dual_sweep(q, s_max, args.budget))
    if method == "random" or (method == "dual-sweep" and q >= 9):
        spent = time.perf_counter() - t0
        left = max(0.0, args.budget - spent)
        theory = bounds.assemble(q)
        todo = [r for r in range(1, q * q + q + 1) if r <= (q * q + q + 1) // 2 and not theory[r].exact]
        if todo and left > 0:
            tables.append(search.random_table(q, args.seed, left / len(todo), todo))
    plane = get_plane(q)
    for t in tables:
        t.check(plane)
        sources.extend(t.as_sources())
    recs = bounds.assemble(q, sources)
    man.timing["table"] = round(time.perf_counter() - t0, 3)
    man.outputs["method"] = method
    csv = bounds.records_to_csv(recs)
    _emit(args, csv, [r.as_row() for r in recs], man)
    return EXIT_OK


def cmd_bounds(args, man: RunManifest) -> int:
    recs = bounds.assemble(args.q)
    if args.r is not None:
        recs = [recs[args.r]]
    _emit(args, bounds.records_to_csv(recs), [r.as_row() for r in recs], man)
    return EXIT_OK


def cmd_construct(args, man: RunManifest) -> int:
    plane = get_plane(args.q)
    if args.name not in cons.NAMED:
        print(f"unknown construction {args.name!r}; choose from {sorted(cons.NAMED)}", file=sys.stderr)
        return EXIT_USAGE
    try:
        res = cons.NAMED[args.name](plane, args)
    except (cons.ConstructionError, TypeError) as exc:
        print(f"construct: {exc}", file=sys.stderr)
        return EXIT_FAIL
    kind = "lines" if res.set_kind == "lines" else "points"
    ok = search.verify_witness(plane, kind, res.set, res.size, res.achieved)
    out = res.to_json()
    out["verified"] = ok
    _emit(args, json.dumps(out) + "\n", out, man)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_decomp(args, man: RunManifest) -> int:
    try:
        d = decomp.build_simple(args.r, args.m, min_big=args.min_big)
    except decomp.DecompositionError as exc:
        print(f"decomp: {exc}", file=sys.stderr)
        return EXIT_FAIL
    out = {"r": d.r, "M": d.m_value(), "big": list(map(int, d.big)),
           "triangles": d.triangles.tolist(), "edges": d.n_edges}
    _emit(args, json.dumps(out) + "\n", out, man)
    return EXIT_OK


def cmd_search(args, man: RunManifest) -> int:
    q = args.q
    t0 = time.perf_counter()
    if args.r is not None:
        res = search.random_witness(q, args.r, args.target, args.seed, args.budget)
        out = res.to_json()
        man.timing["search"] = round(time.perf_counter() - t0, 3)
        _emit(args, json.dumps(out) + "\n", out, man)
        return EXIT_OK
    cfg = search.SearchConfig(q, args.method, None, args.s_max if args.s_max is not None else 8,
                              args.seed, args.budget, args.workers)
    table = search.run(cfg)
    try:
        table.check()
    except search.SearchError as exc:
        print(f"search: {exc}", file=sys.stderr)
        return EXIT_FAIL
    man.timing["search"] = round(time.perf_counter() - t0, 3)
    man.outputs["meta"] = table.meta
    _emit(args, table.to_csv(), table.to_json(), man)
    return EXIT_OK


def cmd_verify(args, man: RunManifest) -> int:
    try:
        rows = run_suite(args.suite, args.q, args.seed, args.cases)
    except KeyError as exc:
        print(f"verify: {exc.args[0]}", file=sys.stderr)
        return EXIT_USAGE
    lines = []
    for r in rows:
        status = "PASS" if r.passed else "FAIL"
        line = f"{status} {r.suite}: {r.name} (q={r.q}, cases={r.cases})"
        if not r.passed:
            line += f" counterexample={json.dumps(r.counterexample)}"
        lines.append(line)
    _emit(args, "\n".join(lines) + "\n", [r.to_json() for r in rows], man)
    return EXIT_OK if all(r.passed for r in rows) else EXIT_FAIL


def cmd_plane(args, man: RunManifest) -> int:
    if args.action != "dump":
        return EXIT_USAGE
    if args.field:
        plane = build_plane(build_field(parse_field_spec(args.field)))
    else:
        plane = get_plane(args.q)
    rows = ["index,x,y,z,line_points"]
    for i in range(plane.N):
        x, y, z = plane.point(i)
        rows.append(f"{i},{x},{y},{z},{' '.join(map(str, plane.line_points[i]))}")
    out = {**plane.describe(), "points": plane.coords.tolist(), "line_points": plane.line_points.tolist()}
    _emit(args, "\n".join(rows) + "\n", out, man)
    return EXIT_OK


# -- parser ------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, default=3, help="field order (odd prime power)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--budget", type=parse_duration, default=60.0, help="e.g. 60s, 10m, 2h")
    common.add_argument("--format", "--emit", dest="format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", default=None, help="write here instead of stdout")

    ap = argparse.ArgumentParser(prog="pgodd", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", parents=[common], help="assemble the f(r) table")
    p.add_argument("--method", choices=("theory",) + search.METHODS, default=None)
    p.add_argument("--s-max", type=int, default=None)
    p.set_defaults(fn=cmd_table)

    p = sub.add_parser("bounds", parents=[common], help="closed-form intervals")
    p.add_argument("--r", type=int, default=None)
    p.set_defaults(fn=cmd_bounds)

    p = sub.add_parser("construct", parents=[common], help="replay a construction")
    p.add_argument("--name", required=True)
    for flag in ("k", "j", "r", "w"):
        p.add_argument(f"--{flag}", type=int, default=0)
    p.set_defaults(fn=cmd_construct)

    p = sub.add_parser("decomp", parents=[common], help="simple decomposition of K_r with M(Pi) = m")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--min-big", type=int, default=None)
    p.set_defaults(fn=cmd_decomp)

    p = sub.add_parser("search", parents=[common], help="run a search engine")
    p.add_argument("--method", choices=search.METHODS, default="dual-sweep")
    p.add_argument("--s-max", type=int, default=None)
    p.add_argument("--r", type=int, default=None, help="single r (random witness)")
    p.add_argument("--target", type=int, default=None)
    p.set_defaults(fn=cmd_search)

    p = sub.add_parser("verify", parents=[common], help="property suites")
    p.add_argument("--suite", required=True, help=f"one of {', '.join(SUITES)} or all")
    p.add_argument("--cases", type=int, default=1000)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("plane", parents=[common], help="incidence data")
    p.add_argument("action", choices=("dump",))
    p.add_argument("--field", default=None, help="e.g. 'q=9' or 'p=3,h=2,modulus=[2,1,1]'")
    p.set_defaults(fn=cmd_plane)
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == "table" and args.method == "theory":
        try:
            FieldSpec.from_q(args.q).validate()
        except FieldError as exc:
            print(f"table: {exc}", file=sys.stderr)
            return EXIT_USAGE
        args.method = None
        man = _manifest(args, argv)
        recs = bounds.assemble(args.q)
        _emit(args, bounds.records_to_csv(recs), [r.as_row() for r in recs], man)
        return EXIT_OK
    try:
        if not getattr(args, "field", None):
            FieldSpec.from_q(args.q).validate()
        man = _manifest(args, argv)
        return args.fn(args, man)
    except (FieldError, ValueError) as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except search.SearchError as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
