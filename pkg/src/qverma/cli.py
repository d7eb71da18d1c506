"""Command-line front end: compute objects, run verification suites, emit
Clebsch-Gordan tables.

Exit codes: 0 success, 1 a verified identity failed, 2 usage error.
Reports stream to stdout as one JSON record per line; progress and
diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import threading
from concurrent.futures import ThreadPoolExecutor

from .brackets import cg_table, holographic, lowest_weight_vector, qrc
from .errors import DomainError, IndexOutOfRange, ParseError, QVermaError
from .parsing import parse_plane, parse_tx, parse_unipoly
from .plane import QPlanePoly, TXPoly, UniPoly, plane_to_tx, tx_to_plane
from .qpolys import GridFunction, little_qjacobi, little_qjacobi_alt, qhahn
from .verify import SUITES, SessionConfig, run_suite


def _common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mode", choices=("symbolic", "point"), default="symbolic")
    p.add_argument("--seed", type=int, default=12345)
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--out", choices=("json", "latex", "csv"), default="json")
    p.add_argument("--max-n", type=int, default=8, dest="max_n")
    p.add_argument("--max-degree", type=int, default=10, dest="max_degree")
    p.add_argument("--N", type=int, default=8, dest="big_n")


def _build_parser() -> argparse.ArgumentParser:
    root = argparse.ArgumentParser(prog="qverma")
    sub = root.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("compute", help="compute one object and print it")
    _common_flags(pc)
    pc.add_argument(
        "object",
        choices=("lowest-weight", "jacobi", "qhahn", "psi", "qrc", "phi", "phi-inv"),
    )
    pc.add_argument("--n", type=int, default=0)
    pc.add_argument("--k", type=int, default=0)
    pc.add_argument("--form", choices=("sum", "rodrigues", "remark"), default="sum")
    pc.add_argument("--picture", choices=("plane", "tx"), default="plane")
    pc.add_argument("--f", type=str, default=None)
    pc.add_argument("--g", type=str, default=None)
    pc.add_argument("--expr", type=str, default=None)

    pv = sub.add_parser("verify", help="run identity suites")
    _common_flags(pv)
    pv.add_argument("--suite", type=str, default="all")
    pv.add_argument("--poison", action="store_true", help="negative control: corrupt one coefficient per suite")
    pv.add_argument("--numeric", type=str, default=None, metavar="q0,lam0,lam0p",
                    help="floats for the classical-limit smoke test")
    pv.add_argument("--jobs", type=int, default=4)

    pt = sub.add_parser("table", help="emit coefficient tables")
    _common_flags(pt)
    pt.add_argument("kind", choices=("cg",))

    return root


def _emit(obj, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(obj.to_json(), sort_keys=True)
    if fmt == "latex":
        return obj.latex() if hasattr(obj, "latex") else _latex_fallback(obj)
    return _csv_emit(obj)


def _latex_fallback(obj) -> str:
    if isinstance(obj, GridFunction):
        cells = " & ".join(v.latex() for v in obj.values)
        return f"\\begin{{pmatrix}} {cells} \\end{{pmatrix}}"
    raise TypeError(f"no latex form for {type(obj).__name__}")


def _csv_emit(obj) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    if isinstance(obj, UniPoly):
        w.writerow(["degree", "coefficient"])
        for n in sorted(obj.terms):
            w.writerow([n, str(obj.terms[n])])
    elif isinstance(obj, QPlanePoly):
        w.writerow(["x_degree", "y_degree", "coefficient"])
        for (k, l) in sorted(obj.terms):
            w.writerow([k, l, str(obj.terms[(k, l)])])
    elif isinstance(obj, TXPoly):
        w.writerow(["t_degree", "X_degree", "coefficient"])
        for (i, j) in sorted(obj.terms):
            w.writerow([i, j, str(obj.terms[(i, j)])])
    elif isinstance(obj, GridFunction):
        w.writerow(["l", "value"])
        for l, v in enumerate(obj.values):
            w.writerow([l, str(v)])
    else:
        raise TypeError(f"no csv form for {type(obj).__name__}")
    return buf.getvalue().rstrip("\n")


def _cmd_compute(args) -> int:
    try:
        if args.object == "lowest-weight":
            _check(args.n >= 0, "--n must be nonnegative")
            obj = lowest_weight_vector(args.n).poly
        elif args.object == "jacobi":
            _check(args.n >= 0, "--n must be nonnegative")
            if args.form == "sum":
                obj = little_qjacobi(args.n)
            else:
                obj = little_qjacobi_alt(args.n, args.form)
        elif args.object == "qhahn":
            obj = qhahn(args.k, args.big_n)
        elif args.object == "psi":
            _check(args.n >= 0 and args.k >= 0, "--n and --k must be nonnegative")
            obj = holographic(args.n, args.k, args.picture)
        elif args.object == "qrc":
            _check(args.f is not None and args.g is not None, "qrc needs --f and --g")
            _check(args.n >= 0, "--n must be nonnegative")
            f = parse_unipoly(args.f, allowed=("z", "x"))
            g = parse_unipoly(args.g, allowed=("z", "y"))
            obj = qrc(args.n, f, g)
        elif args.object == "phi":
            _check(args.expr is not None, "phi needs --expr")
            obj = tx_to_plane(parse_tx(args.expr))
        else:  # phi-inv
            _check(args.expr is not None, "phi-inv needs --expr")
            obj = plane_to_tx(parse_plane(args.expr))
    except _Usage as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ParseError, DomainError, IndexOutOfRange, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    print(_emit(obj, args.out))
    return 0


class _Usage(Exception):
    pass


def _check(cond: bool, msg: str) -> None:
    if not cond:
        raise _Usage(msg)


def _cmd_verify(args) -> int:
    numeric = (1.0001, 2.3, 3.7)
    if args.numeric:
        try:
            parts = [float(x) for x in args.numeric.split(",")]
            if len(parts) != 3:
                raise ValueError
            numeric = tuple(parts)
        except ValueError:
            print("error: --numeric expects q0,lam0,lam0p", file=sys.stderr)
            return 2
    cfg = SessionConfig(
        mode=args.mode,
        seed=args.seed,
        trials=args.trials,
        max_degree=args.max_degree,
        output=args.out,
        max_n=args.max_n,
        big_n=args.big_n,
        poison=args.poison,
        numeric=numeric,
    )
    try:
        cfg.validate()
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if args.suite == "all":
        names = list(SUITES)
    else:
        names = [s.strip() for s in args.suite.split(",") if s.strip()]
        unknown = [s for s in names if s not in SUITES]
        if unknown:
            print(f"error: unknown suite(s): {', '.join(unknown)}", file=sys.stderr)
            return 2

    lock = threading.Lock()
    all_ok = True
    first_fail = None

    def work(name: str):
        nonlocal all_ok, first_fail
        run = run_suite(name, cfg)
        with lock:
            for rep in run.reports:
                print(rep.to_json())
            status = "ok" if run.passed() else "FAIL"
            print(f"suite {name}: {status} ({len(run.reports)} checks)", file=sys.stderr)
            if not run.passed():
                all_ok = False
                if first_fail is None:
                    first_fail = next(r for r in run.reports if not r.ok())

    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        list(pool.map(work, names))

    if not all_ok:
        print("first counterexample:", file=sys.stderr)
        print(json.dumps(first_fail.to_dict(), sort_keys=True), file=sys.stderr)
        return 1
    return 0


def _cmd_table(args) -> int:
    if args.big_n < 1:
        print("error: --N must be at least 1", file=sys.stderr)
        return 2
    table = cg_table(args.big_n)
    if args.out == "json":
        print(json.dumps(table.to_json(), sort_keys=True))
    elif args.out == "latex":
        lines = [" & ".join(c.latex() for c in row) + " \\\\" for row in table.a]
        body = "\n".join(lines)
        print(f"\\begin{{pmatrix}}\n{body}\n\\end{{pmatrix}}")
    else:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["k"] + [f"x^{l} y^{args.big_n - l}" for l in range(args.big_n + 1)])
        for k, row in enumerate(table.a):
            w.writerow([k] + [str(c) for c in row])
        print(buf.getvalue().rstrip("\n"))
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code else 0
    try:
        if args.command == "compute":
            return _cmd_compute(args)
        if args.command == "verify":
            return _cmd_verify(args)
        return _cmd_table(args)
    except QVermaError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
