"""Command-line front end.

Usage examples
--------------
  dtwall series --rank 2 --order 6 --method closed --format csv
  dtwall series --rank 1 --order 4 --method wallcross --jobs 4
  dtwall omega --nmax 6 --chi 1
  dtwall verify --rmax 2 --nmax 6
  dtwall coeff B1,W2,B1,W1
  dtwall cache clear --cache-dir /tmp/dtwall-cache

Exit status: 0 on success, 1 when a verification check fails, 2 on usage
or resource-bound errors.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .combinatorics import BACKEND, VertexConfig, s_coeff, tree_sum, u_coeff, u_pieces
from .invariants import (
    CLOSED_ORDER_LIMIT,
    WALLCROSS_LIMITS,
    InvariantKind,
    ResourceBoundError,
    cached_wallcross,
    closed_dt2_series,
    default_jobs,
    dt1_series,
    is_integer_valued,
    omega2_table,
    verify,
)
from .output import OutputDocument, ResultCache, make_meta
from .series import ChiPoly, format_poly, format_rational

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _specialise(p: ChiPoly, chi) -> ChiPoly:
    return p if chi is None else ChiPoly.const(p(chi))


def cmd_series(rank: int, order: int, method: str, chi=None, jobs: int = 1,
               cache: ResultCache | None = None) -> OutputDocument:
    if rank not in (1, 2):
        raise UsageError(f"series supports rank 1 or 2, got {rank}")
    if order < 0:
        raise UsageError("order must be >= 0")
    if method == "closed":
        if order > CLOSED_ORDER_LIMIT:
            raise UsageError(f"closed series capped at order {CLOSED_ORDER_LIMIT}")
        series = dt1_series(order) if rank == 1 else closed_dt2_series(order)
        values = list(series.coeffs)
    elif method == "wallcross":
        if order > WALLCROSS_LIMITS[rank]:
            raise UsageError(
                f"wall-crossing series capped at order {WALLCROSS_LIMITS[rank]}")
        values = [cached_wallcross(InvariantKind.DT, rank, n, cache, jobs)
                  for n in range(order + 1)]
    else:
        raise UsageError(f"unknown method {method!r}")
    doc = OutputDocument(make_meta("series", order, rank=rank, method=method,
                                   chi=chi, backend=BACKEND))
    for n, v in enumerate(values):
        doc.add(rank, n, _specialise(v, chi))
    return doc


def cmd_omega(max_n: int, chi=None) -> OutputDocument:
    if not 0 <= max_n <= CLOSED_ORDER_LIMIT:
        raise UsageError(f"omega needs 0 <= nmax <= {CLOSED_ORDER_LIMIT}")
    doc = OutputDocument(make_meta("omega", max_n, chi=chi))
    for n, v in enumerate(omega2_table(max_n)):
        doc.add(2, n, _specialise(v, chi), integer_valued=is_integer_valued(v))
    return doc


def _report_text(report) -> str:
    lines = []
    for c in report.checks:
        params = ",".join(f"{k}={v}" for k, v in c.params.items())
        status = "PASS" if c.passed else "FAIL"
        line = f"{status}  {c.name}({params})  [{c.elapsed:.3f}s]"
        if not c.passed:
            line += f"\n      expected {_show(c.expected)}\n      actual   {_show(c.actual)}"
        lines.append(line)
    ok = sum(c.passed for c in report.checks)
    lines.append(f"{ok}/{len(report.checks)} checks passed")
    return "\n".join(lines) + "\n"


def _show(v) -> str:
    return format_poly(v, var="χ") if isinstance(v, ChiPoly) else str(v)


def _jsonable(v):
    if isinstance(v, ChiPoly):
        return {str(d): format_rational(c) for d, c in sorted(v.coeffs.items())}
    return v


def report_to_json(report, meta: dict) -> str:
    checks = [{"name": c.name, "params": c.params,
               "expected": _jsonable(c.expected), "actual": _jsonable(c.actual),
               "pass": c.passed, "elapsed": round(c.elapsed, 6)}
              for c in report.checks]
    return json.dumps({"meta": meta, "passed": report.passed, "checks": checks},
                      indent=2) + "\n"


def cmd_coeff(config: str) -> dict:
    try:
        c = VertexConfig.parse(config)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    out = {
        "config": str(c),
        "classes": [[k.r, k.n] for k in c.classes],
        "s": s_coeff(c.classes),
        "u": format_rational(u_coeff(c.classes)),
        "tree_sum": tree_sum(c),
    }
    ranked = [k.r for k in c.classes if k.r > 0]
    if len(ranked) == 2 and all(r == 1 for r in ranked):
        out["u_pieces"] = [format_rational(x) for x in u_pieces(c.classes)]
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="dtwall", description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--version", action="version", version=f"dtwall {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, fmt=True):
        if fmt:
            p.add_argument("--format", choices=("table", "csv", "json"), default="table")
        p.add_argument("--jobs", type=int, default=None,
                       help="worker processes (default: available cores)")
        p.add_argument("--cache-dir", default=None,
                       help="result cache directory (default: $DTWALL_CACHE_DIR)")

    p = sub.add_parser("series", help="coefficients of DT(1) or DT(2)")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--method", choices=("closed", "wallcross"), default="closed")
    p.add_argument("--chi", type=int, default=None)
    common(p)

    p = sub.add_parser("omega", help="table of Omega(2, n)")
    p.add_argument("--nmax", "--max-n", dest="nmax", type=int, required=True)
    p.add_argument("--chi", type=int, default=None)
    common(p)

    p = sub.add_parser("verify", help="run the cross-check suite")
    p.add_argument("--rmax", type=int, default=2)
    p.add_argument("--nmax", type=int, default=6)
    p.add_argument("--order", type=int, default=None,
                   help="closed-series order (default: nmax)")
    p.add_argument("--format", choices=("table", "json"), default="table")
    common(p, fmt=False)

    p = sub.add_parser("coeff", help="s, u and tree sum of one configuration")
    p.add_argument("config", help='colour/weight list such as "B2,W1,W3"')

    p = sub.add_parser("cache", help="manage the result cache")
    p.add_argument("action", choices=("clear",))
    p.add_argument("--cache-dir", default=None)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = sys.stdout
    try:
        if args.command == "coeff":
            out.write(json.dumps(cmd_coeff(args.config), indent=2) + "\n")
            return EXIT_OK
        cache = ResultCache.from_env(getattr(args, "cache_dir", None))
        if args.command == "cache":
            if cache is None:
                raise UsageError("no cache directory configured")
            out.write(f"removed {cache.clear()} cached values\n")
            return EXIT_OK
        jobs = args.jobs if args.jobs else default_jobs()
        if args.command == "series":
            doc = cmd_series(args.rank, args.order, args.method, args.chi, jobs, cache)
            out.write(doc.render(args.format))
            return EXIT_OK
        if args.command == "omega":
            out.write(cmd_omega(args.nmax, args.chi).render(args.format))
            return EXIT_OK
        if args.command == "verify":
            order = args.nmax if args.order is None else args.order
            t0 = time.perf_counter()
            report = verify(args.rmax, args.nmax, order, jobs=jobs, cache=cache)
            if args.format == "json":
                meta = {"tool": "dtwall", "version": __version__, "command": "verify",
                        "rmax": args.rmax, "nmax": args.nmax, "order": order,
                        "elapsed": round(time.perf_counter() - t0, 3)}
                out.write(report_to_json(report, meta))
            else:
                out.write(_report_text(report))
            return EXIT_OK if report.passed else EXIT_VERIFY_FAILED
    except (UsageError, ResourceBoundError) as exc:
        sys.stderr.write(f"dtwall: error: {exc}\n")
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
