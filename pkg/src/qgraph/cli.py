"""Command-line front end.

    qgraph entropy   --family star:4
    qgraph sweep     --graph fig1a-n2.json --samples 8
    qgraph family    --family star:3..50 --out star.csv
    qgraph reproduce sec5-table
    qgraph validate  --graph my.json

Exit status: 0 success, 1 computation failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import contextlib
import csv
import math
import re
import sys
import warnings
from pathlib import Path

from .catalog import load_catalog_graph
from .entropy import QuadratureNotConverged, average_entropy, transmission_sweep, write_sweep_csv
from .errors import QGraphError, UnknownCatalogId
from .families import expand_family, parse_family, parse_family_range, place_leads, spec_size
from .graph import MetricGraph
from .io import load_graph
from .reproduce import TARGETS, reproduce, target_ids, write_data_csv, write_report_csv

__all__ = ["main", "build_parser", "parse_real", "parse_k_range"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


_REAL = re.compile(r"^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:e[+-]?\d+)?)?\s*\*?\s*(pi)?\s*$", re.I)


def parse_real(text: str) -> float:
    """A float, optionally written as a multiple of pi (``2pi``, ``0.5*pi``)."""
    m = _REAL.match(text)
    if not m or not (m.group(1) or m.group(2)):
        raise UsageError(f"not a number: {text!r}")
    x = float(m.group(1)) if m.group(1) else 1.0
    return x * math.pi if m.group(2) else x


def parse_k_range(text: str) -> tuple[float, float]:
    parts = text.split(":")
    if len(parts) != 2:
        raise UsageError(f"--k-range wants A:B, got {text!r}")
    a, b = (parse_real(p) for p in parts)
    if not 0 < a < b:
        raise UsageError(f"--k-range must satisfy 0 < A < B, got {a}:{b}")
    return a, b


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--graph", metavar="PATH", help="graph JSON file (or the id of a shipped graph)")
    src.add_argument("--family", metavar="SPEC", help="family spec, e.g. star:4, cycle:2..30, fishbone:3:dirichlet")
    common.add_argument("--leads", metavar="N|all|LIST", help="2 or all for families; N, all or 1,3,... to re-place leads")
    common.add_argument("--entrance", type=int, default=1, metavar="N", help="entrance channel (default 1)")
    common.add_argument("--tol", type=float, default=1e-6, metavar="X", help="quadrature tolerance (default 1e-6)")
    common.add_argument("--samples", type=int, default=2048, metavar="N", help="sweep grid size (default 2048)")
    common.add_argument("--k-range", default="1e-6:2pi", metavar="A:B", help="sweep interval (default 1e-6:2pi)")
    common.add_argument("--out", metavar="PATH", help="output file (default standard output)")
    common.add_argument("--seed", type=int, default=42, metavar="N", help="seed for sampled checks (default 42)")

    p = argparse.ArgumentParser(prog="qgraph", description="Scattering entropy of open quantum graphs.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("entropy", parents=[common], help="average scattering entropy with quadrature diagnostics")
    sub.add_parser("sweep", parents=[common], help="per-k probabilities and entropy as CSV")
    sub.add_parser("family", parents=[common], help="average entropy over a family range as CSV")
    r = sub.add_parser("reproduce", parents=[common], help="recompute reference values and curve data")
    r.add_argument("targets", nargs="+", metavar="TARGET", help=f"one of {', '.join(target_ids())}, or all")
    sub.add_parser("validate", parents=[common], help="check a graph and print its summary")
    return p


def _resolve_graph(args) -> MetricGraph:
    if args.graph:
        path = Path(args.graph)
        if path.is_file():
            g = load_graph(path)
        else:
            try:
                g = load_catalog_graph(path.stem if path.suffix == ".json" else args.graph)
            except UnknownCatalogId:
                raise UsageError(f"no such graph file or shipped graph: {args.graph}") from None
        return place_leads(g, args.leads) if args.leads else g
    if args.family:
        if _custom_leads(args.leads):
            return place_leads(expand_family(_spec(args.family, "2")), args.leads)
        return expand_family(_spec(args.family, _family_leads(args.leads)))
    raise UsageError("one of --graph or --family is required")


def _spec(text, leads):
    try:
        return parse_family(text, leads)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _custom_leads(leads) -> bool:
    return leads is not None and str(leads).lower() not in ("2", "all", "two")


def _family_leads(leads) -> str:
    return "2" if leads is None else str(leads)


@contextlib.contextmanager
def _output(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _check_common(args):
    if args.tol <= 0:
        raise UsageError("--tol must be positive")
    if args.samples < 2:
        raise UsageError("--samples must be at least 2")
    return parse_k_range(args.k_range)


def _cmd_entropy(args) -> int:
    g = _resolve_graph(args)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", QuadratureNotConverged)
        prof = average_entropy(g, args.entrance, tol=args.tol)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    with _output(args.out) as out:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["graph", "entrance", "H_mean", "panels", "estimated_error", "converged"])
        w.writerow([g.name, args.entrance, f"{prof.average:.10f}", prof.panels_used, f"{prof.estimated_error:.3g}", prof.converged])
    return EXIT_OK if prof.converged else EXIT_FAIL


def _cmd_sweep(args) -> int:
    a, b = _check_common(args)
    g = _resolve_graph(args)
    table = transmission_sweep(g, args.entrance, a, b, args.samples)
    with _output(args.out) as out:
        write_sweep_csv(table, out)
    return EXIT_OK


def _cmd_family(args) -> int:
    if not args.family:
        raise UsageError("family needs --family SPEC, e.g. star:3..50")
    try:
        specs = parse_family_range(args.family, _family_leads(args.leads))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    status = EXIT_OK
    with _output(args.out) as out:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["n", "graph", "H_mean", "panels", "estimated_error", "converged"])
        for spec in specs:
            g = expand_family(spec)
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", QuadratureNotConverged)
                prof = average_entropy(g, args.entrance, tol=args.tol)
            if not prof.converged:
                print(f"warning: {g.name} did not converge", file=sys.stderr)
                status = EXIT_FAIL
            w.writerow([spec_size(spec), g.name, f"{prof.average:.10f}", prof.panels_used, f"{prof.estimated_error:.3g}", prof.converged])
            out.flush()
    return status


def _cmd_reproduce(args) -> int:
    names = target_ids() if args.targets == ["all"] else args.targets
    unknown = [t for t in names if t not in TARGETS]
    if unknown:
        raise UsageError(f"unknown target(s) {', '.join(unknown)}; choose from {', '.join(target_ids())}")
    results = [reproduce(t, tol=args.tol, seed=args.seed) for t in names]
    rows = sorted((r for res in results for r in res.rows), key=lambda r: r.label)
    with _output(args.out) as out:
        write_report_csv(rows, out)
    if args.out:
        base = Path(args.out)
        for res in results:
            with open(base.with_name(f"{base.stem}.{res.target}.data.csv"), "w", newline="") as fh:
                write_data_csv(res, fh)
    for r in rows:
        if not r.passed:
            print(f"{r.status}: {r.label} {r.note}".rstrip(), file=sys.stderr)
    return EXIT_OK if all(r.passed for r in rows) else EXIT_FAIL


def _cmd_validate(args) -> int:
    g = _resolve_graph(args)
    deg = g.degrees()
    with _output(args.out) as out:
        print(f"name: {g.name}", file=out)
        print(f"vertices: {g.n_vertices}", file=out)
        print(f"edges: {g.n_edges}", file=out)
        print(f"leads: {', '.join(map(str, g.leads))}", file=out)
        print(f"degrees: {' '.join(f'{v}:{d}' for v, d in sorted(deg.items()))}", file=out)
    return EXIT_OK


_COMMANDS = {
    "entropy": _cmd_entropy,
    "sweep": _cmd_sweep,
    "family": _cmd_family,
    "reproduce": _cmd_reproduce,
    "validate": _cmd_validate,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command != "sweep":
            _check_common(args)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"qgraph: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (QGraphError, ValueError, OSError) as exc:
        print(f"qgraph: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
