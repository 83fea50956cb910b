"""Command-line interface.

Subcommands: build, analyze, minvec, verify, table, scan-D, graph, craig.
Output is JSON by default (every integer rendered as a decimal string) or
CSV with --format csv.  Exit codes: 0 success / agreement, 1 verified
mismatch, 2 usage error, 3 construction error.  Parallelism for row-based
commands comes from --jobs or the LATLAB_JOBS environment variable; output
is byte-identical for every parallelism degree.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass

from . import families, lattice, perfection, tables
from .errors import ConstructionError, SpecError
from .intlinalg import format_matrix

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_CONSTRUCTION = 3


@dataclass(frozen=True)
class RunConfig:
    format: str = "json"
    jobs: int = 1
    norm_cap: int = 12
    sym_budget: int = 200_000


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("LATLAB_JOBS", "1")))
    except ValueError:
        return 1


def _emit_json(obj) -> None:
    print(json.dumps(obj, indent=2))


def _emit_csv(header, rows) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    print(buf.getvalue(), end="")


def _cmd_build(args, cfg: RunConfig) -> int:
    spec = families.parse_family(args.spec)
    lat = families.build_family(spec)
    if cfg.format == "csv":
        rows = [("rank", str(lat.rank)), ("det", str(lat.det))]
        rows += [("basis", *map(str, row)) for row in lat.basis]
        _emit_csv(("field", "values"), rows)
    else:
        _emit_json(lattice.lattice_to_json(lat, family=str(spec)))
    return EXIT_OK


def _cmd_analyze(args, cfg: RunConfig) -> int:
    spec = families.parse_family(args.spec)
    report = perfection.perfection_report(families.build_family(spec), cfg.norm_cap)
    if cfg.format == "csv":
        _emit_csv(
            ("family", "d", "det", "min", "mp", "sym_rank", "pd"),
            [(str(spec), report.d, report.det, report.min_norm,
              report.mp, report.sym_rank, report.pd)],
        )
    else:
        _emit_json(report.to_json(family=str(spec), params=spec.params_json()))
    return EXIT_OK


def _cmd_minvec(args, cfg: RunConfig) -> int:
    spec = families.parse_family(args.spec)
    lat = families.build_family(spec)
    mvs = lattice.vectors_of_norm(lat, args.norm)
    if cfg.format == "csv":
        _emit_csv(("norm", "count"), [(mvs.norm, mvs.count)])
        _emit_csv(("vector",), [tuple(map(str, v)) for v in mvs.vectors])
    else:
        _emit_json(lattice.mvs_to_json(mvs))
    return EXIT_OK


def _cmd_verify(args, cfg: RunConfig) -> int:
    spec = families.parse_family(args.spec)
    try:
        report = families.verify_formula(spec)
    except ValueError as exc:
        if "no closed form" in str(exc):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        raise
    if cfg.format == "csv":
        _emit_csv(
            ("family", "quantity", "formula_value", "enumerated_value", "agree"),
            [(report.family, report.quantity, report.formula_value,
              report.enumerated_value, str(report.agree).lower())],
        )
    else:
        _emit_json(report.to_json())
    return EXIT_OK if report.agree else EXIT_MISMATCH


def _cmd_table(args, cfg: RunConfig) -> int:
    if args.table_id not in tables.TABLE_IDS:
        print(f"error: unknown table id {args.table_id!r}", file=sys.stderr)
        return EXIT_USAGE
    report = tables.run_table(args.table_id, jobs=cfg.jobs)
    if cfg.format == "csv":
        _emit_csv(report.header, report.rows)
        _emit_csv(("row", "field", "expected", "got"),
                  [(d.row, d.field, d.expected, d.got) for d in report.diffs])
    else:
        _emit_json(report.to_json())
    return EXIT_OK if report.ok else EXIT_MISMATCH


def _cmd_scan_d(args, cfg: RunConfig) -> int:
    excl = tuple(int(tok) for tok in args.excl.split(",")) if args.excl else ()
    if any(b <= a for a, b in zip(excl, excl[1:])) or any(a < 1 for a in excl):
        print("error: exclusions must be strictly increasing and positive", file=sys.stderr)
        return EXIT_USAGE
    result = perfection.scan_D(excl, args.dmax, jobs=cfg.jobs)
    if cfg.format == "csv":
        _emit_csv(("excl", "d_max", "D", "perfect_ds"),
                  [(args.excl or "-", result.d_max,
                    "unresolved" if result.D is None else result.D,
                    " ".join(map(str, result.perfect_ds)))])
    else:
        _emit_json(result.to_json())
    return EXIT_OK


def _cmd_graph(args, cfg: RunConfig) -> int:
    spec = families.parse_family(args.spec)
    lat = families.build_family(spec)
    if args.norm is not None:
        mvs = lattice.vectors_of_norm(lat, args.norm)
    else:
        found = lattice.minimum(lat, cfg.norm_cap)
        if found is None:
            raise ConstructionError(f"minimum exceeds cap {cfg.norm_cap}")
        mvs = found[1]
    base = None
    if args.base_vector:
        base = tuple(int(tok) for tok in args.base_vector.split(","))
        if len(base) != lat.ambient_dim:
            print("error: base vector length does not match ambient dimension",
                  file=sys.stderr)
            return EXIT_USAGE
    product = args.product if args.product is not None else (-1 if base else 0)
    graph = perfection.minvec_graph(mvs, product, base_vector=base)
    try:
        spectrum = {str(root): str(mult) for root, mult in graph.spectrum().items()}
    except ValueError:
        spectrum = None
    degrees: dict[str, str] = {}
    for deg in graph.degrees():
        degrees[str(deg)] = str(int(degrees.get(str(deg), "0")) + 1)
    srg = graph.srg_parameters()
    info = {
        "vertices": str(graph.order),
        "degrees": dict(sorted(degrees.items(), key=lambda kv: int(kv[0]))),
        "spectrum": spectrum,
        "srg": None if srg is None else [str(x) for x in srg],
    }
    print(format_matrix([list(r) for r in graph.adjacency]), end="")
    _emit_json(info)
    return EXIT_OK


def _cmd_craig(args, cfg: RunConfig) -> int:
    q, k = args.q, args.k
    if args.method == "formula":
        if k == 2:
            value = families.craig_count_k2_closed(q)
        elif k == 3:
            value = families.craig_count_k3_closed(q)
        else:
            print("error: no closed form for this k", file=sys.stderr)
            return EXIT_USAGE
    elif args.method == "histogram":
        value = families.craig_pair_count(q, k)
    else:
        lat = families.build_family(families.FamilySpec("Craig", q=q, k=k))
        value = lattice.vectors_of_norm(lat, 2 * (k + 1)).count
    if cfg.format == "csv":
        _emit_csv(("q", "k", "method", "value"), [(q, k, args.method, value)])
    else:
        _emit_json({"q": str(q), "k": str(k), "method": args.method, "value": str(value)})
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    # the run options are accepted both before and after the subcommand;
    # SUPPRESS keeps a post-subcommand absence from clobbering a value parsed
    # from the front of the line
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS,
                        help="parallelism for row-based commands (default: LATLAB_JOBS or 1)")
    common.add_argument("--norm-cap", dest="norm_cap", type=int, default=argparse.SUPPRESS,
                        help="search cap for minimum-norm hunts")

    parser = argparse.ArgumentParser(
        prog="latlab",
        description="Build and analyze integral lattices cut out by congruence constraints.",
    )
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--jobs", type=int, default=None)
    parser.add_argument("--norm-cap", dest="norm_cap", type=int, default=12)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", parents=[common], help="construct a lattice and print it")
    p.add_argument("spec")
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("analyze", parents=[common], help="perfection report of a lattice")
    p.add_argument("spec")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("minvec", parents=[common], help="all vectors of one squared norm")
    p.add_argument("spec")
    p.add_argument("--norm", type=int, required=True)
    p.set_defaults(func=_cmd_minvec)

    p = sub.add_parser("verify", parents=[common],
                       help="closed-form count versus enumeration")
    p.add_argument("spec")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("table", parents=[common],
                       help="recompute a reference table and diff it")
    p.add_argument("table_id", metavar="ID", help=", ".join(tables.TABLE_IDS))
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("scan-D", parents=[common],
                       help="perfection threshold scan for excluded indices")
    p.add_argument("--excl", default="", help="comma separated exclusions (may be empty)")
    p.add_argument("--dmax", type=int, default=None)
    p.set_defaults(func=_cmd_scan_d)

    p = sub.add_parser("graph", parents=[common],
                       help="scalar-product graph of the shortest vectors")
    p.add_argument("spec")
    p.add_argument("--base-vector", default=None,
                   help="comma separated ambient vector fixing pair representatives")
    p.add_argument("--product", type=int, default=None,
                   help="scalar product defining edges (default -1 with a base, else 0)")
    p.add_argument("--norm", type=int, default=None)
    p.set_defaults(func=_cmd_graph)

    p = sub.add_parser("craig", parents=[common],
                       help="shortest-vector pair count of a power-sum kernel")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--method", choices=("formula", "histogram", "enumerate"),
                   default="formula")
    p.set_defaults(func=_cmd_craig)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(
        format=args.format,
        jobs=args.jobs if args.jobs is not None else _default_jobs(),
        norm_cap=args.norm_cap,
    )
    if cfg.jobs < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, cfg)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConstructionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCTION


if __name__ == "__main__":
    sys.exit(main())
