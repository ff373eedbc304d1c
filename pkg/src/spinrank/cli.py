"""Command-line interface: ``spinrank {eval,rank,lattice,algebra,check}``.

Exit codes: 0 success (or consistent), 1 violation found by ``check``,
2 input error, 3 resource guard exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .characterize import run_characterization
from .connection import (
    THREADS_ENV,
    FamilySizeError,
    build_submatrix,
    generate_family,
    necessity_check,
)
from .invariants import CoverageError, MissingEntryError, SpinSource, TableSource
from .marked import FormalSum, b_element, formal_product, glue, n_p
from .multigraph import GraphSizeError, Multigraph
from .partitions import (
    PartitionSizeError,
    convolution_failures,
    enumerate_partitions,
    join,
    moebius_matrix,
    p_matrix,
    p_matrix_determinant,
    verify_diagonalization,
    zeta_matrix,
)
from .scalars import format_scalar, parse_scalar
from .spin import SpinMatrix, StateSpaceError, partition_function, partition_function_ordered

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3
GUARD_ERRORS = (PartitionSizeError, GraphSizeError, StateSpaceError, FamilySizeError)


class InputError(Exception):
    pass


def _load_json(path, what):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {what} file {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _load(path, what, parse):
    data = _load_json(path, what)
    try:
        return parse(data)
    except (ValueError, TypeError, KeyError) as exc:
        if isinstance(exc, GUARD_ERRORS):
            raise
        raise InputError(f"{path}: invalid {what}: {exc}") from None


def _source(args):
    if args.matrix:
        return SpinSource(_load(args.matrix, "spin matrix", SpinMatrix.from_json))
    return _load(args.table, "invariant table", TableSource.from_json)


def _emit(obj):
    sys.stdout.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def cmd_eval(args):
    graph = _load(args.graph, "graph", Multigraph.from_json)
    matrix = _load(args.matrix, "spin matrix", SpinMatrix.from_json)
    if args.brute:
        value = partition_function(matrix, graph)
    else:
        order = None
        if args.order:
            try:
                order = [int(x) - 1 for x in args.order.split(",")]
            except ValueError:
                raise InputError(f"--order must be comma-separated vertex numbers, got {args.order!r}") from None
        try:
            value = partition_function_ordered(matrix, graph, order)
        except StateSpaceError:
            raise
        except ValueError as exc:
            raise InputError(str(exc)) from None
    print(format_scalar(value))
    return EXIT_OK


def cmd_rank(args):
    family = generate_family(args.k, args.max_vertices, args.max_edges)
    out = {"k": args.k, "family_size": len(family)}
    if args.matrix:
        matrix = _load(args.matrix, "spin matrix", SpinMatrix.from_json)
        report = necessity_check(matrix, args.k, family)
        out.update(report.to_json())
    else:
        table = _load(args.table, "invariant table", TableSource.from_json)
        out["rank"] = build_submatrix(table, family).rank()
    _emit(out)
    return EXIT_OK


def cmd_lattice(args):
    try:
        x = parse_scalar(args.x)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    n = args.n
    diag = verify_diagonalization(n, x)
    _emit(
        {
            "n": n,
            "x": format_scalar(x),
            "partitions": [p.to_string() for p in enumerate_partitions(n)],
            "zeta": zeta_matrix(n).to_json(),
            "moebius": moebius_matrix(n).to_json(),
            "p_matrix": p_matrix(n, x).to_json(),
            "det_p_matrix": format_scalar(p_matrix_determinant(n, x)),
            "diagonalization": diag.to_json(),
        }
    )
    return EXIT_OK


def cmd_algebra(args):
    k = args.k
    b = b_element(k)
    parts = enumerate_partitions(k)
    join_failures = [
        (p.to_string(), q.to_string())
        for p in parts
        for q in parts
        if glue(n_p(p), n_p(q)).key != n_p(join(p, q)).key
    ]
    conv = convolution_failures(k)
    _emit(
        {
            "k": k,
            "b_terms": len(b),
            "b_idempotent": formal_product(b, b) == b,
            "np_join_law": {"pairs": len(parts) ** 2, "failures": [list(x) for x in join_failures]},
            "convolution_identity": {
                "targets": len(parts),
                "failures": [{"R": r.to_string(), "sum": s, "mu": m} for r, s, m in conv],
            },
            "b": b.to_json(),
        }
    )
    return EXIT_OK


def cmd_check(args):
    source = _source(args)
    report = run_characterization(
        source,
        max_k=args.max_k,
        max_vertices=args.max_vertices,
        max_edges=args.max_edges,
        pairs=args.pairs,
        seed=args.seed,
        family_vertices=args.family_vertices,
        family_edges=args.family_edges,
    )
    if args.json:
        _emit(report.to_json())
    else:
        print(report.render())
    return EXIT_OK if report.consistent else EXIT_VIOLATION


def _source_flags(p, required=True):
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--matrix", help="spin matrix JSON file")
    g.add_argument("--table", help="invariant table JSON file")


def build_parser():
    parser = argparse.ArgumentParser(prog="spinrank", description=__doc__.splitlines()[0])
    parser.add_argument("--threads", type=int, help=f"worker processes (overrides ${THREADS_ENV})")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="partition function of a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--matrix", required=True)
    p.add_argument("--order", help="elimination order, comma-separated 1-based vertices")
    p.add_argument("--brute", action="store_true", help="sum over all state maps")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("rank", help="rank of a connection-matrix window")
    _source_flags(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-vertices", type=int, default=2)
    p.add_argument("--max-edges", type=int, default=2)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("lattice", help="zeta, Moebius and P_n(x) matrices")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", default="0", help="scalar literal")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("algebra", help="idempotent b and lattice identities")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_algebra)

    p = sub.add_parser("check", help="test an invariant against the necessary conditions")
    _source_flags(p)
    p.add_argument("--max-k", type=int, default=3)
    p.add_argument("--max-vertices", type=int, default=3)
    p.add_argument("--max-edges", type=int, default=3)
    p.add_argument("--family-vertices", type=int, default=2)
    p.add_argument("--family-edges", type=int, default=1)
    p.add_argument("--pairs", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads is not None:
        os.environ[THREADS_ENV] = str(max(1, args.threads))
    for name in ("k", "n", "max_k", "max_vertices", "max_edges", "pairs", "family_vertices", "family_edges"):
        value = getattr(args, name, None)
        if value is not None and value < 0:
            print(f"spinrank: --{name.replace('_', '-')} must be nonnegative", file=sys.stderr)
            return EXIT_INPUT
    try:
        return args.func(args)
    except GUARD_ERRORS as exc:
        print(f"spinrank: resource guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (CoverageError, MissingEntryError) as exc:
        print(f"spinrank: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InputError as exc:
        print(f"spinrank: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
