"""Command-line front end.

Exit codes: 0 success, 1 input or feasibility error, 2 time budget hit or
incomplete cover.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .alphabet import DEFAULT_MAX_SPACE, format_word
from .confusion import recovery_table, load_codebook, repair, serialize_codebook
from .covering import parse_cover, serialize_cover
from .duality import (
    IndexCodeSpec,
    duality_report,
    find_index_failure,
    index_from_rdss,
    symbols_needed,
    vector_report,
)
from .errors import ConfusablePair, IncompleteCover, RdssError
from .graph import GENERATORS, five_server_graph, load_graph, serialize_graph
from .search import DEFAULT_TIME_BUDGET, minrank, rdss_exact

EXIT_OK, EXIT_ERROR, EXIT_BUDGET = 0, 1, 2


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.6f}"
    return str(v)


def _emit(pairs, pretty: bool) -> None:
    pairs = [(k, _fmt(v)) for k, v in pairs]
    if pretty:
        width = max(len(k) for k, _ in pairs)
        for k, v in pairs:
            print(f"{k:<{width}}  {v}")
    else:
        for k, v in pairs:
            print(f"{k} = {v}")


def _write(path: str | None, text: str) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_rdss(args) -> int:
    g = load_graph(args.graph)
    res = rdss_exact(g, args.q, args.max_space, args.time_budget)
    pairs = [("n", g.n), ("q", args.q), ("rdss_size", res.size), ("rdss_dim", res.dim),
             ("rdss_exact", res.exact), ("nodes_explored", res.nodes_explored)]
    if not args.out:
        pairs += [("codeword", format_word(w, args.q)) for w in res.codebook]
    _emit(pairs, args.pretty)
    if args.out:
        _write(args.out, serialize_codebook(res.codebook))
    return EXIT_OK if res.exact else EXIT_BUDGET


def cmd_minrank(args) -> int:
    g = load_graph(args.graph)
    res = minrank(g, args.q, args.max_space, args.time_budget)
    _emit([("n", g.n), ("q", args.q), ("minrank", res.rank),
           ("matrices_checked", res.matrices_checked)], args.pretty)
    if args.out:
        _write(args.out, res.witness.format() + "\n")
    else:
        print("witness =")
        print(res.witness.format())
    return EXIT_OK


def _base_code(args, g):
    if args.auto:
        return rdss_exact(g, args.q, args.max_space, args.time_budget).codebook, "auto"
    if not args.codebook:
        raise RdssError("give a codebook file or --auto")
    return load_codebook(args.codebook), Path(args.codebook).name


def cmd_index(args) -> int:
    g = load_graph(args.graph)
    code, ref = _base_code(args, g)
    try:
        spec = index_from_rdss(code, g, args.method, seed=args.seed, m=args.m, max_space=args.max_space)
    except ConfusablePair as exc:
        print(f"error: not an RDSS code: {exc}", file=sys.stderr)
        print(f"witness = {format_word(exc.x, code.q)} {format_word(exc.y, code.q)} vertex {exc.vertex + 1}",
              file=sys.stderr)
        return EXIT_ERROR
    except IncompleteCover as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    failure = find_index_failure(spec, g, args.max_space)
    _emit([("n", g.n), ("q", code.q), ("base_size", len(code)), ("method", spec.cover.method),
           ("index_classes", spec.m), ("index_length_symbols", spec.length_symbols),
           ("index_verified", failure is None)], args.pretty)
    cover_text = serialize_cover(spec.cover, ref)
    if args.out:
        _write(args.out, cover_text)
    else:
        print()
        sys.stdout.write(cover_text)
    return EXIT_OK if failure is None else EXIT_ERROR


def cmd_verify(args) -> int:
    g = load_graph(args.graph)
    code = load_codebook(args.codebook)
    try:
        table = recovery_table(code, g)
    except ConfusablePair as exc:
        _emit([("rdss", False), ("witness", f"{format_word(exc.x, code.q)} {format_word(exc.y, code.q)}"),
               ("vertex", exc.vertex + 1)], args.pretty)
        return EXIT_ERROR
    repaired = all(repair(x, i, table) == x[i] for x in code for i in range(g.n))
    pairs = [("rdss", True), ("size", len(code)), ("dim", code.dim), ("repair_ok", repaired)]
    status = EXIT_OK
    if args.cover:
        cover = parse_cover(Path(args.cover).read_text(encoding="utf-8"), code)
        spec = IndexCodeSpec(g, code, cover, table)
        failure = find_index_failure(spec, g, args.max_space)
        pairs += [("index_classes", cover.m), ("index_length_symbols", symbols_needed(cover.m, code.q)),
                  ("cover_complete", cover.complete), ("index_verified", failure is None)]
        if failure is not None:
            pairs.append(("failure_word", format_word(failure[0], code.q)))
            status = EXIT_BUDGET if not cover.complete else EXIT_ERROR
    _emit(pairs, args.pretty)
    return status


def _report(args, p: int) -> int:
    g = load_graph(args.graph)
    if p == 1:
        rep = duality_report(g, args.q, args.max_space, args.time_budget)
    else:
        rep = vector_report(g, args.q, p, args.max_space, args.time_budget)
    sys.stdout.write(rep.format_table() if args.pretty else rep.format())
    return EXIT_OK if rep.passed else EXIT_ERROR


def cmd_report(args) -> int:
    return _report(args, 1)


def cmd_vector_report(args) -> int:
    return _report(args, args.p)


def cmd_gen(args) -> int:
    if args.family == "fig1":
        g = five_server_graph()
    else:
        if args.size is None:
            raise RdssError(f"family {args.family!r} needs a vertex count")
        g = GENERATORS[args.family](args.size)
    _write(args.out, serialize_graph(g))
    return EXIT_OK


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--q", type=int, default=2, help="alphabet size (default 2)")
    p.add_argument("--max-space", type=int, default=DEFAULT_MAX_SPACE,
                   help="largest enumeration allowed (default 2^20)")
    p.add_argument("--time-budget", type=float, default=DEFAULT_TIME_BUDGET,
                   help="seconds for exact searches (default 60)")
    p.add_argument("--out", help="write the main artifact to this file")
    p.add_argument("--pretty", action="store_true", help="aligned table instead of key = value")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rdssdual", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rdss", help="largest RDSS code by exact search")
    p.add_argument("graph")
    _common(p)
    p.set_defaults(func=cmd_rdss)

    p = sub.add_parser("minrank", help="minrank by enumerating fitting matrices")
    p.add_argument("graph")
    _common(p)
    p.set_defaults(func=cmd_minrank)

    p = sub.add_parser("index", help="index code from an RDSS code")
    p.add_argument("graph")
    p.add_argument("codebook", nargs="?")
    p.add_argument("--auto", action="store_true", help="use the exact RDSS code as the base")
    p.add_argument("--method", choices=["greedy", "hybrid", "random"], default="greedy")
    p.add_argument("--m", type=int, help="translate count for --method random")
    p.add_argument("--seed", type=int, default=0)
    _common(p)
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("verify", help="check a codebook, and optionally its index cover")
    p.add_argument("graph")
    p.add_argument("codebook")
    p.add_argument("--cover", help="serialized translate cover to verify as an index code")
    _common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("report", help="two-sided RDSS / index bound report")
    p.add_argument("graph")
    _common(p)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("vector-report", help="the report over blocks of p symbols")
    p.add_argument("graph")
    p.add_argument("--p", type=int, default=1, help="block length (default 1)")
    _common(p)
    p.set_defaults(func=cmd_vector_report)

    p = sub.add_parser("gen", help="write a named graph")
    p.add_argument("family", choices=sorted(GENERATORS) + ["fig1"])
    p.add_argument("size", type=int, nargs="?")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "q", 2) < 2 or getattr(args, "p", 1) < 1:
        print("error: need q >= 2 and p >= 1", file=sys.stderr)
        return EXIT_ERROR
    try:
        return args.func(args)
    except (RdssError, OSError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
