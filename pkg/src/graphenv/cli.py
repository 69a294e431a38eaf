"""Command-line interface.

Exit codes: 0 ok, 2 input/parse error, 3 lattice or oracle guard exceeded,
4 DP/oracle mismatch, 5 sandwich FAILURE (a decision, not an error),
6 weight tables that do not match the graph's lattice.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from contextlib import contextmanager
from pathlib import Path

from .envelopes import (
    ENVELOPES,
    EnvelopeKind,
    is_monotone_decreasing,
    is_monotone_increasing,
    is_subadditive,
    sandwich_monotone,
    sandwich_subadditive,
)
from .errors import (
    EnvelopeError,
    LatticeTooLarge,
    MissingSubgraph,
    OracleCapExceeded,
    UnknownSubgraph,
)
from .io import (
    graph_from_document,
    read_json,
    render_subgraph,
    render_witness,
    report_csv,
    report_json,
    table_csv,
)
from .lattice import Graph, Lattice, build_graph, enumerate_lattice, predict_lattice_size, resolve_guard
from .oracle import subadditive_minorant_bruteforce, superadditive_majorant_bruteforce
from .weights import BuiltinWeight, format_rational, load_table, random_table, tabulate

EXIT_OK, EXIT_PARSE, EXIT_GUARD, EXIT_ORACLE, EXIT_FAILURE, EXIT_MISMATCH = 0, 2, 3, 4, 5, 6
BUILTIN_NAMES = [b.value for b in BuiltinWeight]
FAMILIES = ("path", "cycle", "star", "complete")


class CliExit(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        super().__init__(message)


def _load_graph(path: str) -> Graph:
    try:
        return graph_from_document(read_json(path))
    except (OSError, json.JSONDecodeError) as exc:
        raise CliExit(EXIT_PARSE, f"cannot read graph {path}: {exc}") from exc
    except EnvelopeError as exc:
        raise CliExit(EXIT_PARSE, f"invalid graph {path}: {exc}") from exc


def _lattice(g: Graph, guard: int | None) -> Lattice:
    try:
        return enumerate_lattice(g, max_size=resolve_guard(guard))
    except LatticeTooLarge as exc:
        raise CliExit(EXIT_GUARD, str(exc)) from exc


def _weights(lat: Lattice, source: str, *, mismatch_code: int = EXIT_PARSE):
    """A weight source is a builtin name or a path to a weight document."""
    if source in BUILTIN_NAMES and not Path(source).exists():
        try:
            return tabulate(source, lat)
        except EnvelopeError as exc:
            raise CliExit(EXIT_PARSE, str(exc)) from exc
    try:
        doc = read_json(source)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliExit(EXIT_PARSE, f"cannot read weights {source}: {exc}") from exc
    try:
        return load_table(lat, doc)
    except (MissingSubgraph, UnknownSubgraph) as exc:
        raise CliExit(mismatch_code, f"weights {source} do not fit the lattice: {exc}") from exc
    except EnvelopeError as exc:
        raise CliExit(EXIT_PARSE, f"invalid weights {source}: {exc}") from exc


def _source_table(args, lat: Lattice):
    chosen = [x is not None for x in (args.weights, args.builtin, args.seed)]
    if sum(chosen) != 1:
        raise CliExit(EXIT_PARSE, "give exactly one of --weights, --builtin, --seed")
    if args.weights is not None:
        return _weights(lat, args.weights)
    if args.builtin is not None:
        return _weights(lat, args.builtin)
    return random_table(lat, args.seed, args.max_numerator)


@contextmanager
def _output(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def cmd_enumerate(args) -> int:
    lat = _lattice(_load_graph(args.graph), args.max_lattice)
    with _output(args.out) as out:
        out.write(f"{len(lat)}\n")
        for h in range(len(lat)):
            out.write(render_subgraph(lat, h) + "\n")
    return EXIT_OK


def cmd_envelope(args) -> int:
    lat = _lattice(_load_graph(args.graph), args.max_lattice)
    w = _source_table(args, lat)
    kinds = list(EnvelopeKind) if args.kind == "all" else [EnvelopeKind(args.kind)]
    results = {k: ENVELOPES[k](w) for k in kinds}
    if args.oracle_check:
        oracles = {
            EnvelopeKind.SUBADD_MIN: subadditive_minorant_bruteforce,
            EnvelopeKind.SUPERADD_MAJ: superadditive_majorant_bruteforce,
        }
        for kind, oracle in oracles.items():
            if kind not in results:
                continue
            try:
                ref = oracle(w, cap=args.oracle_cap)
            except OracleCapExceeded as exc:
                raise CliExit(EXIT_GUARD, str(exc)) from exc
            got = results[kind].output
            for h in range(len(lat)):
                if got[h] != ref[h]:
                    raise CliExit(
                        EXIT_ORACLE,
                        f"{kind.value} mismatch at index {h} {render_subgraph(lat, h)}: "
                        f"dp={format_rational(got[h])} oracle={format_rational(ref[h])}",
                    )
    text = report_json(w, results) if args.format == "json" else report_csv(w, results)
    with _output(args.out) as out:
        out.write(text)
    return EXIT_OK


def _verdict_line(lat: Lattice, name: str, verdict) -> str:
    if verdict:
        return f"{name}: yes"
    a, b = verdict.violation
    return f"{name}: no (violation: {render_subgraph(lat, a)}, {render_subgraph(lat, b)})"


def cmd_verify(args) -> int:
    lat = _lattice(_load_graph(args.graph), args.max_lattice)
    w = _source_table(args, lat)
    with _output(args.out) as out:
        out.write(_verdict_line(lat, "monotone-increasing", is_monotone_increasing(w)) + "\n")
        out.write(_verdict_line(lat, "monotone-decreasing", is_monotone_decreasing(w)) + "\n")
        out.write(_verdict_line(lat, "subadditive", is_subadditive(w)) + "\n")
    return EXIT_OK


def cmd_sandwich(args) -> int:
    lat = _lattice(_load_graph(args.graph), args.max_lattice)
    w1 = _weights(lat, args.w1, mismatch_code=EXIT_MISMATCH)
    w2 = _weights(lat, args.w2, mismatch_code=EXIT_MISMATCH)
    decide = sandwich_monotone if args.kind == "monotone" else sandwich_subadditive
    res = decide(w1, w2)
    with _output(args.out) as out:
        if res:
            out.write("SUCCESS\n")
            out.write(table_csv(lat, [("w1", w1), ("w2", w2), ("separator", res.separator)]))
            return EXIT_OK
        h = res.index
        out.write(
            f"FAILURE at index {h} {render_subgraph(lat, h)}: "
            f"w1={format_rational(w1[h])} > {format_rational(res.separator[h])}; "
            f"witness {render_witness(res.witness)}\n"
        )
    return EXIT_FAILURE


def family_graph(family: str, n: int) -> Graph:
    """Standard family member on ``n`` vertices (star: one center, n-1 leaves)."""
    labels = [f"v{i}" for i in range(n)]
    if family == "path":
        pairs = [(i, i + 1) for i in range(n - 1)]
    elif family == "cycle":
        if n < 3:
            raise CliExit(EXIT_PARSE, "cycle needs at least 3 vertices")
        pairs = [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]
    elif family == "star":
        pairs = [(0, i) for i in range(1, n)]
    elif family == "complete":
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    else:
        raise CliExit(EXIT_PARSE, f"unknown family {family!r}")
    return build_graph(labels, [(labels[a], labels[b]) for a, b in pairs])


def cmd_bench(args) -> int:
    sizes = args.sizes
    if any(b <= a for a, b in zip(sizes, sizes[1:])) or min(sizes) < 1:
        raise CliExit(EXIT_PARSE, "--sizes must be positive and strictly ascending")
    guard = resolve_guard(args.max_lattice)
    graphs = [(n, family_graph(args.family, n)) for n in sizes]
    for n, g in graphs:
        if predict_lattice_size(g, limit=guard) > guard:
            raise CliExit(
                EXIT_GUARD,
                f"{args.family} n={n}: lattice exceeds the guard of {guard} elements; "
                "not running (use --max-lattice to raise it)",
            )
    header = ["family", "n", "V", "E", "lattice", *(f"t_{k.value}" for k in EnvelopeKind), "peak_witness"]
    with _output(args.out) as out:
        out.write(",".join(header) + "\n")
        for n, g in graphs:
            lat = enumerate_lattice(g, max_size=guard)
            w = random_table(lat, args.seed, args.max_numerator)
            times = []
            peak = 0
            for kind in EnvelopeKind:
                t0 = time.perf_counter()
                res = ENVELOPES[kind](w)
                times.append(time.perf_counter() - t0)
                if kind is EnvelopeKind.SUBADD_MIN:
                    peak = max(len(c) for c in res.witness)
            row = [args.family, n, g.vertex_count, g.edge_count, len(lat),
                   *(f"{t:.6f}" for t in times), peak]
            out.write(",".join(str(x) for x in row) + "\n")
            out.flush()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphenv",
        description="Monotone and subadditive envelopes of weights on a subgraph lattice.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-lattice", type=int, default=None,
                        help="lattice size guard (default $ENVELOPE_MAX_LATTICE or 2^20)")
    common.add_argument("--out", default=None, help="output file (default stdout)")

    with_graph = argparse.ArgumentParser(add_help=False, parents=[common])
    with_graph.add_argument("--graph", required=True, help="graph JSON file")

    weighted = argparse.ArgumentParser(add_help=False, parents=[with_graph])
    weighted.add_argument("--weights", help="weight JSON file")
    weighted.add_argument("--builtin", choices=BUILTIN_NAMES, help="builtin graph parameter")
    weighted.add_argument("--seed", type=int, help="random integer table with this seed")
    weighted.add_argument("--max-numerator", type=int, default=10,
                          help="upper bound for random weights (default 10)")

    p = sub.add_parser("enumerate", parents=[with_graph], help="list the subgraph lattice")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("envelope", parents=[weighted], help="compute envelopes")
    p.add_argument("--kind", default="all", choices=["all", *(k.value for k in EnvelopeKind)])
    p.add_argument("--format", default="csv", choices=["csv", "json"])
    p.add_argument("--oracle-check", action="store_true",
                   help="recompute cover envelopes by brute force and compare")
    p.add_argument("--oracle-cap", type=int, default=64,
                   help="max nonempty subgraphs per element for the brute force (default 64)")
    p.set_defaults(func=cmd_envelope)

    p = sub.add_parser("verify", parents=[weighted], help="check monotonicity and subadditivity")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sandwich", parents=[with_graph], help="decide a separation")
    p.add_argument("--w1", required=True, help="lower table: file or builtin name")
    p.add_argument("--w2", required=True, help="upper table: file or builtin name")
    p.add_argument("--kind", required=True, choices=["monotone", "subadditive"])
    p.set_defaults(func=cmd_sandwich)

    p = sub.add_parser("bench", parents=[common], help="time the envelopes on graph families")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--sizes", required=True, type=int, nargs="+")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-numerator", type=int, default=10)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_PARSE
    try:
        return args.func(args)
    except CliExit as exc:
        print(f"graphenv: {exc}", file=sys.stderr)
        return exc.code
    except ValueError as exc:
        print(f"graphenv: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
