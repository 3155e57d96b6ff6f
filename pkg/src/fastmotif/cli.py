"""Command-line entry point: ``fastmotif {count,verify,bench,gen}``.

Exit codes: 0 success, 1 usage error, 2 input parse error, 3 counter
overflow, 4 invalid mode/thread combination, 5 input too large for the
oracle, 6 engine/oracle mismatch, 7 nondeterministic census in bench.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import logging
import math
import statistics
import sys
import time
from dataclasses import dataclass, field

from .graph import ParseError, generate_random_graph, index_graph, read_edge_list, write_edge_list
from .hare import MOTIF_KINDS, ConfigurationError, RunConfig, run_parallel
from .oracle import DEFAULT_MAX_EDGES, OracleInputTooLarge, oracle_census
from .taxonomy import (ALL_SIGNATURES, CounterOverflowError, MotifCensus, label_for_signature,
                       signature_category)

log = logging.getLogger("fastmotif")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_OVERFLOW = 3
EXIT_CONFIG = 4
EXIT_TOO_LARGE = 5
EXIT_MISMATCH = 6
EXIT_NONDETERMINISTIC = 7

PHASES = ("ingest", "index", "star_pair", "triangle", "merge")


class UsageError(Exception):
    pass


@dataclass
class CensusReport:
    census: MotifCensus
    timings: dict[str, float] = field(default_factory=dict)
    config: dict = field(default_factory=dict)


def write_census(report: CensusReport, fmt: str = "table") -> str:
    census = report.census
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["signature", "label", "count"])
        for sig in ALL_SIGNATURES:
            writer.writerow([sig, label_for_signature(sig), census[sig]])
        return buf.getvalue()
    if fmt == "json":
        doc = {
            "delta": census.delta,
            "counts": {sig: census[sig] for sig in ALL_SIGNATURES},
            "labels": {sig: label_for_signature(sig) for sig in ALL_SIGNATURES},
            "meta": {k: v for k, v in census.meta.items() if k != "timings_ms"} | {
                "config": report.config},
            "timings_ms": {k: round(v, 3) for k, v in report.timings.items()},
        }
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "table":
        lines = [f"delta = {census.delta}"]
        for category in ("star", "pair", "triangle"):
            rows = census.restrict(category)
            lines.append(f"\n{category} motifs")
            for sig, count in rows.items():
                label = label_for_signature(sig)
                label = "" if label == sig else label
                lines.append(f"  {sig:<10} {label:<5} {count:>14}")
            lines.append(f"  {'subtotal':<16} {sum(rows.values()):>14}")
        lines.append(f"\n{'total':<18} {census.total():>14}")
        return "\n".join(lines) + "\n"
    raise UsageError(f"unknown format {fmt!r}")


def _threshold(value: str):
    if value == "auto":
        return "auto"
    if value in ("inf", "none"):
        return math.inf
    try:
        thr = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, 'auto' or 'inf', got {value!r}")
    if thr < 0:
        raise argparse.ArgumentTypeError("degree threshold must be non-negative")
    return thr


def _non_negative(value: str) -> int:
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {value!r}")
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {n}")
    return n


def _positive(value: str) -> int:
    n = _non_negative(value)
    if n == 0:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return n


def _motifs(value: str) -> frozenset:
    if value == "all":
        return MOTIF_KINDS
    kinds = frozenset(x.strip() for x in value.split(",") if x.strip())
    if not kinds or not kinds <= MOTIF_KINDS:
        raise argparse.ArgumentTypeError(f"motifs must be 'all' or a list from {sorted(MOTIF_KINDS)}")
    return kinds


def _thread_list(value: str) -> list[int]:
    try:
        threads = [int(x) for x in value.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list, got {value!r}")
    if not threads or min(threads) < 1:
        raise argparse.ArgumentTypeError("thread counts must be positive")
    return threads


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_run_flags(p: argparse.ArgumentParser, threads: bool = True) -> None:
    p.add_argument("--input", required=True, help="edge list: SRC DST T per line")
    p.add_argument("--delta", required=True, type=_non_negative,
                   help="time window, in the input's time unit")
    if threads:
        p.add_argument("--threads", type=_positive, default=1)
    p.add_argument("--degree-threshold", type=_threshold, default="auto",
                   help="degree above which a node is sharded (int, 'auto' or 'inf')")
    p.add_argument("--triangle-mode", choices=("countall", "removal"), default="countall")
    p.add_argument("--motifs", type=_motifs, default=MOTIF_KINDS)
    p.add_argument("--shard-target", type=_positive, default=4096, help=argparse.SUPPRESS)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fastmotif", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("count", help="count all motif classes")
    _add_run_flags(p)
    p.add_argument("--format", choices=("table", "csv", "json"), default="table")
    p.add_argument("--output", default="-")

    p = sub.add_parser("verify", help="compare the engine against the brute-force oracle")
    _add_run_flags(p)
    p.add_argument("--max-edges", type=_non_negative, default=DEFAULT_MAX_EDGES)

    p = sub.add_parser("bench", help="time the pipeline over several thread counts")
    _add_run_flags(p, threads=False)
    p.add_argument("--threads", type=_thread_list, default=[1])
    p.add_argument("--repeat", type=_positive, default=3)
    p.add_argument("--output", default="-")

    p = sub.add_parser("gen", help="write a uniform random temporal graph")
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--edges", type=int, required=True)
    p.add_argument("--t-max", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--output", default="-")
    return parser


def _config(args, threads: int) -> RunConfig:
    return RunConfig(delta=args.delta, workers=threads, thr_d=args.degree_threshold,
                     tri_mode=args.triangle_mode, motif_filter=args.motifs,
                     shard_target=args.shard_target)


def run_pipeline(path: str, config: RunConfig) -> CensusReport:
    """Read, index and count, timing each phase."""
    tick = time.perf_counter()
    graph = read_edge_list(path)
    ingest = time.perf_counter() - tick
    tick = time.perf_counter()
    index = index_graph(graph)
    indexing = time.perf_counter() - tick
    census = run_parallel(index, config)
    timings = {"ingest": ingest * 1e3, "index": indexing * 1e3}
    timings.update(census.meta.get("timings_ms", {}))
    if graph.dropped_self_loops:
        log.warning("dropped %d self-loop edges", graph.dropped_self_loops)
    census.meta["dropped_self_loops"] = graph.dropped_self_loops
    echo = {
        "delta": config.delta, "threads": config.workers,
        "degree_threshold": config.thr_d if config.thr_d != math.inf else "inf",
        "triangle_mode": config.tri_mode.value, "motifs": sorted(config.motif_filter),
    }
    return CensusReport(census.with_labels(), timings, echo)


def _open_out(path: str):
    if path == "-":
        return sys.stdout
    return open(path, "w", encoding="utf-8", newline="")


def _emit(path: str, text: str) -> None:
    out = _open_out(path)
    try:
        out.write(text)
    finally:
        if out is not sys.stdout:
            out.close()


def cmd_count(args) -> int:
    report = run_pipeline(args.input, _config(args, args.threads))
    _emit(args.output, write_census(report, args.format))
    return EXIT_OK


def cmd_verify(args) -> int:
    graph = read_edge_list(args.input)
    if graph.edge_count > args.max_edges:
        print(f"refusing: {graph.edge_count} edges exceeds --max-edges {args.max_edges}",
              file=sys.stderr)
        return EXIT_TOO_LARGE
    engine = run_pipeline(args.input, _config(args, args.threads)).census
    truth = oracle_census(graph, args.delta, max_edges=None)
    if args.motifs != MOTIF_KINDS:
        truth.counts = {s: (c if signature_category(s) in args.motifs else 0)
                        for s, c in truth.counts.items()}
    diff = engine.diff(truth)
    for sig, (got, want) in diff.items():
        print(f"MISMATCH {sig} ({label_for_signature(sig)}): engine={got} oracle={want}")
    matched = len(ALL_SIGNATURES) - len(diff)
    print(f"{matched}/{len(ALL_SIGNATURES)} match")
    return EXIT_OK if not diff else EXIT_MISMATCH


def census_digest(census: MotifCensus) -> str:
    payload = ",".join(f"{s}={census[s]}" for s in ALL_SIGNATURES)
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


def cmd_bench(args) -> int:
    fields = ["threads", "repeat"]
    for phase in PHASES + ("total",):
        fields += [f"{phase}_min_ms", f"{phase}_median_ms"]
    fields += ["speedup", "census"]
    rows, digests, baseline = [], set(), None
    for threads in args.threads:
        runs = []
        for _ in range(args.repeat):
            report = run_pipeline(args.input, _config(args, threads))
            report.timings["total"] = sum(report.timings.get(p, 0.0) for p in PHASES)
            digests.add(census_digest(report.census))
            runs.append(report.timings)
        row = {"threads": threads, "repeat": args.repeat}
        for phase in PHASES + ("total",):
            values = [r.get(phase, 0.0) for r in runs]
            row[f"{phase}_min_ms"] = f"{min(values):.3f}"
            row[f"{phase}_median_ms"] = f"{statistics.median(values):.3f}"
        total = min(r["total"] for r in runs)
        baseline = total if baseline is None else baseline
        row["speedup"] = f"{baseline / total:.3f}" if total > 0 else "nan"
        row["census"] = census_digest(report.census)
        rows.append(row)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    _emit(args.output, buf.getvalue())
    if len(digests) != 1:
        print(f"census differs between runs: {sorted(digests)}", file=sys.stderr)
        return EXIT_NONDETERMINISTIC
    return EXIT_OK


def cmd_gen(args) -> int:
    try:
        graph = generate_random_graph(args.nodes, args.edges, args.t_max, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    out = _open_out(args.output)
    try:
        write_edge_list(graph, out)
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


COMMANDS = {"count": cmd_count, "verify": cmd_verify, "bench": cmd_bench, "gen": cmd_gen}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CounterOverflowError as exc:
        print(f"overflow: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OracleInputTooLarge as exc:
        print(f"refusing: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE


if __name__ == "__main__":
    sys.exit(main())
