"""Command-line front end: build, query, verify, and bench."""

from __future__ import annotations

import argparse
import os
import random
import statistics
import sys
import time
from collections import Counter
from pathlib import Path

from .index import SubstringRangeIndex
from .model import IndexFormatError, ValidationError, WrongIndexKind
from .reductions import (
    GappedPatternIndex,
    IntervalRestrictedIndex,
    PositionRestrictedIndex,
)
from .serialize import kind_name, load_index, save_index
from .workloads import MODES, WorkloadSpec, english_like_text, run_workload


def _range_arg(value: str) -> tuple[int, int]:
    # inclusive on both ends, e.g. "1:6"
    low, sep, high = value.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError(
            f"range must look like a:b, got {value!r}")
    try:
        return int(low), int(high)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"range endpoints must be integers, got {value!r}") from None


def _decode_pattern(raw: str, as_hex: bool) -> bytes:
    if as_hex:
        try:
            return bytes.fromhex(raw)
        except ValueError:
            raise ValidationError(f"invalid hex pattern {raw!r}") from None
    return os.fsencode(raw)


def _read_labels(path: str) -> list[int]:
    tokens = Path(path).read_text().split()
    try:
        return [int(tok) for tok in tokens]
    except ValueError:
        raise ValidationError(
            f"label file {path} must contain whitespace-separated integers"
        ) from None


def _read_intervals(path: str) -> list[tuple[int, int]]:
    pairs = []
    for line_no, line in enumerate(Path(path).read_text().splitlines(), 1):
        parts = line.split()
        if not parts:
            continue
        if len(parts) != 2:
            raise ValidationError(
                f"interval file {path} line {line_no}: expected 's f', "
                f"got {line!r}")
        try:
            pairs.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise ValidationError(
                f"interval file {path} line {line_no}: endpoints must be "
                f"integers") from None
    return pairs


def _core_of(index) -> SubstringRangeIndex:
    if isinstance(index, SubstringRangeIndex):
        return index
    return index.index_


def _cmd_build(args) -> int:
    data = Path(args.text).read_bytes()
    started = time.perf_counter()
    if args.labels is not None:
        labels = _read_labels(args.labels)
        if args.u is not None:
            bound = args.u
        else:
            bound = max(labels) if labels else 0
        index = SubstringRangeIndex(
            depth_cutoff=args.cutoff, optimize_for=args.optimize_for
        ).fit(data, labels, bound)
    elif args.positional:
        index = PositionRestrictedIndex(
            depth_cutoff=args.cutoff, optimize_for=args.optimize_for
        ).fit(data)
    elif args.intervals is not None:
        intervals = _read_intervals(args.intervals)
        index = IntervalRestrictedIndex(
            depth_cutoff=args.cutoff, optimize_for=args.optimize_for
        ).fit(data, intervals)
    else:
        index = GappedPatternIndex(
            gap=args.gap, depth_cutoff=args.cutoff,
            optimize_for=args.optimize_for,
        ).fit(data)
    elapsed = time.perf_counter() - started
    save_index(index, args.out)
    core = _core_of(index)
    print(f"kind={kind_name(index)} n={core.n_} u={core.label_bound_} "
          f"cutoff={core.depth_cutoff_} nodes={core.tree_.node_count} "
          f"build_time={elapsed:.3f}s")
    return 0


def _print_positions(positions) -> None:
    for pos in positions:
        print(pos)
    print(f"occ={len(positions)}")


def _cmd_query(args) -> int:
    index = load_index(args.index)
    kind = kind_name(index)
    sub = args.qkind

    if sub in ("report", "count", "empty"):
        if kind not in ("srr", "prss"):
            raise WrongIndexKind(
                f"query {sub} needs an srr or prss index, got {kind}")
        core = _core_of(index)
        pattern = _decode_pattern(args.pattern, args.hex)
        low, high = args.range
        if sub == "report":
            _print_positions(core.report(pattern, low, high))
        elif sub == "count":
            print(core.count(pattern, low, high))
        else:
            print("true" if core.is_empty(pattern, low, high) else "false")
        return 0

    if sub == "prss":
        if kind != "prss":
            raise WrongIndexKind(f"query prss needs a prss index, got {kind}")
        pattern = _decode_pattern(args.pattern, args.hex)
        low, high = args.range
        _print_positions(index.search(pattern, low, high))
        return 0

    if sub == "interval":
        if kind != "interval":
            raise WrongIndexKind(
                f"query interval needs an interval index, got {kind}")
        pattern = _decode_pattern(args.pattern, args.hex)
        low, high = args.range
        _print_positions(index.search(pattern, low, high))
        return 0

    # gap
    if kind != "gap":
        raise WrongIndexKind(f"query gap needs a gap index, got {kind}")
    first = _decode_pattern(args.p1, args.hex)
    second = _decode_pattern(args.p2, args.hex)
    _print_positions(index.search(first, second))
    return 0


def _cmd_verify(args) -> int:
    spec = WorkloadSpec(
        mode=args.mode,
        trials=args.trials,
        max_len=args.max_len,
        alphabet=os.fsencode(args.alphabet),
        label_bound=args.label_bound,
        seed=args.seed,
    ).validated()
    report = run_workload(spec)
    if report.ok:
        print(f"{report.trials}/{report.trials} ok")
        return 0
    print(report.mismatches[0].describe())
    return 1


def _cmd_bench(args) -> int:
    seed = args.seed
    if args.index is not None:
        core = _core_of(load_index(args.index))
    else:
        text = english_like_text(args.random_text, seed)
        core = PositionRestrictedIndex().fit(text).index_
    data = core.source_.text
    n = core.n_
    bound = core.label_bound_

    try:
        lengths = [int(tok) for tok in args.lengths.split(",") if tok]
    except ValueError:
        raise ValidationError(
            f"--lengths must be comma-separated integers, "
            f"got {args.lengths!r}") from None

    rng = random.Random(seed)
    print(f"n={n} u={bound} cutoff={core.depth_cutoff_} "
          f"queries_per_bucket={args.queries}")
    print(f"{'bucket':<10} {'path':<10} {'queries':>7} {'median_us':>10}")

    def run_bucket(label: str, patterns: list[bytes]) -> None:
        times = []
        paths: Counter[str] = Counter()
        for pattern in patterns:
            t0 = time.perf_counter()
            _, stats = core.report_with_stats(pattern, 0, bound)
            times.append(time.perf_counter() - t0)
            paths[stats.path.value] += 1
        modal = paths.most_common(1)[0][0]
        median_us = statistics.median(times) * 1e6
        print(f"{label:<10} {modal:<10} {len(patterns):>7} {median_us:>10.1f}")

    for m in lengths:
        if m < 1 or m > n:
            continue
        patterns = []
        for _ in range(args.queries):
            start = rng.randint(1, n - m + 1)
            patterns.append(data[start - 1:start - 1 + m])
        run_bucket(f"m={m}", patterns)

    present = set(data)
    foreign = next((b for b in range(256) if b not in present), None)
    if foreign is not None:
        run_bucket("missing", [bytes([foreign]) * 4] * args.queries)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="substrange",
        description="Substring search restricted to position-label ranges.")
    sub = parser.add_subparsers(dest="command", required=True)

    build = sub.add_parser("build", help="build an index file from a text file")
    build.add_argument("--text", required=True, help="input text file (bytes)")
    build.add_argument("--out", required=True, help="output index file")
    source = build.add_mutually_exclusive_group(required=True)
    source.add_argument("--labels", help="file of per-position integer labels")
    source.add_argument("--positional", action="store_true",
                        help="label every position with itself")
    source.add_argument("--intervals",
                        help="file of 's f' interval pairs, one per line")
    source.add_argument("--gap", type=int,
                        help="build a two-part pattern index with this gap")
    build.add_argument("--u", type=int, default=None,
                       help="declared label bound (with --labels; "
                            "default: max label)")
    build.add_argument("--cutoff", type=int, default=None,
                       help="override the top/bottom depth cutoff")
    build.add_argument("--optimize-for", choices=("reporting", "counting"),
                       default="reporting",
                       help="pick the default cutoff policy")
    build.set_defaults(func=_cmd_build)

    query = sub.add_parser("query", help="run one query against an index file")
    qsub = query.add_subparsers(dest="qkind", required=True)
    for name, text in (
        ("report", "positions of occurrences with labels in --range"),
        ("count", "number of occurrences with labels in --range"),
        ("empty", "whether no occurrence has a label in --range"),
        ("prss", "occurrences starting inside a position range"),
        ("interval", "occurrences starting inside the stored intervals"),
    ):
        qp = qsub.add_parser(name, help=text)
        qp.add_argument("--index", required=True, help="index file")
        qp.add_argument("--pattern", required=True, help="pattern bytes")
        qp.add_argument("--hex", action="store_true",
                        help="decode --pattern as hex")
        qp.add_argument("--range", required=True, type=_range_arg,
                        metavar="a:b", help="inclusive range")
        qp.set_defaults(func=_cmd_query, qkind=name)
    gap = qsub.add_parser("gap", help="two-part pattern with the built gap")
    gap.add_argument("--index", required=True, help="index file")
    gap.add_argument("--p1", required=True, help="first pattern part")
    gap.add_argument("--p2", required=True, help="second pattern part")
    gap.add_argument("--hex", action="store_true",
                     help="decode --p1/--p2 as hex")
    gap.set_defaults(func=_cmd_query, qkind="gap")

    verify = sub.add_parser(
        "verify", help="compare indexed answers against brute-force oracles")
    verify.add_argument("--mode", required=True, choices=MODES)
    verify.add_argument("--trials", type=int, default=1000)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--max-len", type=int, default=512)
    verify.add_argument("--alphabet", default="abcd")
    verify.add_argument("--label-bound", type=int, default=1024)
    verify.set_defaults(func=_cmd_verify)

    bench = sub.add_parser(
        "bench", help="median query latency per pattern-length bucket")
    src = bench.add_mutually_exclusive_group(required=True)
    src.add_argument("--index", help="existing index file")
    src.add_argument("--random-text", type=int, metavar="SIZE",
                     help="bench a fresh positional index over SIZE bytes "
                          "of generated text")
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--lengths", default="1,2,4,8,16,64",
                       help="comma-separated pattern lengths")
    bench.add_argument("--queries", type=int, default=200,
                       help="queries per bucket")
    bench.set_defaults(func=_cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except IndexFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
