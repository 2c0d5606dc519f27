"""Seeded randomized verification workloads.

Each trial builds an index from random input, checks its structural
invariants, and compares every supported query against the matching scan
oracle, including answers with the global route forced. All randomness
flows from one seed, so a rerun reproduces the same trials bit for bit.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from .index import SubstringRangeIndex
from .model import LabeledString
from .oracle import (
    naive_count,
    naive_empty,
    naive_gap_search,
    naive_interval_search,
    naive_position_search,
    naive_report,
)
from .reductions import (
    GappedPatternIndex,
    IntervalRestrictedIndex,
    PositionRestrictedIndex,
)

MODES = ("srr", "prss", "interval", "gap")


@dataclass(frozen=True)
class WorkloadSpec:
    mode: str
    trials: int = 1000
    max_len: int = 512
    alphabet: bytes = b"abcd"
    label_bound: int = 1024
    seed: int = 0

    def validated(self) -> "WorkloadSpec":
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.trials < 1 or self.max_len < 1 or self.label_bound < 0:
            raise ValueError("trials and max_len must be >= 1, label_bound >= 0")
        if not self.alphabet:
            raise ValueError("alphabet must be nonempty")
        return self


@dataclass
class Mismatch:
    trial: int
    text: bytes
    labels: list[int] | None
    query: str
    expected: object
    got: object

    def describe(self) -> str:
        lines = [f"MISMATCH trial={self.trial}", f"text={self.text!r}"]
        if self.labels is not None:
            lines.append(f"labels={self.labels}")
        lines.append(f"query={self.query}")
        lines.append(f"expected={self.expected!r}")
        lines.append(f"got={self.got!r}")
        return "\n".join(lines)


@dataclass
class WorkloadReport:
    spec: WorkloadSpec
    trials: int = 0
    invariant_checks: int = 0
    path_counts: dict[str, int] = field(default_factory=dict)
    mismatches: list[Mismatch] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.mismatches


def _foreign_byte(alphabet: bytes) -> int | None:
    present = set(alphabet)
    for b in range(256):
        if b not in present:
            return b
    return None


def _random_text(rng: random.Random, spec: WorkloadSpec) -> bytes:
    n = rng.randint(1, spec.max_len)
    return bytes(rng.choices(spec.alphabet, k=n))


def _random_pattern(rng: random.Random, text: bytes, alphabet: bytes,
                    foreign: int | None, allow_empty: bool = True) -> bytes:
    floor = 0 if allow_empty else 1
    if rng.random() < 0.5:
        start = rng.randint(1, len(text))
        length = rng.randint(floor, max(floor, min(12, len(text) - start + 1)))
        piece = text[start - 1:start - 1 + length]
        if piece or allow_empty:
            return piece
    length = rng.randint(max(floor, 1), 8)
    body = bytes(rng.choices(alphabet, k=length))
    if foreign is not None and rng.random() < 0.15:
        body += bytes([foreign])
    return body


def _label_range(rng: random.Random, bound: int) -> tuple[int, int]:
    roll = rng.random()
    if roll < 0.1:
        return 0, bound
    if roll < 0.2:
        point = rng.randint(0, bound)
        return point, point
    low = rng.randint(0, bound)
    return low, rng.randint(low, bound)


def _position_range(rng: random.Random, n: int) -> tuple[int, int]:
    low = rng.randint(1, n)
    return low, rng.randint(low, n)


def _check_invariants(index, report: WorkloadReport, trial: int,
                      text: bytes, labels) -> bool:
    core = index if isinstance(index, SubstringRangeIndex) else index.index_
    try:
        core.check_invariants()
    except AssertionError as exc:
        report.mismatches.append(Mismatch(
            trial, text, labels, "invariant-check", "all invariants hold",
            str(exc),
        ))
        return False
    report.invariant_checks += 1
    return True


def _note(report, trial, text, labels, query, expected, got) -> None:
    if expected != got:
        report.mismatches.append(
            Mismatch(trial, text, labels, query, expected, got)
        )


def _run_srr_trial(rng, spec, report, trial, foreign) -> None:
    text = _random_text(rng, spec)
    labels = [rng.randint(0, spec.label_bound) for _ in range(len(text))]
    source = LabeledString(text, labels, spec.label_bound)
    index = SubstringRangeIndex().fit(source)
    if not _check_invariants(index, report, trial, text, labels):
        return
    patterns = [_random_pattern(rng, text, spec.alphabet, foreign)
                for _ in range(2)]
    # a long substring lands on a deep locus, exercising the global route
    start = rng.randint(1, len(text))
    patterns.append(text[start - 1:start - 1 + rng.randint(13, 32)])
    for pattern in patterns:
        low, high = _label_range(rng, spec.label_bound)
        tag = f"P={pattern!r} range=[{low},{high}]"
        want = naive_report(source, pattern, low, high)
        got, stats = index.report_with_stats(pattern, low, high)
        report.path_counts[stats.path.value] = (
            report.path_counts.get(stats.path.value, 0) + 1
        )
        _note(report, trial, text, labels, f"report {tag}", want, got)
        _note(report, trial, text, labels, f"count {tag}",
              naive_count(source, pattern, low, high),
              index.count(pattern, low, high))
        _note(report, trial, text, labels, f"empty {tag}",
              naive_empty(source, pattern, low, high),
              index.is_empty(pattern, low, high))
        index._forced_path = "2d"
        try:
            _note(report, trial, text, labels, f"report/forced-2d {tag}", want,
                  index.report(pattern, low, high))
            _note(report, trial, text, labels, f"count/forced-2d {tag}",
                  naive_count(source, pattern, low, high),
                  index.count(pattern, low, high))
            _note(report, trial, text, labels, f"empty/forced-2d {tag}",
                  naive_empty(source, pattern, low, high),
                  index.is_empty(pattern, low, high))
        finally:
            index._forced_path = None


def _run_prss_trial(rng, spec, report, trial, foreign) -> None:
    text = _random_text(rng, spec)
    index = PositionRestrictedIndex().fit(text)
    if not _check_invariants(index, report, trial, text, None):
        return
    for _ in range(2):
        pattern = _random_pattern(rng, text, spec.alphabet, foreign)
        low, high = _position_range(rng, len(text))
        _note(report, trial, text, None,
              f"prss P={pattern!r} range=[{low},{high}]",
              naive_position_search(text, pattern, low, high),
              index.search(pattern, low, high))


def _run_interval_trial(rng, spec, report, trial, foreign) -> None:
    text = _random_text(rng, spec)
    n = len(text)
    intervals = []
    for _ in range(rng.randint(0, 16)):
        s = rng.randint(1, n)
        intervals.append((s, rng.randint(s, n)))
    index = IntervalRestrictedIndex().fit(text, intervals)
    if not _check_invariants(index, report, trial, text, None):
        return
    for _ in range(2):
        pattern = _random_pattern(rng, text, spec.alphabet, foreign)
        low, high = _position_range(rng, n)
        _note(report, trial, text, None,
              f"interval pi={intervals} P={pattern!r} range=[{low},{high}]",
              naive_interval_search(text, intervals, pattern, low, high),
              index.search(pattern, low, high))


def _run_gap_trial(rng, spec, report, trial, foreign) -> None:
    text = _random_text(rng, spec)
    n = len(text)
    gap = rng.randint(0, 8)
    index = GappedPatternIndex(gap=gap).fit(text)
    if not _check_invariants(index, report, trial, text, None):
        return
    for _ in range(2):
        len1, len2 = rng.randint(1, 4), rng.randint(1, 4)
        if rng.random() < 0.5 and n >= len1 + gap + len2:
            i = rng.randint(1, n - len1 - gap - len2 + 1)
            first = text[i - 1:i - 1 + len1]
            second = text[i - 1 + len1 + gap:i - 1 + len1 + gap + len2]
        else:
            first = bytes(rng.choices(spec.alphabet, k=len1))
            second = bytes(rng.choices(spec.alphabet, k=len2))
        _note(report, trial, text, None,
              f"gap d={gap} P1={first!r} P2={second!r}",
              naive_gap_search(text, gap, first, second),
              index.search(first, second))


_TRIAL_RUNNERS = {
    "srr": _run_srr_trial,
    "prss": _run_prss_trial,
    "interval": _run_interval_trial,
    "gap": _run_gap_trial,
}


def run_workload(spec: WorkloadSpec) -> WorkloadReport:
    """Run every requested trial; collects mismatches instead of raising."""
    spec = spec.validated()
    rng = random.Random(spec.seed)
    report = WorkloadReport(spec)
    runner = _TRIAL_RUNNERS[spec.mode]
    foreign = _foreign_byte(spec.alphabet)
    started = time.perf_counter()
    for trial in range(1, spec.trials + 1):
        runner(rng, spec, report, trial, foreign)
        report.trials += 1
    report.elapsed = time.perf_counter() - started
    return report


def english_like_text(size: int, seed: int = 0) -> bytes:
    """Synthetic prose: skewed word frequencies, single-space separated."""
    rng = random.Random(seed)
    letters = "etaoinshrdlucmfwypvbgkjqxz"
    letter_weights = [12, 9, 8, 8, 7.5, 7, 6.3, 6, 6, 4.3, 4, 2.8, 2.8, 2.6,
                      2.4, 2.2, 2, 1.9, 1.5, 1.3, 0.8, 0.2, 0.15, 0.1, 0.1, 0.07]
    vocab = [
        "".join(rng.choices(letters, weights=letter_weights,
                            k=rng.choices(range(2, 10),
                                          weights=[6, 12, 14, 12, 9, 6, 4, 2])[0]))
        for _ in range(4000)
    ]
    cum = []
    acc = 0.0
    for rank in range(1, len(vocab) + 1):
        acc += 1.0 / rank
        cum.append(acc)
    pieces: list[str] = []
    total = 0
    while total < size:
        for word in rng.choices(vocab, cum_weights=cum, k=2000):
            pieces.append(word)
            total += len(word) + 1
            if total >= size:
                break
    return " ".join(pieces).encode("ascii")[:size]
