"""Reference answers by direct scan, used to cross-check every index.

These functions restate the query definitions with no shared machinery:
no suffix structures, no label arrays for the gap case, nothing reused
from the indexes they validate. All take O(n * m) or worse and exist for
verification, not speed.
"""

from __future__ import annotations

from .model import LabeledString, as_pattern, as_text


def _matches(text: bytes, pattern: bytes, i: int) -> bool:
    # 1-based i; a window running past the end never matches a nonempty pattern
    return text[i - 1:i - 1 + len(pattern)] == pattern


def naive_report(source: LabeledString, pattern, low: int, high: int) -> list[int]:
    """Occurrence positions of the pattern whose label is in [low, high]."""
    pattern = as_pattern(pattern)
    return [
        i
        for i in range(1, source.n + 1)
        if low <= int(source.labels[i - 1]) <= high
        and _matches(source.text, pattern, i)
    ]


def naive_count(source: LabeledString, pattern, low: int, high: int) -> int:
    pattern = as_pattern(pattern)
    total = 0
    for i in range(1, source.n + 1):
        if low <= int(source.labels[i - 1]) <= high and _matches(
            source.text, pattern, i
        ):
            total += 1
    return total


def naive_empty(source: LabeledString, pattern, low: int, high: int) -> bool:
    pattern = as_pattern(pattern)
    for i in range(1, source.n + 1):
        if low <= int(source.labels[i - 1]) <= high and _matches(
            source.text, pattern, i
        ):
            return False
    return True


def naive_position_search(text, pattern, low: int, high: int) -> list[int]:
    """Occurrences whose start position is in [low, high]."""
    text = as_text(text)
    pattern = as_pattern(pattern)
    return [
        i for i in range(1, len(text) + 1)
        if low <= i <= high and _matches(text, pattern, i)
    ]


def naive_interval_search(text, intervals, pattern, low: int, high: int) -> list[int]:
    """Occurrences inside some interval, start position in [low, high]."""
    text = as_text(text)
    pattern = as_pattern(pattern)
    return [
        i
        for i in range(1, len(text) + 1)
        if low <= i <= high
        and any(s <= i <= f for s, f in intervals)
        and _matches(text, pattern, i)
    ]


def naive_gap_search(text, gap: int, first, second) -> list[int]:
    """Starts i where first matches at i and second at i + len(first) + gap."""
    text = as_text(text)
    first = as_pattern(first)
    second = as_pattern(second)
    return [
        i
        for i in range(1, len(text) + 1)
        if _matches(text, first, i)
        and _matches(text, second, i + len(first) + gap)
    ]
