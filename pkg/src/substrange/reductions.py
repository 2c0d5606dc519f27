"""Specialized indexes built by relabeling the core index.

Each wrapper picks a labeling of the text so that one core label-range
query answers its own, narrower question.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .index import SubstringRangeIndex
from .model import (
    EmptyPattern,
    EmptyText,
    IntervalOutOfBounds,
    LabeledString,
    ValidationError,
    as_pattern,
    as_text,
    check_position_range,
)
from .suffix import SuffixTree


class PositionRestrictedIndex(BaseEstimator):
    """Report occurrences whose start position falls in a given range.

    Labels every position with itself, so a position range is a label range.
    """

    def __init__(self, depth_cutoff: int | None = None,
                 optimize_for: str = "reporting"):
        self.depth_cutoff = depth_cutoff
        self.optimize_for = optimize_for

    def fit(self, text) -> "PositionRestrictedIndex":
        source = LabeledString.positional(as_text(text))
        self.index_ = SubstringRangeIndex(
            self.depth_cutoff, self.optimize_for
        ).fit(source)
        self.n_ = source.n
        return self

    def search(self, pattern, low: int, high: int) -> list[int]:
        """Occurrences of pattern starting in [low, high], ascending."""
        check_is_fitted(self, "index_")
        check_position_range(low, high, self.n_)
        return self.index_.report(pattern, low, high)


def interval_labels(n: int, intervals) -> np.ndarray:
    """Positional labels on covered positions, 0 elsewhere.

    Coverage is computed with a difference-array sweep, so overlapping and
    unsorted intervals cost O(n + len(intervals)).
    """
    diff = np.zeros(n + 2, dtype=np.int64)
    for s, f in intervals:
        s, f = int(s), int(f)
        if not (1 <= s <= f <= n):
            raise IntervalOutOfBounds(
                f"interval [{s}, {f}] invalid for text length {n}"
            )
        diff[s] += 1
        diff[f + 1] -= 1
    covered = np.cumsum(diff[1:n + 1]) > 0
    return np.where(covered, np.arange(1, n + 1, dtype=np.int64), 0)


class IntervalRestrictedIndex(BaseEstimator):
    """Report occurrences that start inside a fixed set of intervals.

    Positions outside every interval get label 0, covered ones their own
    position; queries must therefore use low >= 1.
    """

    def __init__(self, depth_cutoff: int | None = None,
                 optimize_for: str = "reporting"):
        self.depth_cutoff = depth_cutoff
        self.optimize_for = optimize_for

    def fit(self, text, intervals) -> "IntervalRestrictedIndex":
        data = as_text(text)
        if not data:
            raise EmptyText("text must be nonempty")
        labels = interval_labels(len(data), intervals)
        source = LabeledString(data, labels, len(data))
        self.index_ = SubstringRangeIndex(
            self.depth_cutoff, self.optimize_for
        ).fit(source)
        self.intervals_ = [(int(s), int(f)) for s, f in intervals]
        self.n_ = len(data)
        return self

    def search(self, pattern, low: int, high: int) -> list[int]:
        """Covered occurrences starting in [low, high], ascending."""
        check_is_fitted(self, "index_")
        check_position_range(low, high, self.n_)
        return self.index_.report(pattern, low, high)


@dataclass(frozen=True)
class GapSearchDetails:
    """Intermediate values of a gapped search, for inspection and tests."""

    reverse_span: tuple[int, int] | None  # suffix-order span of the reversed prefix
    inner_positions: list[int]            # matches of the second piece
    positions: list[int]                  # final occurrence starts


class GappedPatternIndex(BaseEstimator):
    """Report starts of `first + (gap arbitrary bytes) + second` matches.

    The gap width is fixed per index. Position i + len(first) + gap is
    labeled with the suffix order, in the reversed text, of the reversed
    prefix ending just before the gap window; the locus span of the
    reversed first piece then turns the query into one core range query
    on the second piece.
    """

    def __init__(self, gap: int, depth_cutoff: int | None = None,
                 optimize_for: str = "reporting"):
        self.gap = gap
        self.depth_cutoff = depth_cutoff
        self.optimize_for = optimize_for

    def fit(self, text) -> "GappedPatternIndex":
        data = as_text(text)
        n = len(data)
        if not data:
            raise EmptyText("text must be nonempty")
        gap = int(self.gap)
        if gap < 0:
            raise ValidationError("gap must be nonnegative")
        reverse_tree = SuffixTree(data[::-1], 1)
        labels = np.zeros(n, dtype=np.int64)
        if n >= gap + 2:
            here = np.arange(gap + 1, n, dtype=np.int64)  # 0-based i-1
            mirrored = n + gap - here  # 0-based start in the reversed text
            assert mirrored.min() >= 1 and mirrored.max() <= n - 1, \
                "mirrored starts must stay inside the reversed text"
            labels[here] = reverse_tree.rank[mirrored] + 1
        source = LabeledString(data, labels, n)
        self.index_ = SubstringRangeIndex(
            self.depth_cutoff, self.optimize_for
        ).fit(source)
        self.reverse_tree_ = reverse_tree
        self.n_ = n
        return self

    def search(self, first, second) -> list[int]:
        """Occurrence starts, ascending; both pieces must be nonempty."""
        return self.search_with_details(first, second).positions

    def search_with_details(self, first, second) -> GapSearchDetails:
        check_is_fitted(self, "index_")
        first = as_pattern(first)
        second = as_pattern(second)
        if not first or not second:
            raise EmptyPattern("both pattern pieces must be nonempty")
        loc = self.reverse_tree_.locus(first[::-1])
        if loc is None:
            return GapSearchDetails(None, [], [])
        inner = self.index_.report(second, loc.low, loc.high)
        offset = len(first) + int(self.gap)
        positions = sorted(i - offset for i in inner)
        return GapSearchDetails((loc.low, loc.high), inner, positions)
