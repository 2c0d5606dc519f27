"""The core index: substring occurrences filtered by a label range.

Queries resolve the pattern to its suffix-tree locus, then take one of two
routes. Loci in the top region (parent string depth at most the cutoff) own
a private sorted-label store; deeper loci are answered by one global
wavelet matrix over (suffix order, label) points. Both routes return the
same answers; they differ only in cost profile.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .model import (
    LabeledString,
    ValidationError,
    as_pattern,
    check_label_range,
)
from .ranges import SortedLabelStore, WaveletMatrix
from .suffix import SuffixTree


class QueryPath(str, Enum):
    """Which route answered a query."""

    TOP_1D = "TopTree1D"
    BOTTOM_2D = "Bottom2D"
    NO_LOCUS = "NoLocus"


@dataclass(frozen=True)
class QueryStats:
    path: QueryPath
    occurrences: int


def reporting_cutoff(label_bound: int) -> int:
    """Default depth cutoff for report/emptiness layouts: ~log log of bound."""
    return max(1, math.ceil(math.log2(math.log2(label_bound + 2))))


def counting_cutoff(n: int) -> int:
    """Default depth cutoff for counting layouts: ~log n / log log n."""
    return max(1, math.ceil(math.log2(n) / math.log2(math.log2(n + 2))))


def _build_top_stores(tree: SuffixTree, labels_by_order: np.ndarray,
                      positions_by_order: np.ndarray) -> dict[int, SortedLabelStore]:
    """One sorted-label store per top node, cut from a single global sort."""
    ids = tree.top_node_ids()
    sizes = tree.hi[ids] - tree.lo[ids]
    starts = np.zeros(len(ids) + 1, dtype=np.int64)
    np.cumsum(sizes, out=starts[1:])
    total = int(starts[-1])
    # flat suffix-order index for every (store, member) pair
    member = np.arange(total, dtype=np.int64)
    owner = np.repeat(np.arange(len(ids), dtype=np.int64), sizes)
    ks = member - starts[owner] + tree.lo[ids][owner]
    flat_labels = labels_by_order[ks]
    flat_positions = positions_by_order[ks]
    order = np.lexsort((flat_positions, flat_labels, owner))
    flat_labels = flat_labels[order]
    flat_positions = flat_positions[order]
    stores: dict[int, SortedLabelStore] = {}
    for slot, node in enumerate(ids.tolist()):
        s, e = int(starts[slot]), int(starts[slot + 1])
        stores[node] = SortedLabelStore.from_sorted(
            flat_labels[s:e], flat_positions[s:e]
        )
    return stores


class SubstringRangeIndex(BaseEstimator):
    """Index a labeled text for substring queries filtered by label range.

    Parameters
    ----------
    depth_cutoff : int or None
        String depth at which per-node stores stop and the global structure
        takes over. None picks a default from the fitted input according to
        ``optimize_for``.
    optimize_for : {"reporting", "counting"}
        Which default cutoff to use. Both layouts answer every query type.

    After ``fit`` the index is immutable; concurrent readers are safe.
    """

    def __init__(self, depth_cutoff: int | None = None,
                 optimize_for: str = "reporting"):
        self.depth_cutoff = depth_cutoff
        self.optimize_for = optimize_for

    # -- fitting -----------------------------------------------------------

    def fit(self, text, labels=None, label_bound=None) -> "SubstringRangeIndex":
        """Build the index.

        ``text`` may be a ``LabeledString``; otherwise labels default to
        positional labeling (label(i) = i, bound = n) and explicit labels
        require an explicit ``label_bound``.
        """
        if isinstance(text, LabeledString):
            if labels is not None or label_bound is not None:
                raise ValidationError(
                    "labels/label_bound are already part of the LabeledString"
                )
            source = text
        elif labels is None:
            source = LabeledString.positional(text)
        else:
            if label_bound is None:
                raise ValidationError(
                    "label_bound is required when labels are given explicitly"
                )
            source = LabeledString(text, labels, label_bound)
        source.validate()
        if self.optimize_for not in ("reporting", "counting"):
            raise ValueError(
                f"optimize_for must be 'reporting' or 'counting', "
                f"not {self.optimize_for!r}"
            )
        if self.depth_cutoff is not None:
            cutoff = int(self.depth_cutoff)
            if cutoff < 0:
                raise ValidationError("depth_cutoff must be nonnegative")
        elif self.optimize_for == "counting":
            cutoff = counting_cutoff(source.n)
        else:
            cutoff = reporting_cutoff(source.label_bound)

        tree = SuffixTree(source.text, cutoff)
        labels_by_order = source.labels[tree.sa]
        positions_by_order = tree.sa + 1
        self.source_ = source
        self.tree_ = tree
        self.depth_cutoff_ = cutoff
        self.n_ = source.n
        self.label_bound_ = source.label_bound
        self.stores_ = _build_top_stores(tree, labels_by_order,
                                         positions_by_order)
        self.grid_ = WaveletMatrix(labels_by_order, positions_by_order)
        self._forced_path = None  # test hook: "2d" forces the global route
        return self

    # -- queries -----------------------------------------------------------

    def _resolve(self, pattern, low: int, high: int):
        check_is_fitted(self, "tree_")
        check_label_range(low, high, self.label_bound_)
        return self.tree_.locus(as_pattern(pattern))

    def _use_grid(self, node: int) -> bool:
        if getattr(self, "_forced_path", None) == "2d":
            return True
        return not bool(self.tree_.top[node])

    def report(self, pattern, low: int, high: int) -> list[int]:
        """Occurrence positions with label in [low, high], ascending."""
        positions, _ = self.report_with_stats(pattern, low, high)
        return positions

    def report_with_stats(self, pattern, low: int,
                          high: int) -> tuple[list[int], QueryStats]:
        """Like ``report`` but also says which route answered."""
        loc = self._resolve(pattern, low, high)
        if loc is None:
            return [], QueryStats(QueryPath.NO_LOCUS, 0)
        if self._use_grid(loc.node):
            hits = self.grid_.report(loc.low, loc.high, low, high)
            path = QueryPath.BOTTOM_2D
        else:
            hits = self.stores_[loc.node].report(low, high)
            path = QueryPath.TOP_1D
        positions = sorted(int(p) for p in hits)
        return positions, QueryStats(path, len(positions))

    def count(self, pattern, low: int, high: int) -> int:
        """Number of occurrences with label in [low, high]."""
        loc = self._resolve(pattern, low, high)
        if loc is None:
            return 0
        if self._use_grid(loc.node):
            return int(self.grid_.count(loc.low, loc.high, low, high))
        return int(self.stores_[loc.node].count(low, high))

    def is_empty(self, pattern, low: int, high: int) -> bool:
        """True when no occurrence carries a label in [low, high]."""
        loc = self._resolve(pattern, low, high)
        if loc is None:
            return True
        if self._use_grid(loc.node):
            return bool(self.grid_.is_empty(loc.low, loc.high, low, high))
        return bool(self.stores_[loc.node].is_empty(low, high))

    # -- integrity ---------------------------------------------------------

    def check_invariants(self) -> None:
        """Raise AssertionError unless the fitted structures are coherent."""
        check_is_fitted(self, "tree_")
        tree = self.tree_
        tree.check_structure()
        labels_by_order = self.source_.labels[tree.sa]
        ids = tree.top_node_ids()
        sizes = np.empty(len(ids), dtype=np.int64)
        for slot, node in enumerate(ids.tolist()):
            store = self.stores_[node]
            lo, hi = int(tree.lo[node]), int(tree.hi[node])
            sizes[slot] = len(store)
            assert len(store) == hi - lo, "store size must match the interval"
            assert np.array_equal(
                store.labels, np.sort(labels_by_order[lo:hi])
            ), "store must hold exactly the descendant labels"
        assert set(self.stores_) == set(ids.tolist()), \
            "stores exist exactly for top nodes"
        depths = tree.node_depths()
        per_level = np.bincount(depths[ids], weights=sizes)
        assert per_level.size == 0 or per_level.max() <= self.n_, \
            "per-level store mass must not exceed n"
        assert self.grid_.size == self.n_, "grid must hold one point per position"
