"""The core label-range substring index."""

import random

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from substrange import (
    LabeledString,
    QueryPath,
    RangeOutOfBounds,
    SubstringRangeIndex,
    ValidationError,
    counting_cutoff,
    index_to_bytes,
    naive_count,
    naive_empty,
    naive_report,
    reporting_cutoff,
)


@pytest.fixture(scope="module")
def banana():
    return SubstringRangeIndex().fit(b"banana")


class TestDefaults:
    def test_reporting_cutoff_values(self):
        # ceil(log2 log2 (u + 2)), floored at 1
        assert reporting_cutoff(6) == 2
        assert reporting_cutoff(0) == 1
        assert reporting_cutoff(2) == 1
        # log2(65538) is a hair over 16, so the ceiling lands at 5
        assert reporting_cutoff(1 << 16) == 5

    def test_counting_cutoff_values(self):
        assert counting_cutoff(6) == 2
        assert counting_cutoff(1) == 1

    def test_banana_uses_cutoff_two(self, banana):
        assert banana.depth_cutoff_ == 2
        assert banana.n_ == 6
        assert banana.label_bound_ == 6

    def test_counting_layout_same_answers(self):
        a = SubstringRangeIndex(optimize_for="counting").fit(b"banana")
        assert a.depth_cutoff_ == 2
        assert a.report(b"ana", 1, 6) == [2, 4]
        assert a.count(b"a", 6, 6) == 1


class TestWorkedQueries:
    def test_report(self, banana):
        assert banana.report(b"ana", 1, 6) == [2, 4]
        assert banana.report(b"ana", 4, 6) == [4]
        assert banana.report(b"zz", 1, 6) == []

    def test_count(self, banana):
        assert banana.count(b"ana", 1, 6) == 2
        assert banana.count(b"a", 6, 6) == 1
        assert banana.count(b"zz", 1, 6) == 0

    def test_empty(self, banana):
        assert banana.is_empty(b"ana", 1, 6) is False
        assert banana.is_empty(b"ana", 5, 6) is True
        assert banana.is_empty(b"zz", 1, 6) is True

    def test_empty_pattern_matches_everywhere(self, banana):
        assert banana.report(b"", 1, 6) == [1, 2, 3, 4, 5, 6]
        assert banana.count(b"", 1, 6) == 6

    def test_str_pattern_accepted(self, banana):
        assert banana.report("ana", 1, 6) == [2, 4]

    def test_root_store_holds_every_label(self, banana):
        store = banana.stores_[0]
        assert len(store) == 6
        assert store.report(1, 6).tolist() == [1, 2, 3, 4, 5, 6]


class TestRouting:
    def test_shallow_locus_uses_per_node_store(self, banana):
        hits, stats = banana.report_with_stats(b"a", 1, 6)
        assert hits == [2, 4, 6]
        assert stats.path is QueryPath.TOP_1D
        assert stats.path == "TopTree1D"
        assert stats.occurrences == 3

    def test_deep_locus_uses_global_grid(self, banana):
        hits, stats = banana.report_with_stats(b"anana", 1, 6)
        assert hits == [2]
        assert stats.path is QueryPath.BOTTOM_2D

    def test_absent_pattern_reports_no_locus(self, banana):
        hits, stats = banana.report_with_stats(b"zz", 1, 6)
        assert hits == []
        assert stats.path is QueryPath.NO_LOCUS
        assert stats.occurrences == 0

    def test_forced_grid_route_agrees(self, banana):
        want = banana.report(b"a", 1, 6)
        banana._forced_path = "2d"
        try:
            hits, stats = banana.report_with_stats(b"a", 1, 6)
            assert stats.path is QueryPath.BOTTOM_2D
            assert hits == want
            assert banana.count(b"a", 6, 6) == 1
            assert banana.is_empty(b"ana", 5, 6) is True
        finally:
            banana._forced_path = None

    def test_routing_by_parent_depth_not_own_depth(self):
        # locus of "ba" is the leaf "banana" (string depth 6), but its
        # parent is the root, so the leaf itself still sits in the top region
        idx = SubstringRangeIndex().fit(b"banana")
        _, stats = idx.report_with_stats(b"ba", 1, 6)
        assert stats.path is QueryPath.TOP_1D


class TestValidation:
    def test_range_checks(self, banana):
        with pytest.raises(RangeOutOfBounds):
            banana.report(b"a", 0, 7)
        with pytest.raises(RangeOutOfBounds):
            banana.count(b"a", -1, 3)
        with pytest.raises(RangeOutOfBounds):
            banana.is_empty(b"a", 4, 2)

    def test_fit_requires_bound_with_explicit_labels(self):
        with pytest.raises(ValidationError):
            SubstringRangeIndex().fit(b"ab", labels=[1, 2])

    def test_fit_rejects_labels_with_labeled_string(self):
        src = LabeledString.positional(b"ab")
        with pytest.raises(ValidationError):
            SubstringRangeIndex().fit(src, labels=[1, 2])
        with pytest.raises(ValidationError):
            SubstringRangeIndex().fit(src, label_bound=5)

    def test_fit_validates_the_source(self):
        with pytest.raises(ValidationError):
            SubstringRangeIndex().fit(b"abc", [1, 2], 5)
        with pytest.raises(ValidationError):
            SubstringRangeIndex().fit(b"abc", [1, 9, 2], 5)
        with pytest.raises(ValidationError):
            SubstringRangeIndex().fit(b"")

    def test_bad_params_rejected_at_fit(self):
        with pytest.raises(ValueError):
            SubstringRangeIndex(optimize_for="speed").fit(b"ab")
        with pytest.raises(ValidationError):
            SubstringRangeIndex(depth_cutoff=-1).fit(b"ab")

    def test_query_before_fit(self):
        with pytest.raises(NotFittedError):
            SubstringRangeIndex().report(b"a", 0, 1)


class TestEstimatorContract:
    def test_get_params(self):
        est = SubstringRangeIndex(depth_cutoff=3, optimize_for="counting")
        assert est.get_params() == {
            "depth_cutoff": 3,
            "optimize_for": "counting",
        }

    def test_clone_keeps_params_drops_state(self, banana):
        fresh = clone(banana)
        assert fresh.get_params() == banana.get_params()
        assert not hasattr(fresh, "tree_")

    def test_fit_returns_self(self):
        est = SubstringRangeIndex()
        assert est.fit(b"ab") is est


class TestAgainstOracle:
    def test_random_labeled_instances(self):
        rng = random.Random(321)
        for _ in range(120):
            n = rng.randint(1, 80)
            text = bytes(rng.choices(b"abc", k=n))
            bound = rng.choice((0, 1, 7, 100))
            labels = [rng.randint(0, bound) for _ in range(n)]
            src = LabeledString(text, labels, bound)
            idx = SubstringRangeIndex(
                depth_cutoff=rng.choice((None, 0, 1, 4))
            ).fit(src)
            idx.check_invariants()
            for _ in range(4):
                m = rng.randint(0, 5)
                if rng.random() < 0.5 and m <= n:
                    s = rng.randint(1, n - m + 1)
                    pattern = text[s - 1:s - 1 + m]
                else:
                    pattern = bytes(rng.choices(b"abcz", k=m))
                lo = rng.randint(0, bound)
                hi = rng.randint(lo, bound)
                assert idx.report(pattern, lo, hi) == \
                    naive_report(src, pattern, lo, hi)
                assert idx.count(pattern, lo, hi) == \
                    naive_count(src, pattern, lo, hi)
                assert idx.is_empty(pattern, lo, hi) == \
                    naive_empty(src, pattern, lo, hi)

    def test_duplicate_labels_everywhere(self):
        src = LabeledString(b"abababab", [5] * 8, 5)
        idx = SubstringRangeIndex().fit(src)
        assert idx.report(b"ab", 5, 5) == [1, 3, 5, 7]
        assert idx.report(b"ab", 0, 4) == []
        assert idx.count(b"ba", 0, 5) == 3


class TestDeterminism:
    def test_same_input_same_bytes(self):
        src = LabeledString(b"mississippi", list(range(11, 0, -1)), 11)
        a = SubstringRangeIndex().fit(src)
        b = SubstringRangeIndex().fit(src)
        assert index_to_bytes(a) == index_to_bytes(b)

    def test_invariants_across_cutoffs(self):
        for cutoff in (0, 1, 2, 5, 50):
            idx = SubstringRangeIndex(depth_cutoff=cutoff).fit(b"mississippi")
            idx.check_invariants()
            assert idx.report(b"ssi", 1, 11) == [3, 6]

    def test_store_layout_is_label_sorted(self):
        src = LabeledString(b"banana", [4, 2, 1, 3, 0, 5], 6)
        idx = SubstringRangeIndex().fit(src)
        for store in idx.stores_.values():
            labs = store.labels.tolist()
            assert labs == sorted(labs)
