"""The randomized verification harness itself."""

import pytest

from substrange import MODES, WorkloadSpec, english_like_text, run_workload


class TestSpec:
    def test_modes(self):
        assert MODES == ("srr", "prss", "interval", "gap")

    def test_validated_accepts_defaults(self):
        for mode in MODES:
            WorkloadSpec(mode=mode).validated()

    def test_validated_rejects_nonsense(self):
        with pytest.raises(ValueError):
            WorkloadSpec(mode="bogus").validated()
        with pytest.raises(ValueError):
            WorkloadSpec(mode="srr", trials=0).validated()
        with pytest.raises(ValueError):
            WorkloadSpec(mode="srr", max_len=0).validated()
        with pytest.raises(ValueError):
            WorkloadSpec(mode="srr", alphabet=b"").validated()


class TestRuns:
    @pytest.mark.parametrize("mode", MODES)
    def test_small_runs_pass(self, mode):
        report = run_workload(WorkloadSpec(mode=mode, trials=15, seed=5,
                                           max_len=100))
        assert report.ok
        assert report.trials == 15
        assert report.invariant_checks == 15
        assert report.mismatches == []

    def test_srr_counts_query_paths(self):
        report = run_workload(WorkloadSpec(mode="srr", trials=40, seed=5))
        assert sum(report.path_counts.values()) == 40 * 3
        assert set(report.path_counts) <= {"TopTree1D", "Bottom2D", "NoLocus"}

    def test_seeded_runs_repeat_exactly(self):
        a = run_workload(WorkloadSpec(mode="srr", trials=25, seed=9))
        b = run_workload(WorkloadSpec(mode="srr", trials=25, seed=9))
        assert a.path_counts == b.path_counts
        assert a.trials == b.trials
        assert a.ok and b.ok

    def test_single_byte_alphabet(self):
        report = run_workload(WorkloadSpec(mode="srr", trials=10, seed=2,
                                           alphabet=b"a", max_len=40,
                                           label_bound=3))
        assert report.ok

    def test_full_byte_alphabet_has_no_foreign_byte(self):
        alphabet = bytes(range(256))
        report = run_workload(WorkloadSpec(mode="prss", trials=5, seed=2,
                                           alphabet=alphabet, max_len=60))
        assert report.ok


class TestMismatchReporting:
    def test_describe_contains_the_instance(self):
        from substrange import Mismatch
        text = Mismatch(3, b"ab", [1, 2], "count P=b'a' range=[1,2]",
                        2, 1).describe()
        assert "MISMATCH trial=3" in text
        assert "text=b'ab'" in text
        assert "labels=[1, 2]" in text
        assert "expected=2" in text
        assert "got=1" in text


class TestTextGenerator:
    def test_exact_size_and_alphabet(self):
        text = english_like_text(10_000, seed=4)
        assert len(text) == 10_000
        letters = set(b"abcdefghijklmnopqrstuvwxyz ")
        assert set(text) <= letters

    def test_deterministic(self):
        assert english_like_text(2_000, seed=8) == english_like_text(2_000, seed=8)
        assert english_like_text(2_000, seed=8) != english_like_text(2_000, seed=9)

    def test_words_repeat_like_prose(self):
        # a skewed vocabulary means the most common word shows up a lot
        from collections import Counter
        text = english_like_text(50_000, seed=1)
        words = text.split(b" ")
        _, freq = Counter(words).most_common(1)[0]
        assert freq > len(words) // 100
