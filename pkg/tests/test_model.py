"""Input model: labeled strings, coercions, and range validation."""

import numpy as np
import pytest

from substrange import (
    EmptyText,
    LabelOutOfRange,
    LabeledString,
    LengthMismatch,
    PositionOutOfRange,
    RangeOutOfBounds,
)
from substrange.model import (
    as_pattern,
    as_text,
    check_label_range,
    check_position_range,
)


class TestCoercion:
    def test_bytes_pass_through(self):
        assert as_text(b"abc") == b"abc"

    def test_bytearray_and_memoryview(self):
        assert as_text(bytearray(b"abc")) == b"abc"
        assert as_text(memoryview(b"abc")) == b"abc"

    def test_str_is_utf8(self):
        assert as_text("héllo") == "héllo".encode("utf-8")

    def test_rejects_other_types(self):
        with pytest.raises(TypeError):
            as_text(123)

    def test_empty_pattern_is_permitted(self):
        assert as_pattern(b"") == b""
        assert as_pattern("") == b""


class TestLabeledString:
    def test_positional_labels(self):
        src = LabeledString.positional(b"banana")
        assert src.n == 6
        assert src.labels.tolist() == [1, 2, 3, 4, 5, 6]
        assert src.label_bound == 6
        assert src.validate() is src

    def test_label_of_is_one_based(self):
        src = LabeledString(b"ab", [7, 9], 10)
        assert src.label_of(1) == 7
        assert src.label_of(2) == 9
        with pytest.raises(PositionOutOfRange):
            src.label_of(0)
        with pytest.raises(PositionOutOfRange):
            src.label_of(3)

    def test_labels_are_read_only(self):
        src = LabeledString(b"ab", [1, 2], 5)
        with pytest.raises(ValueError):
            src.labels[0] = 3

    def test_length_mismatch_detected_first(self):
        # even when a label is also out of range
        with pytest.raises(LengthMismatch):
            LabeledString(b"abc", [99], 5).validate()

    def test_label_out_of_range_names_first_offender(self):
        with pytest.raises(LabelOutOfRange) as err:
            LabeledString(b"abc", [0, 7, 9], 6).validate()
        assert err.value.position == 2
        assert err.value.label == 7
        assert err.value.bound == 6

    def test_negative_label_rejected(self):
        with pytest.raises(LabelOutOfRange):
            LabeledString(b"ab", [0, -1], 6).validate()

    def test_empty_text_rejected(self):
        with pytest.raises(EmptyText):
            LabeledString(b"", [], 0).validate()

    def test_bound_zero_with_zero_labels_is_fine(self):
        LabeledString(b"ab", [0, 0], 0).validate()

    def test_bound_is_declared_not_inferred(self):
        a = LabeledString(b"ab", [1, 2], 2)
        b = LabeledString(b"ab", [1, 2], 9)
        assert a.label_bound == 2
        assert b.label_bound == 9

    def test_non_integer_labels_rejected(self):
        from substrange import ValidationError
        with pytest.raises(ValidationError):
            LabeledString(b"ab", [1.5, 2.0], 5)

    def test_labels_accept_numpy_arrays(self):
        src = LabeledString(b"ab", np.array([3, 4]), 4).validate()
        assert src.labels.tolist() == [3, 4]


class TestRangeChecks:
    def test_label_range_accepts_full_and_point(self):
        check_label_range(0, 10, 10)
        check_label_range(5, 5, 10)

    def test_label_range_end_over_bound(self):
        with pytest.raises(RangeOutOfBounds):
            check_label_range(0, 11, 10)

    def test_label_range_negative_start(self):
        with pytest.raises(RangeOutOfBounds):
            check_label_range(-1, 5, 10)

    def test_label_range_reversed(self):
        with pytest.raises(RangeOutOfBounds):
            check_label_range(6, 5, 10)

    def test_position_range_requires_low_at_least_one(self):
        check_position_range(1, 6, 6)
        with pytest.raises(RangeOutOfBounds):
            check_position_range(0, 6, 6)

    def test_position_range_end_over_length(self):
        with pytest.raises(RangeOutOfBounds):
            check_position_range(1, 7, 6)

    def test_position_range_reversed(self):
        with pytest.raises(RangeOutOfBounds):
            check_position_range(4, 2, 6)
