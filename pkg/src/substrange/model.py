"""Labeled byte strings, query ranges, and the typed errors shared by all indexes.

Positions, suffix orders, and range endpoints are 1-indexed and inclusive in
every public interface; labels live in [0, label_bound].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class ValidationError(ValueError):
    """Input falls outside an operation's documented domain."""


class EmptyText(ValidationError):
    """The text must contain at least one byte."""


class LengthMismatch(ValidationError):
    """labels must carry exactly one entry per text position."""


class LabelOutOfRange(ValidationError):
    """A label lies outside [0, label_bound]."""

    def __init__(self, position: int, label: int, bound: int):
        super().__init__(
            f"label {label} at position {position} outside [0, {bound}]"
        )
        self.position = position
        self.label = label
        self.bound = bound


class RangeOutOfBounds(ValidationError):
    """A query range violates its required ordering or bounds."""


class PositionOutOfRange(ValidationError):
    """A text position lies outside [1, n]."""


class EmptyPattern(ValidationError):
    """This operation requires a nonempty pattern."""


class IntervalOutOfBounds(ValidationError):
    """An interval endpoint lies outside [1, n] or the endpoints are reversed."""


class WrongIndexKind(ValidationError):
    """The index file holds a different kind of index than the command expects."""


class IndexFormatError(ValueError):
    """The file is not readable as a supported index format."""


def as_text(text) -> bytes:
    """Coerce text input to bytes; str is encoded as UTF-8."""
    if isinstance(text, bytes):
        return text
    if isinstance(text, (bytearray, memoryview)):
        return bytes(text)
    if isinstance(text, str):
        return text.encode("utf-8")
    raise TypeError(f"text must be bytes or str, not {type(text).__name__}")


def as_pattern(pattern) -> bytes:
    """Coerce a pattern to bytes; the empty pattern is permitted."""
    return as_text(pattern)


def _as_label_array(labels) -> np.ndarray:
    arr = np.asarray(labels)
    if arr.ndim != 1:
        raise ValidationError("labels must be a one-dimensional sequence")
    if arr.size and not np.issubdtype(arr.dtype, np.integer):
        raise ValidationError("labels must be integers")
    return arr.astype(np.int64, copy=True)


@dataclass(frozen=True)
class LabeledString:
    """A byte text with one integer label per position and a declared bound.

    The bound is part of the value, never inferred from the labels; two
    instances with equal labels but different bounds are different inputs.
    Instances are not checked on construction; ``validate`` performs the
    checks and every index build calls it.
    """

    text: bytes
    labels: np.ndarray
    label_bound: int

    def __post_init__(self):
        object.__setattr__(self, "text", as_text(self.text))
        arr = _as_label_array(self.labels)
        arr.setflags(write=False)
        object.__setattr__(self, "labels", arr)
        object.__setattr__(self, "label_bound", int(self.label_bound))

    @classmethod
    def positional(cls, text) -> "LabeledString":
        """Label every position with itself: label(i) = i, bound = n."""
        data = as_text(text)
        return cls(data, np.arange(1, len(data) + 1, dtype=np.int64), len(data))

    @property
    def n(self) -> int:
        return len(self.text)

    def label_of(self, position: int) -> int:
        if not 1 <= position <= self.n:
            raise PositionOutOfRange(
                f"position {position} outside [1, {self.n}]"
            )
        return int(self.labels[position - 1])

    def validate(self) -> "LabeledString":
        """Raise the first violated invariant; return self when all hold."""
        if len(self.labels) != len(self.text):
            raise LengthMismatch(
                f"{len(self.labels)} labels for {len(self.text)} text bytes"
            )
        if len(self.labels):
            bad = np.flatnonzero(
                (self.labels < 0) | (self.labels > self.label_bound)
            )
            if bad.size:
                k = int(bad[0])
                raise LabelOutOfRange(k + 1, int(self.labels[k]), self.label_bound)
        if len(self.text) == 0:
            raise EmptyText("text must be nonempty")
        return self


def check_label_range(low: int, high: int, bound: int) -> None:
    """Validate a label range [low, high] against a declared bound."""
    if high > bound:
        raise RangeOutOfBounds(f"range end {high} exceeds label bound {bound}")
    if low < 0 or low > high:
        raise RangeOutOfBounds(f"invalid label range [{low}, {high}]")


def check_position_range(low: int, high: int, n: int) -> None:
    """Validate a position range [low, high] against text length n; low >= 1."""
    if high > n:
        raise RangeOutOfBounds(f"range end {high} exceeds text length {n}")
    if low < 1 or low > high:
        raise RangeOutOfBounds(f"invalid position range [{low}, {high}]")
