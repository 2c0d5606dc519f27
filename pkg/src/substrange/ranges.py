"""Static range structures used by the indexes.

``SortedLabelStore`` answers label-range queries over one multiset by binary
search. ``WaveletMatrix`` answers rectangle queries over the point set
{(x, label(x)) : x = 1..n} where x is a dense sequence coordinate; it stores
one bit plane per label bit (rank-reduced alphabet, most significant bit
first) plus the permuted x order at every plane so reporting never walks
back up.
"""

from __future__ import annotations

import numpy as np


class SortedLabelStore:
    """Labels in ascending order, each carrying its originating position.

    Ties are broken by position so the layout is a pure function of the
    input multiset. Query ranges are inclusive.
    """

    __slots__ = ("labels", "positions")

    def __init__(self, labels, positions):
        labels = np.asarray(labels, dtype=np.int64)
        positions = np.asarray(positions, dtype=np.int64)
        if labels.shape != positions.shape:
            raise ValueError("labels and positions must be parallel arrays")
        order = np.lexsort((positions, labels))
        self.labels = labels[order]
        self.positions = positions[order]

    @classmethod
    def from_sorted(cls, labels: np.ndarray, positions: np.ndarray):
        """Adopt arrays already sorted by (label, position); no copies."""
        store = cls.__new__(cls)
        store.labels = labels
        store.positions = positions
        return store

    def __len__(self) -> int:
        return len(self.labels)

    def _span(self, low: int, high: int) -> tuple[int, int]:
        i = int(np.searchsorted(self.labels, low, side="left"))
        j = int(np.searchsorted(self.labels, high, side="right"))
        return i, j

    def report(self, low: int, high: int) -> np.ndarray:
        """Positions whose label is in [low, high], ascending by label."""
        i, j = self._span(low, high)
        return self.positions[i:j]

    def count(self, low: int, high: int) -> int:
        i, j = self._span(low, high)
        return j - i

    def is_empty(self, low: int, high: int) -> bool:
        i, j = self._span(low, high)
        return i == j


class _BitPlane:
    """One bit of every label, in that plane's sequence order."""

    __slots__ = ("words", "cums", "zeros", "xs")

    def __init__(self, bits: np.ndarray, xs: np.ndarray):
        n = len(bits)
        pad = (-n) % 64
        if pad:
            bits = np.concatenate([bits, np.zeros(pad, dtype=bits.dtype)])
        packed = np.packbits(
            bits.astype(np.uint8), bitorder="little"
        ).view("<u8")
        counts = bits.reshape(-1, 64).sum(axis=1)
        cums = np.zeros(len(packed) + 1, dtype=np.int64)
        np.cumsum(counts, out=cums[1:])
        self.words = packed.tolist()   # python ints: fast scalar rank
        self.cums = cums.tolist()
        self.zeros = n - int(cums[-1])
        self.xs = xs

    def rank1(self, i: int) -> int:
        w = i >> 6
        r = i & 63
        c = self.cums[w]
        if r:
            c += (self.words[w] & ((1 << r) - 1)).bit_count()
        return c


class WaveletMatrix:
    """Rectangle report/count/emptiness over (sequence position, label).

    ``values[k]`` is the label at x = k + 1; ``payloads[k]`` is what report
    returns for that x (defaults to x itself). Immutable once built.
    """

    __slots__ = ("size", "depth", "alphabet", "payloads", "_planes", "_bottom_xs")

    def __init__(self, values, payloads=None):
        vals = np.asarray(values, dtype=np.int64)
        n = len(vals)
        if n == 0:
            raise ValueError("need at least one point")
        if payloads is None:
            payloads = np.arange(1, n + 1, dtype=np.int64)
        else:
            payloads = np.asarray(payloads, dtype=np.int64)
            if len(payloads) != n:
                raise ValueError("payloads must parallel values")
        self.size = n
        self.payloads = payloads
        self.alphabet, codes = np.unique(vals, return_inverse=True)
        codes = codes.astype(np.int64)
        self.depth = max(1, int(len(self.alphabet) - 1).bit_length())
        xs = np.arange(n, dtype=np.int64)
        planes = []
        for level in range(self.depth):
            bits = (codes >> (self.depth - 1 - level)) & 1
            planes.append(_BitPlane(bits, xs))
            keep0 = np.flatnonzero(bits == 0)
            keep1 = np.flatnonzero(bits)
            codes = np.concatenate([codes[keep0], codes[keep1]])
            xs = np.concatenate([xs[keep0], xs[keep1]])
        self._planes = planes
        self._bottom_xs = xs

    def _code_range(self, low: int, high: int) -> tuple[int, int]:
        lo = int(np.searchsorted(self.alphabet, low, side="left"))
        hi = int(np.searchsorted(self.alphabet, high, side="right")) - 1
        return lo, hi

    def _canonical(self, x_low, x_high, label_low, label_high):
        """Yield (level, start, end): maximal nodes inside the label range.

        Intervals are half-open in the ordering of their own plane; only
        nonempty ones are yielded.
        """
        c_lo, c_hi = self._code_range(label_low, label_high)
        if c_lo > c_hi:
            return
        stack = [(0, x_low - 1, x_high, 0, (1 << self.depth) - 1)]
        while stack:
            level, s, e, lo, hi = stack.pop()
            if s >= e or lo > c_hi or hi < c_lo:
                continue
            if c_lo <= lo and hi <= c_hi:
                yield level, s, e
                continue
            plane = self._planes[level]
            s1, e1 = plane.rank1(s), plane.rank1(e)
            mid = (lo + hi) >> 1
            z = plane.zeros
            stack.append((level + 1, z + s1, z + e1, mid + 1, hi))
            stack.append((level + 1, s - s1, e - e1, lo, mid))

    def _xs_at(self, level: int) -> np.ndarray:
        if level == self.depth:
            return self._bottom_xs
        return self._planes[level].xs

    def report(self, x_low, x_high, label_low, label_high) -> np.ndarray:
        """Payloads of matching points, ascending by x coordinate."""
        pieces = [
            self._xs_at(level)[s:e]
            for level, s, e in self._canonical(x_low, x_high,
                                               label_low, label_high)
        ]
        if not pieces:
            return np.empty(0, dtype=np.int64)
        xs = np.sort(np.concatenate(pieces))
        return self.payloads[xs]

    def count(self, x_low, x_high, label_low, label_high) -> int:
        return sum(
            e - s
            for _, s, e in self._canonical(x_low, x_high, label_low, label_high)
        )

    def is_empty(self, x_low, x_high, label_low, label_high) -> bool:
        for _ in self._canonical(x_low, x_high, label_low, label_high):
            return False
        return True
