"""Versioned binary persistence for every index kind.

Layout (all little-endian):

    magic "SRR1" | format version u32 | n u64 | label bound u64 | cutoff u64

followed by length-prefixed sections: text bytes, labels, suffix array
(1-based), node table, top-store table, grid alphabet, and a trailing meta
section (index kind, layout flavor, gap width, interval set). Derived
structures (edge offsets, bit planes, the reversed-text tree of a gap
index) are rebuilt deterministically at load, so saving a loaded index
reproduces the file byte for byte.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .index import SubstringRangeIndex
from .model import IndexFormatError, LabeledString, ValidationError
from .ranges import SortedLabelStore, WaveletMatrix
from .reductions import (
    GappedPatternIndex,
    IntervalRestrictedIndex,
    PositionRestrictedIndex,
    interval_labels,
)
from .suffix import SuffixTree

MAGIC = b"SRR1"
FORMAT_VERSION = 1

_KIND_SRR = 0
_KIND_PRSS = 1
_KIND_INTERVAL = 2
_KIND_GAP = 3

_OPTIMIZE_CODES = {"reporting": 0, "counting": 1}
_OPTIMIZE_NAMES = {v: k for k, v in _OPTIMIZE_CODES.items()}


def _i64(arr) -> bytes:
    return np.ascontiguousarray(arr, dtype="<i8").tobytes()


def _section(payload: bytes) -> bytes:
    return struct.pack("<Q", len(payload)) + payload


def _classify(index):
    if isinstance(index, SubstringRangeIndex):
        return _KIND_SRR, index
    if isinstance(index, PositionRestrictedIndex):
        return _KIND_PRSS, index.index_
    if isinstance(index, IntervalRestrictedIndex):
        return _KIND_INTERVAL, index.index_
    if isinstance(index, GappedPatternIndex):
        return _KIND_GAP, index.index_
    raise TypeError(f"cannot serialize {type(index).__name__}")


def index_to_bytes(index) -> bytes:
    kind, core = _classify(index)
    tree = core.tree_
    source = core.source_
    out = [
        MAGIC,
        struct.pack("<IQQQ", FORMAT_VERSION, core.n_, core.label_bound_,
                    core.depth_cutoff_),
        _section(source.text),
        _section(_i64(source.labels)),
        _section(_i64(tree.sa + 1)),
    ]

    flags = tree.top.astype(np.uint8) | (tree.is_leaf.astype(np.uint8) << 1)
    nodes = b"".join([
        struct.pack("<Q", tree.node_count),
        _i64(tree.parent),
        _i64(tree.edge_start),
        _i64(tree.edge_end),
        _i64(tree.strdepth),
        _i64(tree.lo + 1),
        _i64(tree.hi),
        flags.tobytes(),
    ])
    out.append(_section(nodes))

    ids = tree.top_node_ids()
    stores = [core.stores_[node] for node in ids.tolist()]
    sizes = np.asarray([len(s) for s in stores], dtype=np.int64)
    out.append(_section(b"".join([
        struct.pack("<Q", len(ids)),
        _i64(ids),
        _i64(sizes),
        _i64(np.concatenate([s.labels for s in stores])
             if stores else np.empty(0, dtype=np.int64)),
        _i64(np.concatenate([s.positions for s in stores])
             if stores else np.empty(0, dtype=np.int64)),
    ])))

    out.append(_section(b"".join([
        struct.pack("<QQ", core.grid_.depth, len(core.grid_.alphabet)),
        _i64(core.grid_.alphabet),
    ])))

    gap = index.gap if kind == _KIND_GAP else 0
    intervals = index.intervals_ if kind == _KIND_INTERVAL else []
    flat = np.asarray(
        [v for pair in intervals for v in pair], dtype=np.int64
    )
    optimize = _OPTIMIZE_CODES[core.optimize_for]
    out.append(_section(b"".join([
        struct.pack("<BBQQ", kind, optimize, int(gap), len(intervals)),
        _i64(flat),
    ])))
    return b"".join(out)


class _Reader:
    def __init__(self, buf: bytes):
        self.buf = buf
        self.at = 0

    def take(self, k: int) -> bytes:
        if self.at + k > len(self.buf):
            raise IndexFormatError("truncated index file")
        piece = self.buf[self.at:self.at + k]
        self.at += k
        return piece

    def unpack(self, fmt: str):
        return struct.unpack(fmt, self.take(struct.calcsize(fmt)))

    def i64(self, count: int) -> np.ndarray:
        return np.frombuffer(self.take(8 * count), dtype="<i8").astype(np.int64)

    def section(self) -> "_Reader":
        (length,) = self.unpack("<Q")
        return _Reader(self.take(length))

    def done(self) -> bool:
        return self.at == len(self.buf)


def index_from_bytes(buf: bytes):
    top = _Reader(buf)
    if top.take(4) != MAGIC:
        raise IndexFormatError("not an index file (bad magic)")
    version, n, bound, cutoff = top.unpack("<IQQQ")
    if version != FORMAT_VERSION:
        raise IndexFormatError(f"unsupported format version {version}")

    text = top.section().buf
    labels = top.section().i64(n)
    sa = top.section().i64(n) - 1
    if len(text) != n or len(labels) != n or len(sa) != n:
        raise IndexFormatError("section sizes disagree with the header")

    nodes = top.section()
    (count,) = nodes.unpack("<Q")
    parent = nodes.i64(count)
    nodes.i64(count)  # edge starts: derived, recomputed below
    nodes.i64(count)  # edge ends
    strdepth = nodes.i64(count)
    lo = nodes.i64(count) - 1
    hi = nodes.i64(count)
    flags = np.frombuffer(nodes.take(count), dtype=np.uint8)
    if not nodes.done():
        raise IndexFormatError("node table has trailing bytes")

    stores_sec = top.section()
    (store_count,) = stores_sec.unpack("<Q")
    ids = stores_sec.i64(store_count)
    sizes = stores_sec.i64(store_count)
    total = int(sizes.sum())
    flat_labels = stores_sec.i64(total)
    flat_positions = stores_sec.i64(total)

    grid_sec = top.section()
    depth, sigma = grid_sec.unpack("<QQ")
    alphabet = grid_sec.i64(sigma)

    meta = top.section()
    kind, optimize, gap, icount = meta.unpack("<BBQQ")
    flat_iv = meta.i64(2 * icount)
    intervals = [
        (int(flat_iv[2 * k]), int(flat_iv[2 * k + 1])) for k in range(icount)
    ]
    if not top.done():
        raise IndexFormatError("trailing bytes after the meta section")
    if optimize not in _OPTIMIZE_NAMES:
        raise IndexFormatError(f"unknown layout flavor {optimize}")

    try:
        tree = SuffixTree._from_arrays(
            text, sa, parent, strdepth, lo, hi,
            (flags & 2).astype(bool), cutoff,
        )
        source = LabeledString(text, labels, int(bound)).validate()
    except IndexFormatError:
        raise
    except Exception as exc:
        raise IndexFormatError(f"inconsistent index file: {exc}") from exc
    if not np.array_equal(tree.top, (flags & 1).astype(bool)):
        raise IndexFormatError("stored top flags disagree with the cutoff")
    if not np.array_equal(ids, tree.top_node_ids()):
        raise IndexFormatError("store table does not cover the top nodes")

    starts = np.zeros(store_count + 1, dtype=np.int64)
    np.cumsum(sizes, out=starts[1:])
    stores = {}
    for slot, node in enumerate(ids.tolist()):
        s, e = int(starts[slot]), int(starts[slot + 1])
        if e - s != int(tree.hi[node] - tree.lo[node]):
            raise IndexFormatError("store sizes disagree with node intervals")
        stores[node] = SortedLabelStore.from_sorted(
            flat_labels[s:e], flat_positions[s:e]
        )

    grid = WaveletMatrix(labels[tree.sa], tree.sa + 1)
    if grid.depth != depth or not np.array_equal(grid.alphabet, alphabet):
        raise IndexFormatError("grid section disagrees with the labels")

    core = SubstringRangeIndex(depth_cutoff=int(cutoff),
                               optimize_for=_OPTIMIZE_NAMES[optimize])
    core.source_ = source
    core.tree_ = tree
    core.depth_cutoff_ = int(cutoff)
    core.n_ = n
    core.label_bound_ = int(bound)
    core.stores_ = stores
    core.grid_ = grid
    core._forced_path = None

    if kind == _KIND_SRR:
        return core
    if kind == _KIND_PRSS:
        if not np.array_equal(labels, np.arange(1, n + 1)):
            raise IndexFormatError("position index must carry positional labels")
        wrapper = PositionRestrictedIndex(
            depth_cutoff=int(cutoff), optimize_for=_OPTIMIZE_NAMES[optimize]
        )
        wrapper.index_ = core
        wrapper.n_ = n
        return wrapper
    if kind == _KIND_INTERVAL:
        try:
            expect = interval_labels(n, intervals)
        except ValidationError as exc:
            raise IndexFormatError(f"invalid interval set: {exc}") from exc
        if not np.array_equal(labels, expect):
            raise IndexFormatError("interval index labels disagree with meta")
        wrapper = IntervalRestrictedIndex(
            depth_cutoff=int(cutoff), optimize_for=_OPTIMIZE_NAMES[optimize]
        )
        wrapper.index_ = core
        wrapper.intervals_ = intervals
        wrapper.n_ = n
        return wrapper
    if kind == _KIND_GAP:
        wrapper = GappedPatternIndex(
            gap=int(gap), depth_cutoff=int(cutoff),
            optimize_for=_OPTIMIZE_NAMES[optimize],
        )
        wrapper.index_ = core
        wrapper.reverse_tree_ = SuffixTree(text[::-1], 1)
        wrapper.n_ = n
        expect = np.zeros(n, dtype=np.int64)
        if n >= gap + 2:
            here = np.arange(gap + 1, n, dtype=np.int64)
            expect[here] = wrapper.reverse_tree_.rank[n + gap - here] + 1
        if not np.array_equal(labels, expect):
            raise IndexFormatError("gap index labels disagree with the gap width")
        return wrapper
    raise IndexFormatError(f"unknown index kind {kind}")


def kind_name(index) -> str:
    return {
        _KIND_SRR: "srr",
        _KIND_PRSS: "prss",
        _KIND_INTERVAL: "interval",
        _KIND_GAP: "gap",
    }[_classify(index)[0]]


def save_index(index, path) -> None:
    Path(path).write_bytes(index_to_bytes(index))


def load_index(path):
    return index_from_bytes(Path(path).read_bytes())
