"""Suffix array, LCP array, and a compacted suffix tree over raw bytes.

The tree is built from the suffix array plus its LCP array. No sentinel byte
is appended: suffix comparison treats end-of-string as smaller than every
byte, so the tree has exactly one leaf per suffix and a suffix that is a
proper prefix of another hangs off an internal node through an empty edge.

Nodes carry a ``top`` flag splitting the tree at a string-depth cutoff: a
node is top when its parent's string depth is at most the cutoff (the root
always is). Everything deeper is served by a single global structure rather
than per-node ones.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .model import EmptyText, PositionOutOfRange, as_text

# Child lookup key for an empty (end-of-string) edge; byte b maps to b + 1.
_END = 0


def suffix_array(data: bytes) -> np.ndarray:
    """Start offsets (0-based) of all suffixes in ascending suffix order.

    Prefix doubling on numpy: O(n log n) comparisons, log n lexsort rounds.
    """
    n = len(data)
    if n == 0:
        raise EmptyText("cannot index an empty text")
    rank = np.frombuffer(data, dtype=np.uint8).astype(np.int64)
    step = 1
    while True:
        second = np.full(n, -1, dtype=np.int64)  # -1: past the end, sorts first
        if step < n:
            second[:-step] = rank[step:]
        sa = np.lexsort((second, rank))
        first_s, second_s = rank[sa], second[sa]
        bumps = np.empty(n, dtype=np.int64)
        bumps[0] = 0
        bumps[1:] = (first_s[1:] != first_s[:-1]) | (second_s[1:] != second_s[:-1])
        fresh = np.cumsum(bumps)
        if fresh[-1] == n - 1:
            return sa
        rank = np.empty(n, dtype=np.int64)
        rank[sa] = fresh
        step *= 2


def inverse_permutation(sa: np.ndarray) -> np.ndarray:
    inv = np.empty(len(sa), dtype=np.int64)
    inv[sa] = np.arange(len(sa), dtype=np.int64)
    return inv


def lcp_array(data: bytes, sa: np.ndarray, rank: np.ndarray) -> np.ndarray:
    """Kasai: lcp[k] = longest common prefix of suffixes sa[k] and sa[k+1]."""
    n = len(data)
    sa_l = sa.tolist()
    rank_l = rank.tolist()
    lcp = [0] * n
    k = 0
    for i in range(n):
        r = rank_l[i]
        if r == n - 1:
            k = 0
            continue
        j = sa_l[r + 1]
        while i + k < n and j + k < n and data[i + k] == data[j + k]:
            k += 1
        lcp[r] = k
        if k:
            k -= 1
    return np.asarray(lcp, dtype=np.int64)


class Locus(NamedTuple):
    """Minimum-depth node whose path string has the pattern as a prefix."""

    node: int
    low: int      # first suffix order under the node (1-based)
    high: int     # last suffix order, inclusive
    matched: int  # bytes of the pattern consumed


class SuffixTree:
    """Compacted suffix tree with suffix-order intervals per node.

    Arrays are indexed by node id (root is 0): ``parent``, ``strdepth``,
    ``lo``/``hi`` (half-open 0-based order interval), ``is_leaf``, ``top``.
    Child lookup is one flat dict keyed by parent id and first edge byte.
    Immutable after construction; concurrent reads are safe.
    """

    def __init__(self, data, depth_cutoff: int):
        data = as_text(data)
        if depth_cutoff < 0:
            raise ValueError("depth_cutoff must be nonnegative")
        sa = suffix_array(data)
        rank = inverse_permutation(sa)
        lcp = lcp_array(data, sa, rank)
        self._init_from_parts(data, sa, rank, int(depth_cutoff))
        self._build(lcp)
        self._finalize()

    # -- construction ------------------------------------------------------

    def _init_from_parts(self, data, sa, rank, depth_cutoff):
        self.data = data
        self.n = len(data)
        self.sa = sa
        self.rank = rank
        self.depth_cutoff = depth_cutoff
        self.children: dict[int, int] = {}

    def _build(self, lcp: np.ndarray) -> None:
        n = self.n
        sa_l = self.sa.tolist()
        lcp_l = lcp.tolist()
        parent = [0]
        dep = [0]
        lo = [n]
        hi = [-1]
        leaf = [False]
        data = self.data
        children = self.children

        def attach(child: int, into: int) -> None:
            # child's interval is final once it leaves the rightmost path
            if dep[child] == dep[into]:
                key = _END  # empty edge: the suffix ends exactly at `into`
            else:
                key = data[sa_l[lo[child]] + dep[into]] + 1
            children[into * 257 + key] = child
            if lo[child] < lo[into]:
                lo[into] = lo[child]
            if hi[child] > hi[into]:
                hi[into] = hi[child]

        stack = [0]  # rightmost path, string depths strictly increasing
        for k in range(n):
            h = lcp_l[k - 1] if k else 0
            while dep[stack[-1]] > h:
                popped = stack.pop()
                top = stack[-1]
                if dep[top] >= h:
                    attach(popped, top)
                else:
                    mid = len(parent)
                    parent.append(0)
                    dep.append(h)
                    lo.append(n)
                    hi.append(-1)
                    leaf.append(False)
                    attach(popped, mid)
                    stack.append(mid)
            top = stack[-1]
            if leaf[top] and dep[top] == h:
                # previous suffix equals the common prefix: it becomes the
                # end-of-string child of a fresh internal node at this depth
                popped = stack.pop()
                mid = len(parent)
                parent.append(0)
                dep.append(h)
                lo.append(n)
                hi.append(-1)
                leaf.append(False)
                attach(popped, mid)
                stack.append(mid)
            node = len(parent)
            parent.append(0)
            dep.append(n - sa_l[k])
            lo.append(k)
            hi.append(k + 1)
            leaf.append(True)
            stack.append(node)
        while len(stack) > 1:
            popped = stack.pop()
            attach(popped, stack[-1])

        self.parent = np.asarray(parent, dtype=np.int64)
        self.strdepth = np.asarray(dep, dtype=np.int64)
        self.lo = np.asarray(lo, dtype=np.int64)
        self.hi = np.asarray(hi, dtype=np.int64)
        self.is_leaf = np.asarray(leaf, dtype=bool)
        # parent ids were assigned on attach; record them now from children
        par = self.parent
        for key, child in self.children.items():
            par[child] = key // 257

    def _finalize(self) -> None:
        par = self.parent
        self.top = self.strdepth[par] <= self.depth_cutoff
        self.top[0] = True
        start = self.sa[self.lo] + self.strdepth[par]
        end = self.sa[self.lo] + self.strdepth
        start[0] = end[0] = 0
        self.edge_start = start
        self.edge_end = end

    @classmethod
    def _from_arrays(cls, data, sa, parent, strdepth, lo, hi, is_leaf,
                     depth_cutoff) -> "SuffixTree":
        """Reassemble a tree from stored arrays (deserialization path)."""
        tree = cls.__new__(cls)
        tree._init_from_parts(as_text(data), sa, inverse_permutation(sa),
                              int(depth_cutoff))
        tree.parent = parent
        tree.strdepth = strdepth
        tree.lo = lo
        tree.hi = hi
        tree.is_leaf = is_leaf
        tree._finalize()
        data_b = tree.data
        es, ee, par = tree.edge_start, tree.edge_end, parent
        children = tree.children
        for v in range(1, len(parent)):
            key = _END if es[v] == ee[v] else data_b[es[v]] + 1
            children[int(par[v]) * 257 + int(key)] = v
        return tree

    # -- queries -----------------------------------------------------------

    @property
    def node_count(self) -> int:
        return len(self.parent)

    def locus(self, pattern: bytes) -> Locus | None:
        """Walk the pattern from the root; None when it does not occur."""
        data = self.data
        children = self.children
        strdepth = self.strdepth
        v = 0
        h = 0
        m = len(pattern)
        while h < m:
            child = children.get(v * 257 + pattern[h] + 1)
            if child is None:
                return None
            take = min(int(strdepth[child]) - h, m - h)
            es = int(self.edge_start[child])
            if data[es:es + take] != pattern[h:h + take]:
                return None
            h += take
            v = child
        return Locus(v, int(self.lo[v]) + 1, int(self.hi[v]), m)

    def order_of(self, position: int) -> int:
        """Ascending-suffix order (1-based) of the suffix starting there."""
        if not 1 <= position <= self.n:
            raise PositionOutOfRange(f"position {position} outside [1, {self.n}]")
        return int(self.rank[position - 1]) + 1

    def top_node_ids(self) -> np.ndarray:
        return np.flatnonzero(self.top)

    def path_string(self, node: int) -> bytes:
        s = int(self.sa[self.lo[node]])
        return self.data[s:s + int(self.strdepth[node])]

    def edge_span(self, node: int) -> tuple[int, int]:
        return int(self.edge_start[node]), int(self.edge_end[node])

    def node_depths(self) -> np.ndarray:
        """Tree depth (edge count from the root) per node."""
        depths = np.zeros(self.node_count, dtype=np.int64)
        # parents precede children when ordered by (strdepth, internal-first):
        # only an empty-edge leaf shares its parent's string depth
        order = np.lexsort((self.is_leaf, self.strdepth))
        par = self.parent
        for v in order.tolist():
            if v:
                depths[v] = depths[par[v]] + 1
        return depths

    # -- integrity ---------------------------------------------------------

    def check_structure(self) -> None:
        """Raise AssertionError unless the structural invariants hold."""
        n, count = self.n, self.node_count
        assert self.lo[0] == 0 and self.hi[0] == n, "root interval must be [1, n]"
        srt = np.sort(self.sa)
        assert np.array_equal(srt, np.arange(n)), "sa must be a permutation"
        assert np.array_equal(self.rank[self.sa], np.arange(n)), \
            "rank must invert sa"
        assert np.all(self.hi > self.lo), "node intervals must be nonempty"
        leaves = self.is_leaf
        assert np.all(self.hi[leaves] - self.lo[leaves] == 1), \
            "leaves must own exactly one suffix"
        if count > 1:
            ids = np.arange(1, count)
            par = self.parent[ids]
            grow = self.strdepth[ids] >= self.strdepth[par]
            assert np.all(grow), "string depth may not shrink along an edge"
            flat = self.strdepth[ids] == self.strdepth[par]
            assert np.all(leaves[ids][flat]), "only leaves may have empty edges"
            # children tile the parent interval left to right
            order = np.lexsort((self.lo[ids], par))
            ids_o, par_o = ids[order], par[order]
            first = np.empty(len(ids_o), dtype=bool)
            first[0] = True
            first[1:] = par_o[1:] != par_o[:-1]
            last = np.roll(first, -1)
            assert np.all(self.lo[ids_o][first] == self.lo[par_o][first]), \
                "first child must start the parent interval"
            assert np.all(self.hi[ids_o][last] == self.hi[par_o][last]), \
                "last child must end the parent interval"
            inner = np.flatnonzero(~first)
            if inner.size:
                assert np.all(
                    self.lo[ids_o[inner]] == self.hi[ids_o[inner - 1]]
                ), "sibling intervals must tile without gaps"
                # sibling edges sorted by first byte, end-of-string first
                text_arr = np.frombuffer(self.data, dtype=np.uint8)
                keys = np.where(
                    self.edge_start[ids_o] == self.edge_end[ids_o],
                    np.int64(-1),
                    text_arr[np.minimum(self.edge_start[ids_o], n - 1)]
                    .astype(np.int64),
                )
                assert np.all(keys[inner] > keys[inner - 1]), \
                    "sibling edges must ascend by first byte"
        # the top region is exactly: parent at or above the cutoff
        par = self.parent
        expect = self.strdepth[par] <= self.depth_cutoff
        expect[0] = True
        assert np.array_equal(self.top, expect), "top flags must match the cutoff"
        assert len(self.children) == count - 1, "every non-root needs a child link"
