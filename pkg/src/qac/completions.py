"""Representations of the completion set.

Four structures over the lexicographically sorted term-id sequences:

* :class:`CompletionTrie` — integer trie, one level per term position, each
  level held as four Elias-Fano sequences (nodes, child pointers, left
  extremes, range sizes). Nodes carry the lexicographic range of the
  completions below them. A completion that is a strict prefix of another is
  closed by a terminator node with the reserved id 0, which sorts before all
  real term ids.
* :class:`FcCompletionSet` — the same two-level front coding used by the
  dictionary, applied to id tuples (lcp counted in ids).
* :class:`ForwardIndex` — docid → completion id sequence.
* :class:`DocidMap` — lexicographic id → docid permutation.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .corpus import IntCompletion
from .frontcoding import FrontCodedList
from .serial import ByteReader, ByteWriter
from .succinct import EliasFanoSequence

TERMINATOR_ID = 0


class _TrieLevel:
    __slots__ = ("nodes", "pointers", "lefts", "size_sums", "key_base")

    def __init__(self, nodes: EliasFanoSequence, pointers: EliasFanoSequence,
                 lefts: EliasFanoSequence, size_sums: EliasFanoSequence, key_base: int):
        self.nodes = nodes          # parent_index * key_base + term_id
        self.pointers = pointers    # child block boundaries in the next level
        self.lefts = lefts          # L[i] = p_i - i
        self.size_sums = size_sums  # per-level prefix sums of range sizes
        self.key_base = key_base

    def node_id(self, i: int) -> int:
        return self.nodes.access(i) % self.key_base

    def node_range(self, i: int) -> tuple[int, int]:
        p = self.lefts.access(i) + i
        size = self.size_sums.access(i) - (self.size_sums.access(i - 1) if i else 0)
        return p, p + size - 1


class CompletionTrie:
    """Elias-Fano integer trie with per-node lexicographic ranges."""

    __slots__ = ("levels", "completion_count")

    def __init__(self, levels: list[_TrieLevel], completion_count: int):
        self.levels = levels
        self.completion_count = completion_count

    @classmethod
    def build(cls, completions: Sequence[IntCompletion]) -> "CompletionTrie":
        seqs = [c.term_ids for c in completions]
        n = len(seqs)
        levels: list[_TrieLevel] = []
        raw_levels: list[tuple[list[int], list[int], list[int], list[int]]] = []
        frontier: list[tuple[int, int, int]] = [(0, n, 0)] if n else []
        depth = 0
        while frontier:
            ids: list[int] = []
            parents: list[int] = []
            lefts: list[int] = []
            sizes: list[int] = []
            nxt: list[tuple[int, int, int]] = []
            for start, end, parent in frontier:
                i = start
                if len(seqs[i]) == depth:
                    ids.append(TERMINATOR_ID)
                    parents.append(parent)
                    lefts.append(i + 1)
                    sizes.append(1)
                    i += 1
                while i < end:
                    v = seqs[i][depth]
                    j = i + 1
                    while j < end and seqs[j][depth] == v:
                        j += 1
                    node_idx = len(ids)
                    ids.append(v)
                    parents.append(parent)
                    lefts.append(i + 1)
                    sizes.append(j - i)
                    nxt.append((i, j, node_idx))
                    i = j
            raw_levels.append((ids, parents, lefts, sizes))
            frontier = nxt
            depth += 1
        # encode each level; pointers of level d are built from level d+1 parents
        for d, (ids, parents, lefts, sizes) in enumerate(raw_levels):
            key_base = max(ids) + 1
            keys = [p * key_base + t for p, t in zip(parents, ids)]
            nodes = EliasFanoSequence.encode(keys, keys[-1] + 1)
            if d + 1 < len(raw_levels):
                child_parents = raw_levels[d + 1][1]
                counts = np.bincount(child_parents, minlength=len(ids))
                ptrs = [0] * (len(ids) + 1)
                acc = 0
                for i, c in enumerate(counts):
                    ptrs[i] = acc
                    acc += int(c)
                ptrs[len(ids)] = acc
            else:
                ptrs = [0] * (len(ids) + 1)
            pointers = EliasFanoSequence.encode(ptrs, ptrs[-1] + 1)
            l_seq = [p - i for i, p in enumerate(lefts)]
            lefts_ef = EliasFanoSequence.encode(l_seq, l_seq[-1] + 1)
            sums = []
            acc = 0
            for s in sizes:
                acc += s
                sums.append(acc)
            size_sums = EliasFanoSequence.encode(sums, acc + 1)
            levels.append(_TrieLevel(nodes, pointers, lefts_ef, size_sums, key_base))
        return cls(levels, n)

    def locate_prefix(self, prefix: Sequence[int], term_range: tuple[int, int]) -> tuple[int, int] | None:
        """Lexicographic range [p, q] of completions whose first terms equal
        ``prefix`` and whose next term id falls in ``term_range``; None if
        no completion matches."""
        lo, hi = term_range
        if lo > hi or lo < 1 or not self.levels:
            return None
        block_start, block_end = 0, len(self.levels[0].nodes)
        parent = 0
        for d, t in enumerate(prefix):
            if d >= len(self.levels) or t < 1:
                return None
            level = self.levels[d]
            target = parent * level.key_base + t
            idx = level.nodes.next_geq_index(target, block_start, block_end)
            if idx >= block_end or level.nodes.access(idx) != target:
                return None
            if d + 1 >= len(self.levels):
                return None
            block_start = level.pointers.access(idx)
            block_end = level.pointers.access(idx + 1)
            parent = idx
        d = len(prefix)
        if d >= len(self.levels) or block_start >= block_end:
            return None
        level = self.levels[d]
        base = parent * level.key_base
        i1 = level.nodes.next_geq_index(base + lo, block_start, block_end)
        i2 = level.nodes.next_geq_index(base + hi + 1, block_start, block_end)
        if i1 >= i2:
            return None
        p, _ = level.node_range(i1)
        _, q = level.node_range(i2 - 1)
        return p, q

    def level_count(self) -> int:
        return len(self.levels)

    def decode_level(self, d: int) -> list[tuple[int, int, int, int]]:
        """(parent_index, term_id, p, q) per node; for inspection and tests."""
        level = self.levels[d]
        out = []
        for i in range(len(level.nodes)):
            key = level.nodes.access(i)
            p, q = level.node_range(i)
            out.append((key // level.key_base, key % level.key_base, p, q))
        return out

    def children_block(self, d: int, node_idx: int) -> tuple[int, int]:
        level = self.levels[d]
        return level.pointers.access(node_idx), level.pointers.access(node_idx + 1)

    def to_bytes(self) -> bytes:
        w = ByteWriter()
        w.varint(self.completion_count)
        w.varint(len(self.levels))
        for level in self.levels:
            w.varint(level.key_base)
            for seq in (level.nodes, level.pointers, level.lefts, level.size_sums):
                w.words(seq.to_words())
        return w.getvalue()

    @classmethod
    def from_bytes(cls, data: bytes) -> "CompletionTrie":
        r = ByteReader(data)
        count = r.varint()
        n_levels = r.varint()
        levels = []
        for _ in range(n_levels):
            key_base = r.varint()
            seqs = []
            for _ in range(4):
                words = r.words()
                seq, _ = EliasFanoSequence.from_words(words)
                seqs.append(seq)
            levels.append(_TrieLevel(seqs[0], seqs[1], seqs[2], seqs[3], key_base))
        return cls(levels, count)


class FcCompletionSet:
    """Front-coded completion sequences supporting prefix ranges and access."""

    __slots__ = ("_fc",)

    DEFAULT_BUCKET_SIZE = 16

    def __init__(self, fc: FrontCodedList[tuple]):
        self._fc = fc

    @classmethod
    def build(cls, completions: Sequence[IntCompletion],
              bucket_size: int = DEFAULT_BUCKET_SIZE) -> "FcCompletionSet":
        return cls(FrontCodedList.build([c.term_ids for c in completions], bucket_size))

    def __len__(self) -> int:
        return self._fc.count

    def locate_prefix(self, prefix: Sequence[int], term_range: tuple[int, int]) -> tuple[int, int] | None:
        lo, hi = term_range
        if lo > hi or lo < 1 or self._fc.count == 0:
            return None
        key_lo = tuple(prefix) + (lo,)
        key_hi = tuple(prefix) + (hi + 1,)
        p0, _ = self._fc.lower_bound(key_lo)
        q0, _ = self._fc.lower_bound(key_hi)
        if p0 >= q0:
            return None
        return p0 + 1, q0

    def access(self, lex_id: int) -> tuple[int, ...]:
        """The lex_id-th (1-based) smallest completion sequence."""
        if not 1 <= lex_id <= self._fc.count:
            raise ValueError(f"lexicographic id {lex_id} out of [1, {self._fc.count}]")
        return self._fc.get(lex_id - 1)

    def to_bytes(self) -> bytes:
        w = ByteWriter()
        w.varint(self._fc.count)
        w.varint(self._fc.bucket_size)
        for b, header in enumerate(self._fc.headers):
            w.varint(len(header))
            for t in header:
                w.varint(t)
            lcps = self._fc._lcps[b]
            w.varint(len(lcps))
            for lcp, suf in zip(lcps, self._fc._suffixes[b]):
                w.varint(lcp)
                w.varint(len(suf))
                for t in suf:
                    w.varint(t)
        return w.getvalue()

    @classmethod
    def from_bytes(cls, data: bytes) -> "FcCompletionSet":
        r = ByteReader(data)
        count = r.varint()
        bucket_size = r.varint()
        headers: list[tuple] = []
        lcps: list[list[int]] = []
        suffixes: list[list[tuple]] = []
        remaining = count
        while remaining > 0:
            headers.append(tuple(r.varint() for _ in range(r.varint())))
            n = r.varint()
            bucket_lcps = []
            bucket_sufs = []
            for _ in range(n):
                bucket_lcps.append(r.varint())
                bucket_sufs.append(tuple(r.varint() for _ in range(r.varint())))
            lcps.append(bucket_lcps)
            suffixes.append(bucket_sufs)
            remaining -= 1 + n
        return cls(FrontCodedList(bucket_size, count, headers, lcps, suffixes))

    def serialized_size_bytes(self) -> int:
        return len(self.to_bytes())


class ForwardIndex:
    """Map from docid to the completion's term-id sequence."""

    __slots__ = ("_rows",)

    def __init__(self, rows: list[tuple[int, ...]]):
        self._rows = rows

    @classmethod
    def build(cls, completions: Sequence[IntCompletion]) -> "ForwardIndex":
        rows: list[tuple[int, ...]] = [()] * len(completions)
        for c in completions:
            rows[c.docid - 1] = c.term_ids
        return cls(rows)

    def __len__(self) -> int:
        return len(self._rows)

    def access(self, docid: int) -> tuple[int, ...]:
        if not 1 <= docid <= len(self._rows):
            raise ValueError(f"docid {docid} out of [1, {len(self._rows)}]")
        return self._rows[docid - 1]

    def to_bytes(self) -> bytes:
        w = ByteWriter()
        w.varint(len(self._rows))
        for row in self._rows:
            w.varint(len(row))
            for t in row:
                w.varint(t)
        return w.getvalue()

    @classmethod
    def from_bytes(cls, data: bytes) -> "ForwardIndex":
        r = ByteReader(data)
        n = r.varint()
        rows = [tuple(r.varint() for _ in range(r.varint())) for _ in range(n)]
        return cls(rows)


class DocidMap:
    """docids[i] = docid of the i-th lexicographically smallest completion."""

    __slots__ = ("_docids", "_lex_of_docid")

    def __init__(self, docids: list[int]):
        self._docids = docids
        inv = [0] * (len(docids) + 1)
        for lex, d in enumerate(docids, start=1):
            inv[d] = lex
        self._lex_of_docid = inv

    @classmethod
    def build(cls, completions: Sequence[IntCompletion]) -> "DocidMap":
        return cls([c.docid for c in completions])

    def __len__(self) -> int:
        return len(self._docids)

    def docid_at(self, lex_id: int) -> int:
        if not 1 <= lex_id <= len(self._docids):
            raise ValueError(f"lexicographic id {lex_id} out of [1, {len(self._docids)}]")
        return self._docids[lex_id - 1]

    def lex_of(self, docid: int) -> int:
        if not 1 <= docid <= len(self._docids):
            raise ValueError(f"docid {docid} out of [1, {len(self._docids)}]")
        return self._lex_of_docid[docid]

    def as_list(self) -> list[int]:
        return list(self._docids)

    def to_bytes(self) -> bytes:
        w = ByteWriter()
        w.varint(len(self._docids))
        w.raw(np.asarray(self._docids, dtype="<u4").tobytes())
        return w.getvalue()

    @classmethod
    def from_bytes(cls, data: bytes) -> "DocidMap":
        r = ByteReader(data)
        n = r.varint()
        arr = np.frombuffer(r.raw(4 * n), dtype="<u4")
        return cls([int(x) for x in arr])
