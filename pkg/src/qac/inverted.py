"""Compressed inverted index: per-term Elias-Fano docid lists.

Lists are keyed by 1-based term id; every vocabulary term occurs in at
least one completion, so every list is non-empty. Duplicate occurrences of
a term inside one completion yield a single posting. ``minimal`` collects
the first (smallest) docid of each list and feeds the single-term
algorithm's range-minimum structure.
"""

from __future__ import annotations

from typing import Iterator, Sequence

from .corpus import IntCompletion
from .serial import ByteReader, ByteWriter
from .succinct import INFINITY, EliasFanoIterator, EliasFanoSequence


class PostingCursor:
    """Forward-only iterator over one inverted list."""

    __slots__ = ("term_id", "_it", "length")

    def __init__(self, term_id: int, seq: EliasFanoSequence):
        self.term_id = term_id
        self.length = seq.n
        self._it = EliasFanoIterator(seq)

    @property
    def docid(self) -> int:
        return self._it.value

    def next(self) -> int:
        return self._it.next()

    def next_geq(self, x: int) -> int:
        return self._it.next_geq(x)


class InvertedIndex:
    __slots__ = ("lists", "minimal", "universe")

    def __init__(self, lists: list[EliasFanoSequence | None], universe: int):
        self.lists = lists  # index 0 unused
        self.universe = universe
        self.minimal = [0] * len(lists)
        for t in range(1, len(lists)):
            seq = lists[t]
            if seq is None or seq.n == 0:
                raise ValueError(f"term {t} has an empty inverted list")
            self.minimal[t] = seq.access(0)

    @classmethod
    def build(cls, completions: Sequence[IntCompletion], term_count: int,
              completion_count: int) -> "InvertedIndex":
        postings: list[list[int]] = [[] for _ in range(term_count + 1)]
        by_docid = sorted(completions, key=lambda c: c.docid)
        for comp in by_docid:
            for t in set(comp.term_ids):
                postings[t].append(comp.docid)
        universe = completion_count + 1
        lists: list[EliasFanoSequence | None] = [None]
        for t in range(1, term_count + 1):
            lists.append(EliasFanoSequence.encode(postings[t], universe))
        return cls(lists, universe)

    @property
    def term_count(self) -> int:
        return len(self.lists) - 1

    def list_for(self, term_id: int) -> EliasFanoSequence:
        if not 1 <= term_id <= self.term_count:
            raise ValueError(f"term id {term_id} out of [1, {self.term_count}]")
        return self.lists[term_id]  # type: ignore[return-value]

    def iterator(self, term_id: int) -> PostingCursor:
        return PostingCursor(term_id, self.list_for(term_id))

    def intersection(self, term_ids: Sequence[int]) -> Iterator[int]:
        """Lazy ascending iterator over docids common to all given lists.

        The shortest list drives; the others are probed with next_geq in
        ascending length order, so consuming m results touches only the
        postings the leapfrog needs.
        """
        ids = sorted(set(term_ids))
        if not ids:
            raise ValueError("intersection needs at least one term id")
        cursors = sorted((self.iterator(t) for t in ids), key=lambda c: c.length)
        lead = cursors[0]
        rest = cursors[1:]
        x = lead.docid
        while x < INFINITY:
            for cur in rest:
                z = cur.next_geq(x)
                if z > x:
                    if z == INFINITY:
                        return
                    x = lead.next_geq(z)
                    break
            else:
                yield x
                x = lead.next()

    # -- serialization ---------------------------------------------------------

    def to_bytes(self) -> bytes:
        w = ByteWriter()
        w.varint(self.term_count)
        w.varint(self.universe)
        for t in range(1, self.term_count + 1):
            w.words(self.lists[t].to_words())  # type: ignore[union-attr]
        return w.getvalue()

    @classmethod
    def from_bytes(cls, data: bytes) -> "InvertedIndex":
        r = ByteReader(data)
        term_count = r.varint()
        universe = r.varint()
        lists: list[EliasFanoSequence | None] = [None]
        for _ in range(term_count):
            seq, _ = EliasFanoSequence.from_words(r.words())
            lists.append(seq)
        return cls(lists, universe)

    def minimal_to_bytes(self) -> bytes:
        w = ByteWriter()
        w.varint(self.term_count)
        for t in range(1, self.term_count + 1):
            w.varint(self.minimal[t])
        return w.getvalue()

    @staticmethod
    def minimal_from_bytes(data: bytes) -> list[int]:
        r = ByteReader(data)
        n = r.varint()
        return [0] + [r.varint() for _ in range(n)]
