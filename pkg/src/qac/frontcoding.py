"""Two-level front coding over sorted sequences.

The same scheme backs the term dictionary (byte strings) and the completion
set (term-id tuples): items are split into buckets of ``1 + bucket_size``
entries, the first item of each bucket is kept verbatim in a header list and
the rest are delta-coded against their in-bucket predecessor as
(shared-prefix length, remaining suffix).

Lookups binary-search the headers, then decode at most one bucket for exact
search and at most two for prefix ranges.
"""

from __future__ import annotations

from bisect import bisect_right
from typing import Generic, Sequence, TypeVar

S = TypeVar("S", bytes, tuple)


def common_prefix_len(a: Sequence, b: Sequence) -> int:
    n = min(len(a), len(b))
    i = 0
    while i < n and a[i] == b[i]:
        i += 1
    return i


class FrontCodedList(Generic[S]):
    """Front-coded storage of strictly ascending sequences."""

    __slots__ = ("bucket_size", "count", "headers", "_lcps", "_suffixes")

    def __init__(self, bucket_size: int, count: int, headers: list[S],
                 lcps: list[list[int]], suffixes: list[list[S]]):
        self.bucket_size = bucket_size
        self.count = count
        self.headers = headers
        self._lcps = lcps
        self._suffixes = suffixes

    @classmethod
    def build(cls, items: Sequence[S], bucket_size: int) -> "FrontCodedList[S]":
        if bucket_size < 1:
            raise ValueError("bucket size must be >= 1")
        per_bucket = bucket_size + 1
        headers: list[S] = []
        lcps: list[list[int]] = []
        suffixes: list[list[S]] = []
        prev: S | None = None
        for i, item in enumerate(items):
            if prev is not None and item <= prev:
                raise ValueError("items must be strictly ascending and unique")
            if i % per_bucket == 0:
                headers.append(item)
                lcps.append([])
                suffixes.append([])
            else:
                lcp = common_prefix_len(prev, item)  # type: ignore[arg-type]
                lcps[-1].append(lcp)
                suffixes[-1].append(item[lcp:])
            prev = item
        return cls(bucket_size, len(items), headers, lcps, suffixes)

    def __len__(self) -> int:
        return self.count

    def get(self, idx: int) -> S:
        """The idx-th (0-based) item, decoding a single bucket prefix."""
        if not 0 <= idx < self.count:
            raise IndexError(idx)
        b, off = divmod(idx, self.bucket_size + 1)
        cur = self.headers[b]
        for k in range(off):
            cur = cur[: self._lcps[b][k]] + self._suffixes[b][k]
        return cur

    def bucket_items(self, b: int) -> list[S]:
        cur = self.headers[b]
        out = [cur]
        for lcp, suf in zip(self._lcps[b], self._suffixes[b]):
            cur = cur[:lcp] + suf
            out.append(cur)
        return out

    def __iter__(self):
        for b in range(len(self.headers)):
            yield from self.bucket_items(b)

    def lower_bound(self, key: S) -> tuple[int, int]:
        """(number of items < key, buckets decoded)."""
        b = bisect_right(self.headers, key) - 1
        if b < 0:
            return 0, 0
        base = b * (self.bucket_size + 1)
        cur = self.headers[b]
        if cur >= key:  # header == key
            return base, 1
        pos = 1
        for lcp, suf in zip(self._lcps[b], self._suffixes[b]):
            cur = cur[:lcp] + suf
            if cur >= key:
                return base + pos, 1
            pos += 1
        return base + pos, 1

    def find(self, key: S) -> tuple[int, int]:
        """(0-based index of key or -1, buckets decoded)."""
        b = bisect_right(self.headers, key) - 1
        if b < 0:
            return -1, 0
        cur = self.headers[b]
        if cur == key:
            return b * (self.bucket_size + 1), 1
        pos = 1
        for lcp, suf in zip(self._lcps[b], self._suffixes[b]):
            cur = cur[:lcp] + suf
            if cur == key:
                return b * (self.bucket_size + 1) + pos, 1
            if cur > key:
                break
            pos += 1
        return -1, 1
