"""Succinct range-minimum queries and heap-based top-k-smallest extraction.

:class:`SuccinctRmq` stores only the shape of the cartesian tree of the
source array, as 2n+2 balanced parentheses produced by the classic
left-to-right stack construction (an opening super-root parenthesis, one
open per element, pops on strictly-greater stack tops so that ties keep the
leftmost minimum). The array values themselves are never retained.

A query rmq(l, r) maps l and r to their opening parentheses and finds the
rightmost minimum excess in between:

* if the minimum never drops below l's depth, l's node is an ancestor of
  r's and l is the answer;
* otherwise the minimum equals the depth of the lowest common ancestor and
  is attained exactly at the closes of its children lying between the two
  branches; the parenthesis right after the rightmost such close opens the
  child subtree holding r, whose element is the leftmost minimum.

The excess scan runs on bytes with precomputed (delta, min, argmin) tables
plus a 256-bit superblock directory, so a query costs O(range/256) table
steps. Navigation directories and the open-position index are derived data,
rebuilt on load; only the parentheses are serialized, which keeps the
structure at 2n + O(1) bits on disk (within the 2.5n + constant budget).
"""

from __future__ import annotations

import heapq
from bisect import bisect_left
from typing import Callable, Sequence

import numpy as np

from .serial import ByteReader, ByteWriter

_SUPER_BYTES = 32  # superblock = 256 bits
_HUGE = 1 << 30


def _span_excess(chunk: int, nbits: int) -> tuple[int, int, int]:
    """(delta, min prefix excess, last offset attaining the min) for a bit
    span scanned LSB-first, '(' = 1."""
    delta = 0
    mn = _HUGE
    off = -1
    for i in range(nbits):
        delta += 1 if chunk >> i & 1 else -1
        if delta <= mn:
            mn = delta
            off = i
    return delta, mn, off


# per span width 1..8, per byte value: (delta, min, last argmin offset)
_K_TABLES: list[list[tuple[int, int, int]]] = [[]]
for _k in range(1, 9):
    _K_TABLES.append([_span_excess(_b & ((1 << _k) - 1), _k) for _b in range(256)])
_BYTE_TABLE = _K_TABLES[8]


class SuccinctRmq:
    __slots__ = ("n", "length", "_stream", "_open_pos",
                 "_bdelta", "_bmin", "_sdelta", "_smin")

    def __init__(self, stream: bytes, n: int):
        self.n = n
        self.length = 2 * n + 2
        if len(stream) != (self.length + 7) // 8:
            raise ValueError("parentheses stream length must be 2n+2 bits")
        self._stream = stream
        self._build_directories()

    @classmethod
    def build(cls, values: Sequence[int]) -> "SuccinctRmq":
        n = len(values)
        if n == 0:
            raise ValueError("cannot build RMQ over an empty array")
        stream = bytearray((2 * n + 2 + 7) // 8)
        stream[0] = 1  # super-root open at position 0
        pos = 1
        stack: list[int] = []
        for v in values:
            while stack and stack[-1] > v:
                stack.pop()
                pos += 1  # close
            stack.append(v)
            stream[pos >> 3] |= 1 << (pos & 7)
            pos += 1
        # the remaining closes are zero bits already
        return cls(bytes(stream), n)

    def _build_directories(self) -> None:
        stream = self._stream
        length = self.length
        tail_bits = length & 7
        bdelta: list[int] = []
        bmin: list[int] = []
        opens: list[int] = []
        if len(stream) > 4096:
            arr = np.frombuffer(stream, dtype=np.uint8)
            bits = np.unpackbits(arr, bitorder="little")[:length]
            opens = np.flatnonzero(bits).tolist()
            deltas = bits.astype(np.int32) * 2 - 1
            table_d = np.array([t[0] for t in _BYTE_TABLE], dtype=np.int32)
            table_m = np.array([t[1] for t in _BYTE_TABLE], dtype=np.int32)
            full = arr if not tail_bits else arr[:-1]
            bdelta = table_d[full].tolist()
            bmin = table_m[full].tolist()
            if tail_bits:
                d, m, _ = _K_TABLES[tail_bits][stream[-1] & ((1 << tail_bits) - 1)]
                bdelta.append(d)
                bmin.append(m)
        else:
            for j, byte in enumerate(stream):
                nbits = 8 if (j + 1) * 8 <= length else tail_bits
                d, m, _ = _K_TABLES[nbits][byte & ((1 << nbits) - 1)]
                bdelta.append(d)
                bmin.append(m)
                base = j << 3
                word = byte
                while word:
                    low = word & -word
                    opens.append(base + low.bit_length() - 1)
                    word ^= low
        self._open_pos = opens
        self._bdelta = bdelta
        self._bmin = bmin
        sdelta: list[int] = []
        smin: list[int] = []
        for s in range(0, len(bdelta), _SUPER_BYTES):
            delta = 0
            mn = _HUGE
            for j in range(s, min(s + _SUPER_BYTES, len(bdelta))):
                if delta + bmin[j] < mn:
                    mn = delta + bmin[j]
                delta += bdelta[j]
            sdelta.append(delta)
            smin.append(mn)
        self._sdelta = sdelta
        self._smin = smin

    # -- queries ---------------------------------------------------------------

    def bit(self, pos: int) -> int:
        return self._stream[pos >> 3] >> (pos & 7) & 1

    @property
    def open_count(self) -> int:
        return len(self._open_pos)

    def rmq(self, p: int, q: int) -> int:
        """1-based position of the leftmost minimum of the source array on [p, q]."""
        if not 1 <= p <= q <= self.n:
            raise ValueError(f"invalid range [{p}, {q}] for array of {self.n}")
        if p == q:
            return p
        opens = self._open_pos
        x = opens[p]      # open of element p-1 (super root is opens[0])
        y = opens[q]
        depth_l = 2 * (p + 1) - (x + 1)
        mval, mpos = self._min_excess_rightmost(x + 1, y, depth_l)
        if mval >= depth_l:
            return p
        # element whose open parenthesis sits at mpos + 1
        return bisect_left(opens, mpos)

    def _min_excess_rightmost(self, a: int, b: int, excess: int) -> tuple[int, int]:
        """(minimum of excess(p) for p in [a, b], rightmost p attaining it);
        ``excess`` enters as excess(a-1)."""
        stream = self._stream
        ja, jb = a >> 3, b >> 3
        best = _HUGE
        best_pos = -1
        j = ja
        la = a & 7
        if la or ja == jb:
            hi = min(b, (ja << 3) + 7)
            k = hi - a + 1
            chunk = (stream[ja] >> la) & ((1 << k) - 1)
            d, m, off = _K_TABLES[k][chunk]
            if excess + m <= best:
                best = excess + m
                best_pos = a + off
            excess += d
            if hi == b:
                return best, best_pos
            j = ja + 1
        # full bytes; the byte holding b is full only when b ends it
        last_full = ((b - 7) >> 3)
        best_byte = -1
        best_byte_excess = 0
        bdelta = self._bdelta
        bmin = self._bmin
        while j <= last_full:
            if (j & 31) == 0 and j + _SUPER_BYTES - 1 <= last_full:
                s = j >> 5
                if excess + self._smin[s] > best:
                    excess += self._sdelta[s]
                    j += _SUPER_BYTES
                    continue
            m = excess + bmin[j]
            if m <= best:
                best = m
                best_byte = j
                best_byte_excess = excess
            excess += bdelta[j]
            j += 1
        pos = j << 3
        if pos <= b:
            k = b - pos + 1
            chunk = stream[j] & ((1 << k) - 1)
            d, m, off = _K_TABLES[k][chunk]
            if excess + m <= best:
                best = excess + m
                best_pos = pos + off
                best_byte = -1
        if best_byte >= 0:
            _, _, off = _BYTE_TABLE[stream[best_byte]]
            best_pos = (best_byte << 3) + off
        return best, best_pos

    # -- serialization ---------------------------------------------------------

    def payload_bits(self) -> int:
        return self.length

    def to_bytes(self) -> bytes:
        w = ByteWriter()
        w.varint(self.n)
        w.blob(self._stream)
        return w.getvalue()

    @classmethod
    def from_bytes(cls, data: bytes) -> "SuccinctRmq":
        r = ByteReader(data)
        n = r.varint()
        return cls(r.blob(), n)


def topk_smallest(accessor: Callable[[int], int], rmq: SuccinctRmq,
                  p: int, q: int, k: int,
                  counters: dict | None = None) -> list[tuple[int, int]]:
    """Up to k (position, value) pairs with the smallest values on [p, q],
    ascending by value (ties by position).

    ``accessor`` maps a 1-based position to the array value; the RMQ
    structure holds only positions. The range min-heap pushes at most two
    sub-ranges per extraction and never exceeds k+1 entries.
    """
    if not 1 <= p <= q <= rmq.n:
        raise ValueError(f"invalid range [{p}, {q}]")
    if k < 1:
        raise ValueError("k must be >= 1")
    m = rmq.rmq(p, q)
    heap: list[tuple[int, int, int, int]] = [(accessor(m), m, p, q)]
    pushes = 1
    pops = 0
    max_heap = 1
    out: list[tuple[int, int]] = []
    while heap and len(out) < k:
        value, m, a, b = heapq.heappop(heap)
        pops += 1
        out.append((m, value))
        if len(out) == k:
            break
        if a < m:
            lm = rmq.rmq(a, m - 1)
            heapq.heappush(heap, (accessor(lm), lm, a, m - 1))
            pushes += 1
        if m < b:
            rm = rmq.rmq(m + 1, b)
            heapq.heappush(heap, (accessor(rm), rm, m + 1, b))
            pushes += 1
        if len(heap) > max_heap:
            max_heap = len(heap)
    if counters is not None:
        counters["pushes"] = pushes
        counters["pops"] = pops
        counters["max_heap"] = max_heap
    return out
