"""Bit-level primitives shared by every index structure.

Two building blocks live here:

* :class:`BitVector` — an immutable packed bit sequence with O(1) amortized
  ``rank`` and fast ``select``, backed by a two-level (superblock/block)
  counting directory.
* :class:`EliasFanoSequence` — a monotone integer sequence in Elias-Fano
  form: fixed-width low bits plus a unary-coded high-bit vector, giving
  random access and forward ``next_geq`` (successor) iteration.

Directories are derived data: serialization emits only the payload bits and
a small header, and the directories are rebuilt on load.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

import numpy as np

#: Sentinel returned by exhausted iterators. Strictly larger than any docid
#: or sequence value the engine ever stores (docids start at 1).
INFINITY = 1 << 62

_WORD = 64
_WORD_MASK = (1 << 64) - 1
_SUPER_WORDS = 8  # superblock = 512 bits

# position of the k-th set bit (k 0-based) inside a byte, or 8 if absent
_BYTE_SELECT = [[8] * 8 for _ in range(256)]
for _b in range(256):
    _k = 0
    for _i in range(8):
        if _b >> _i & 1:
            _BYTE_SELECT[_b][_k] = _i
            _k += 1


def _popcount_words(words: np.ndarray) -> np.ndarray:
    return np.bitwise_count(words).astype(np.int64)


class BitVector:
    """Packed bit sequence with rank/select support.

    ``rank1(i)`` counts ones in positions ``[0, i)``; ``select1(j)`` returns
    the 0-based position of the j-th one (j is 1-based). ``rank0``/``select0``
    are the complements. All four raise ``ValueError`` out of range.
    """

    __slots__ = ("_words", "_len", "_ones", "_super")

    def __init__(self, words: list[int], length: int):
        expected = (length + _WORD - 1) // _WORD
        if len(words) != expected:
            raise ValueError(f"need {expected} words for {length} bits, got {len(words)}")
        if length % _WORD and words and words[-1] >> (length % _WORD):
            raise ValueError("padding bits beyond the declared length must be zero")
        self._words = words
        self._len = length
        self._build_directory()

    def _build_directory(self) -> None:
        # superblock directory: ones before each superblock of 8 words,
        # with a final total entry; per-word counts are cheap popcounts.
        arr = np.array(self._words, dtype=np.uint64)
        pops = _popcount_words(arr) if len(arr) else np.zeros(0, dtype=np.int64)
        n_super = (len(self._words) + _SUPER_WORDS - 1) // _SUPER_WORDS
        sup = [0] * (n_super + 1)
        total = 0
        for s in range(n_super):
            sup[s] = total
            total += int(pops[s * _SUPER_WORDS : (s + 1) * _SUPER_WORDS].sum())
        sup[n_super] = total
        self._super = sup
        self._ones = total

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitVector":
        words: list[int] = []
        cur = 0
        off = 0
        n = 0
        for b in bits:
            if b:
                cur |= 1 << off
            off += 1
            n += 1
            if off == _WORD:
                words.append(cur)
                cur = 0
                off = 0
        if off:
            words.append(cur)
        return cls(words, n)

    @classmethod
    def from_positions(cls, length: int, positions: Sequence[int]) -> "BitVector":
        """Bit vector of ``length`` bits with ones at the given positions."""
        n_words = (length + _WORD - 1) // _WORD
        if len(positions) > 512:
            pos = np.asarray(positions, dtype=np.int64)
            if len(pos) and (pos.min() < 0 or pos.max() >= length):
                raise ValueError("bit position out of range")
            words_arr = np.zeros(n_words, dtype=np.uint64)
            np.bitwise_or.at(words_arr, pos >> 6, np.uint64(1) << (pos & 63).astype(np.uint64))
            words = [int(w) for w in words_arr]
        else:
            words = [0] * n_words
            for p in positions:
                if not 0 <= p < length:
                    raise ValueError("bit position out of range")
                words[p >> 6] |= 1 << (p & 63)
        return cls(words, length)

    # -- queries ---------------------------------------------------------------

    def __len__(self) -> int:
        return self._len

    @property
    def ones(self) -> int:
        return self._ones

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self._len:
            raise IndexError(i)
        return self._words[i >> 6] >> (i & 63) & 1

    def rank1(self, i: int) -> int:
        if not 0 <= i <= self._len:
            raise ValueError(f"rank position {i} out of [0, {self._len}]")
        w, rem = i >> 6, i & 63
        s = w >> 3
        count = self._super[s]
        for k in range(s * _SUPER_WORDS, w):
            count += (self._words[k]).bit_count()
        if rem:
            count += (self._words[w] & ((1 << rem) - 1)).bit_count()
        return count

    def rank0(self, i: int) -> int:
        return i - self.rank1(i)

    def select1(self, j: int) -> int:
        if not 1 <= j <= self._ones:
            raise ValueError(f"select1 occurrence {j} out of [1, {self._ones}]")
        # binary search the superblock directory, then scan at most 8 words
        sup = self._super
        lo, hi = 0, len(sup) - 1
        while lo + 1 < hi:
            mid = (lo + hi) // 2
            if sup[mid] < j:
                lo = mid
            else:
                hi = mid
        count = sup[lo]
        w = lo * _SUPER_WORDS
        while True:
            c = (self._words[w]).bit_count()
            if count + c >= j:
                return w * _WORD + self._select_in_word(self._words[w], j - count)
            count += c
            w += 1

    def select0(self, j: int) -> int:
        zeros = self._len - self._ones
        if not 1 <= j <= zeros:
            raise ValueError(f"select0 occurrence {j} out of [1, {zeros}]")
        sup = self._super
        # zeros before superblock s = s*512 - sup[s] (valid for s covering real bits)
        lo, hi = 0, len(sup) - 1
        while lo + 1 < hi:
            mid = (lo + hi) // 2
            if mid * _SUPER_WORDS * _WORD - sup[mid] < j:
                lo = mid
            else:
                hi = mid
        w = lo * _SUPER_WORDS
        count = w * _WORD - sup[lo]
        while True:
            valid = min(_WORD, self._len - w * _WORD)
            inv = ~self._words[w] & ((1 << valid) - 1)
            c = inv.bit_count()
            if count + c >= j:
                return w * _WORD + self._select_in_word(inv, j - count)
            count += c
            w += 1

    @staticmethod
    def _select_in_word(word: int, k: int) -> int:
        # k is 1-based within the word
        off = 0
        while True:
            byte = word & 0xFF
            c = byte.bit_count()
            if c >= k:
                return off + _BYTE_SELECT[byte][k - 1]
            k -= c
            word >>= 8
            off += 8

    def next_one(self, start: int) -> int:
        """Position of the first set bit at or after ``start``, or -1."""
        if start >= self._len:
            return -1
        w = start >> 6
        word = self._words[w] >> (start & 63)
        if word:
            return start + (word & -word).bit_length() - 1
        for w in range(w + 1, len(self._words)):
            if self._words[w]:
                word = self._words[w]
                return w * _WORD + (word & -word).bit_length() - 1
        return -1

    # -- serialization ---------------------------------------------------------

    @property
    def words(self) -> list[int]:
        return self._words

    def payload_bits(self) -> int:
        return self._len

    def to_words(self) -> list[int]:
        return [self._len, len(self._words)] + self._words

    @classmethod
    def from_words(cls, words: Sequence[int], offset: int = 0) -> tuple["BitVector", int]:
        length = words[offset]
        n_words = words[offset + 1]
        body = list(words[offset + 2 : offset + 2 + n_words])
        return cls(body, length), offset + 2 + n_words


class EliasFanoSequence:
    """Monotone non-decreasing integers below ``universe`` in Elias-Fano form.

    Low ``low_width`` bits of each value are packed contiguously; high parts
    are unary-coded as a bit vector with the i-th one at position
    ``high(i) + i``. ``access`` is O(1) amortized via select on the high bits.
    """

    __slots__ = ("n", "universe", "low_width", "_low_words", "_high", "_last")

    def __init__(self, n: int, universe: int, low_width: int,
                 low_words: list[int], high: BitVector):
        self.n = n
        self.universe = universe
        self.low_width = low_width
        self._low_words = low_words
        self._high = high
        self._last = self.access(n - 1) if n else None

    @staticmethod
    def low_bit_width(n: int, universe: int) -> int:
        """max(0, floor(log2(universe/n))), computed exactly on integers."""
        if n == 0:
            return 0
        return max(0, (universe // n).bit_length() - 1)

    @classmethod
    def encode(cls, values: Sequence[int], universe: int) -> "EliasFanoSequence":
        if universe < 1:
            raise ValueError("universe must be >= 1")
        n = len(values)
        if n == 0:
            return cls(0, universe, 0, [], BitVector([], 0))
        prev = 0
        for v in values:
            if v < prev:
                raise ValueError("input sequence must be monotone non-decreasing")
            if v >= universe:
                raise ValueError(f"value {v} not below universe {universe}")
            prev = v
        lw = cls.low_bit_width(n, universe)
        low_mask = (1 << lw) - 1
        low_words: list[int] = []
        if lw:
            cur = 0
            off = 0
            for v in values:
                cur |= (v & low_mask) << off
                off += lw
                if off >= _WORD:
                    low_words.append(cur & _WORD_MASK)
                    cur >>= _WORD
                    off -= _WORD
            if off:
                low_words.append(cur)
        high_len = n + ((universe - 1) >> lw) + 1
        if n > 512:
            vals = np.asarray(values, dtype=np.int64)
            ones = (vals >> lw) + np.arange(n, dtype=np.int64)
            high = BitVector.from_positions(high_len, ones)
        else:
            high = BitVector.from_positions(high_len, [(v >> lw) + i for i, v in enumerate(values)])
        return cls(n, universe, lw, low_words, high)

    def __len__(self) -> int:
        return self.n

    def _low(self, i: int) -> int:
        lw = self.low_width
        if lw == 0:
            return 0
        start = i * lw
        w, off = start >> 6, start & 63
        chunk = self._low_words[w] >> off
        if off + lw > _WORD:
            chunk |= self._low_words[w + 1] << (_WORD - off)
        return chunk & ((1 << lw) - 1)

    def access(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(f"index {i} out of range for sequence of {self.n}")
        high = self._high.select1(i + 1) - i
        return (high << self.low_width) | self._low(i)

    def __iter__(self) -> Iterator[int]:
        pos = -1
        for i in range(self.n):
            pos = self._high.next_one(pos + 1)
            yield ((pos - i) << self.low_width) | self._low(i)

    @property
    def last(self) -> int | None:
        return self._last

    def iterator(self) -> "EliasFanoIterator":
        return EliasFanoIterator(self)

    def next_geq_index(self, x: int, lo: int, hi: int) -> int:
        """Smallest index in [lo, hi) whose value is >= x, or hi."""
        while lo < hi:
            mid = (lo + hi) // 2
            if self.access(mid) < x:
                lo = mid + 1
            else:
                hi = mid
        return lo

    # -- serialization ---------------------------------------------------------

    def payload_bits(self) -> int:
        return self.n * self.low_width + len(self._high)

    def to_words(self) -> list[int]:
        out = [self.n, self.universe, self.low_width, len(self._low_words)]
        out.extend(self._low_words)
        out.extend(self._high.to_words())
        return out

    @classmethod
    def from_words(cls, words: Sequence[int], offset: int = 0) -> tuple["EliasFanoSequence", int]:
        n, universe, lw, n_low = words[offset : offset + 4]
        offset += 4
        low_words = list(words[offset : offset + n_low])
        offset += n_low
        high, offset = BitVector.from_words(words, offset)
        return cls(n, universe, lw, low_words, high), offset


class EliasFanoIterator:
    """Forward-only cursor over an :class:`EliasFanoSequence`.

    The cursor starts positioned at the first element; ``value`` is
    :data:`INFINITY` once exhausted. Cursors are caller-local state.
    """

    __slots__ = ("_seq", "_idx", "_high_pos", "value")

    def __init__(self, seq: EliasFanoSequence):
        self._seq = seq
        if seq.n == 0:
            self._idx = 0
            self._high_pos = -1
            self.value = INFINITY
        else:
            self._idx = 0
            self._high_pos = seq._high.next_one(0)
            self.value = ((self._high_pos) << seq.low_width) | seq._low(0)

    @property
    def index(self) -> int:
        return self._idx

    def next(self) -> int:
        """Advance one element; returns the new value or INFINITY."""
        if self.value == INFINITY:
            return INFINITY
        seq = self._seq
        self._idx += 1
        if self._idx >= seq.n:
            self.value = INFINITY
            return INFINITY
        self._high_pos = seq._high.next_one(self._high_pos + 1)
        self.value = ((self._high_pos - self._idx) << seq.low_width) | seq._low(self._idx)
        return self.value

    def next_geq(self, x: int) -> int:
        """Smallest element >= x at or after the cursor; advances the cursor."""
        if self.value == INFINITY or x <= self.value:
            return self.value
        seq = self._seq
        if seq._last is None or x > seq._last:
            self._idx = seq.n
            self.value = INFINITY
            return INFINITY
        lw = seq.low_width
        hx = x >> lw
        if hx > (self.value >> lw):
            # jump: first index whose high part is >= hx, via the zero that
            # terminates bucket hx-1 in the high bit vector
            high = seq._high
            zero_pos = high.select0(hx)
            i = high.rank1(zero_pos)
            if i > self._idx:
                self._idx = i
                self._high_pos = high.select1(i + 1)
                self.value = ((self._high_pos - i) << lw) | seq._low(i)
        while self.value < x:
            self.next()
        return self.value
