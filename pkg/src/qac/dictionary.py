"""Two-level front-coded term dictionary.

Maps terms to 1-based lexicographic ids and back. Terms are compared as raw
UTF-8 bytes; no locale or normalization is involved. ``locate`` and
``locate_prefix`` binary-search the uncompressed bucket headers and then
decode at most one (respectively two) buckets; ``extract`` decodes a single
bucket with no prior search.
"""

from __future__ import annotations

from typing import Sequence

from .frontcoding import FrontCodedList
from .serial import ByteReader, ByteWriter

#: Returned by :meth:`FcDictionary.locate` for out-of-vocabulary terms.
INVALID_TERM_ID = 0

DEFAULT_BUCKET_SIZE = 16


def _prefix_successor(p: bytes) -> bytes | None:
    """Smallest byte string greater than every string prefixed by ``p``."""
    p = p.rstrip(b"\xff")
    if not p:
        return None
    return p[:-1] + bytes([p[-1] + 1])


class FcDictionary:
    __slots__ = ("_fc",)

    def __init__(self, fc: FrontCodedList[bytes]):
        self._fc = fc

    @classmethod
    def build(cls, terms: Sequence[str], bucket_size: int = DEFAULT_BUCKET_SIZE) -> "FcDictionary":
        encoded = [t.encode("utf-8") for t in terms]
        return cls(FrontCodedList.build(encoded, bucket_size))

    @property
    def term_count(self) -> int:
        return self._fc.count

    @property
    def bucket_size(self) -> int:
        return self._fc.bucket_size

    def __len__(self) -> int:
        return self._fc.count

    def locate(self, term: str) -> int:
        """1-based lexicographic id of ``term``, or INVALID_TERM_ID."""
        return self._locate_instrumented(term)[0]

    def _locate_instrumented(self, term: str) -> tuple[int, int]:
        idx, buckets = self._fc.find(term.encode("utf-8"))
        return (idx + 1 if idx >= 0 else INVALID_TERM_ID), buckets

    def locate_prefix(self, prefix: str) -> tuple[int, int] | None:
        """Inclusive 1-based id range of terms starting with ``prefix``.

        Returns None when no term matches; the empty prefix matches all.
        """
        return self._locate_prefix_instrumented(prefix)[0]

    def _locate_prefix_instrumented(self, prefix: str) -> tuple[tuple[int, int] | None, int]:
        if self._fc.count == 0:
            return None, 0
        p = prefix.encode("utf-8")
        if not p:
            return (1, self._fc.count), 0
        lo, b1 = self._fc.lower_bound(p)
        succ = _prefix_successor(p)
        if succ is None:
            hi, b2 = self._fc.count, 0
        else:
            hi, b2 = self._fc.lower_bound(succ)
        if lo >= hi:
            return None, b1 + b2
        return (lo + 1, hi), b1 + b2

    def extract(self, term_id: int) -> str:
        """The term with the given 1-based id; decodes one bucket."""
        if not 1 <= term_id <= self._fc.count:
            raise ValueError(f"term id {term_id} out of [1, {self._fc.count}]")
        return self._fc.get(term_id - 1).decode("utf-8")

    def __iter__(self):
        for raw in self._fc:
            yield raw.decode("utf-8")

    # -- serialization ---------------------------------------------------------

    def to_bytes(self) -> bytes:
        w = ByteWriter()
        w.varint(self._fc.count)
        w.varint(self._fc.bucket_size)
        for b, header in enumerate(self._fc.headers):
            w.blob(header)
            lcps = self._fc._lcps[b]
            w.varint(len(lcps))
            for lcp, suf in zip(lcps, self._fc._suffixes[b]):
                w.varint(lcp)
                w.blob(suf)
        return w.getvalue()

    @classmethod
    def from_bytes(cls, data: bytes) -> "FcDictionary":
        r = ByteReader(data)
        count = r.varint()
        bucket_size = r.varint()
        headers: list[bytes] = []
        lcps: list[list[int]] = []
        suffixes: list[list[bytes]] = []
        remaining = count
        while remaining > 0:
            headers.append(r.blob())
            n = r.varint()
            bucket_lcps: list[int] = []
            bucket_sufs: list[bytes] = []
            for _ in range(n):
                bucket_lcps.append(r.varint())
                bucket_sufs.append(r.blob())
            lcps.append(bucket_lcps)
            suffixes.append(bucket_sufs)
            remaining -= 1 + n
        return cls(FrontCodedList(bucket_size, count, headers, lcps, suffixes))

    def serialized_size_bytes(self) -> int:
        return len(self.to_bytes())
