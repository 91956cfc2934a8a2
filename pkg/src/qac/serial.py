"""Little-endian byte/word stream helpers for the index container."""

from __future__ import annotations

import struct
from typing import Sequence

import numpy as np


class ByteWriter:
    __slots__ = ("_parts",)

    def __init__(self):
        self._parts: list[bytes] = []

    def u32(self, v: int) -> None:
        self._parts.append(struct.pack("<I", v))

    def u64(self, v: int) -> None:
        self._parts.append(struct.pack("<Q", v))

    def f64(self, v: float) -> None:
        self._parts.append(struct.pack("<d", v))

    def varint(self, v: int) -> None:
        if v < 0:
            raise ValueError("varints are unsigned")
        out = bytearray()
        while True:
            b = v & 0x7F
            v >>= 7
            if v:
                out.append(b | 0x80)
            else:
                out.append(b)
                break
        self._parts.append(bytes(out))

    def raw(self, data: bytes) -> None:
        self._parts.append(data)

    def blob(self, data: bytes) -> None:
        self.varint(len(data))
        self.raw(data)

    def words(self, words: Sequence[int]) -> None:
        """Length-prefixed little-endian 64-bit word stream."""
        self.u64(len(words))
        self._parts.append(np.asarray(words, dtype="<u8").tobytes())

    def getvalue(self) -> bytes:
        return b"".join(self._parts)


class ByteReader:
    __slots__ = ("_data", "_pos")

    def __init__(self, data: bytes, pos: int = 0):
        self._data = data
        self._pos = pos

    def u32(self) -> int:
        v = struct.unpack_from("<I", self._data, self._pos)[0]
        self._pos += 4
        return v

    def u64(self) -> int:
        v = struct.unpack_from("<Q", self._data, self._pos)[0]
        self._pos += 8
        return v

    def f64(self) -> float:
        v = struct.unpack_from("<d", self._data, self._pos)[0]
        self._pos += 8
        return v

    def varint(self) -> int:
        v = 0
        shift = 0
        while True:
            b = self._data[self._pos]
            self._pos += 1
            v |= (b & 0x7F) << shift
            if not b & 0x80:
                return v
            shift += 7

    def raw(self, n: int) -> bytes:
        v = self._data[self._pos : self._pos + n]
        if len(v) != n:
            raise ValueError("truncated stream")
        self._pos += n
        return v

    def blob(self) -> bytes:
        return self.raw(self.varint())

    def words(self) -> list[int]:
        n = self.u64()
        arr = np.frombuffer(self._data, dtype="<u8", count=n, offset=self._pos)
        self._pos += 8 * n
        return [int(w) for w in arr]

    def exhausted(self) -> bool:
        return self._pos >= len(self._data)
