"""On-disk index container: magic, versioned section table, checksummed payloads.

Layout (all little-endian):

    magic "QACIDX01" | version u32 | section count u32
    per section: name (8 bytes, space padded) | offset u64 | length u64 | crc32 u64
    payloads

All ten sections must be present and their checksums must validate on load.
"""

from __future__ import annotations

import struct
import zlib
from pathlib import Path

MAGIC = b"QACIDX01"
VERSION = 1

SECTION_NAMES = ("DICT", "TRIE", "FCSET", "FWD", "DMAP",
                 "RMQD", "IIDX", "MINL", "RMQM", "META")

_TABLE_ENTRY = struct.Struct("<8sQQQ")
_HEADER = struct.Struct("<8sII")


class ContainerError(ValueError):
    pass


def write_container(path: str | Path, sections: dict[str, bytes]) -> None:
    missing = [n for n in SECTION_NAMES if n not in sections]
    if missing:
        raise ContainerError(f"missing sections: {missing}")
    header_size = _HEADER.size + _TABLE_ENTRY.size * len(SECTION_NAMES)
    offset = header_size
    table = []
    for name in SECTION_NAMES:
        payload = sections[name]
        table.append((name.encode("ascii").ljust(8), offset, len(payload),
                      zlib.crc32(payload)))
        offset += len(payload)
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, VERSION, len(SECTION_NAMES)))
        for entry in table:
            fh.write(_TABLE_ENTRY.pack(*entry))
        for name in SECTION_NAMES:
            fh.write(sections[name])


def read_container(path: str | Path) -> dict[str, bytes]:
    with open(path, "rb") as fh:
        data = fh.read()
    if len(data) < _HEADER.size:
        raise ContainerError("file too short to be an index container")
    magic, version, count = _HEADER.unpack_from(data, 0)
    if magic != MAGIC:
        raise ContainerError(f"bad magic {magic!r}")
    if version != VERSION:
        raise ContainerError(f"unsupported container version {version}")
    if len(data) < _HEADER.size + count * _TABLE_ENTRY.size:
        raise ContainerError("section table truncated")
    sections: dict[str, bytes] = {}
    pos = _HEADER.size
    for _ in range(count):
        raw_name, offset, length, crc = _TABLE_ENTRY.unpack_from(data, pos)
        pos += _TABLE_ENTRY.size
        name = raw_name.rstrip(b" ").decode("ascii")
        payload = data[offset : offset + length]
        if len(payload) != length:
            raise ContainerError(f"section {name} truncated")
        if zlib.crc32(payload) != crc:
            raise ContainerError(f"section {name} failed checksum validation")
        sections[name] = payload
    missing = [n for n in SECTION_NAMES if n not in sections]
    if missing:
        raise ContainerError(f"missing sections: {missing}")
    return sections
