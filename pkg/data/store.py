"""
Tag-indexed ciphertext store and the SPCHSDB1 file format.

Records are append-only and numbered densely from 0. A sorted index over the
canonical tag bytes gives exact-match lookups in at most floor(log2 n) + 1 key
comparisons.
"""

from __future__ import annotations

import struct
import zlib
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Optional

from constants import BACKEND_NAMES, STORE_FLAG_CRC, STORE_MAGIC
from utils.core import debug_print, short_hex
from utils.errors import StoreFormatError, TagCollisionError

HEADER = struct.Struct("<8sBBHI")
LENGTH = struct.Struct("<I")
CRC = struct.Struct("<I")


@dataclass(frozen=True)
class Record:
    tag: bytes
    payload: bytes
    ordinal: int
    label: bytes = b""


class TagIndexedStore:
    """Append-only ciphertext records with a sorted tag index."""

    def __init__(self, backend: int):
        if backend not in BACKEND_NAMES:
            raise ValueError(f"unknown backend byte: {backend}")
        self.backend = backend
        self._records: list[Record] = []
        # parallel sorted arrays: tag bytes -> ordinal
        self._keys: list[bytes] = []
        self._key_ordinals: list[int] = []
        self.comparisons = 0
        self.last_comparisons = 0

    def __len__(self) -> int:
        return len(self._records)

    def __iter__(self) -> Iterator[Record]:
        return iter(self._records)

    @property
    def records(self) -> list[Record]:
        return list(self._records)

    def __getitem__(self, ordinal: int) -> Record:
        return self._records[ordinal]

    def _locate(self, tag: bytes) -> tuple[int, bool, int]:
        """Three-way binary search: (position, found, steps)."""
        lo, hi = 0, len(self._keys) - 1
        steps = 0
        while lo <= hi:
            mid = (lo + hi) // 2
            steps += 1
            key = self._keys[mid]
            if key == tag:
                return mid, True, steps
            if key < tag:
                lo = mid + 1
            else:
                hi = mid - 1
        return lo, False, steps

    def insert(self, tag: bytes, payload: bytes, label: bytes = b"") -> int:
        """Append a record and index its tag; returns the new ordinal."""
        tag = bytes(tag)
        if not tag:
            raise ValueError("record tag must be nonempty")
        position, found, _ = self._locate(tag)
        if found:
            raise TagCollisionError(f"duplicate tag {short_hex(tag)}")
        ordinal = len(self._records)
        self._records.append(Record(tag, bytes(payload), ordinal, bytes(label)))
        self._keys.insert(position, tag)
        self._key_ordinals.insert(position, ordinal)
        return ordinal

    def find_by_tag(self, tag: bytes) -> Optional[Record]:
        position, found, steps = self._locate(bytes(tag))
        self.last_comparisons = steps
        self.comparisons += steps
        if not found:
            return None
        return self._records[self._key_ordinals[position]]

    def reset_comparisons(self) -> None:
        self.comparisons = 0
        self.last_comparisons = 0

    def labels(self) -> list[bytes]:
        """Distinct structure labels in order of first appearance."""
        seen = {}
        for record in self._records:
            seen.setdefault(record.label, None)
        return list(seen)

    # --- persistence ---

    def to_bytes(self) -> bytes:
        region = bytearray()
        for record in self._records:
            for field in (record.tag, record.payload, record.label):
                region += LENGTH.pack(len(field)) + field
        flags = STORE_FLAG_CRC if self._records else 0
        out = HEADER.pack(STORE_MAGIC, self.backend, flags, 0, len(self._records))
        out += bytes(region)
        if flags & STORE_FLAG_CRC:
            out += CRC.pack(zlib.crc32(region))
        return out

    @classmethod
    def from_bytes(cls, data: bytes) -> "TagIndexedStore":
        if len(data) < HEADER.size:
            raise StoreFormatError("truncated store header")
        magic, backend, flags, reserved, count = HEADER.unpack_from(data, 0)
        if magic != STORE_MAGIC:
            raise StoreFormatError("bad magic, not an SPCHSDB1 store")
        if backend not in BACKEND_NAMES:
            raise StoreFormatError(f"unknown backend byte {backend}")
        if reserved != 0 or flags & ~STORE_FLAG_CRC:
            raise StoreFormatError("unsupported header flags")

        store = cls(backend)
        offset = HEADER.size
        end = len(data) - (CRC.size if flags & STORE_FLAG_CRC else 0)
        if end < offset:
            raise StoreFormatError("truncated store")
        for _ in range(count):
            fields = []
            for _field in range(3):
                if offset + LENGTH.size > end:
                    raise StoreFormatError("truncated record length")
                (length,) = LENGTH.unpack_from(data, offset)
                offset += LENGTH.size
                if offset + length > end:
                    raise StoreFormatError("truncated record body")
                fields.append(bytes(data[offset : offset + length]))
                offset += length
            tag, payload, label = fields
            if not tag:
                raise StoreFormatError("record with empty tag")
            store.insert(tag, payload, label)
        if offset != end:
            raise StoreFormatError("unexpected bytes after the last record")
        if flags & STORE_FLAG_CRC:
            (expected,) = CRC.unpack_from(data, end)
            if zlib.crc32(data[HEADER.size : end]) != expected:
                raise StoreFormatError("checksum mismatch")
        return store

    def persist(self, path) -> Path:
        path = Path(path)
        path.write_bytes(self.to_bytes())
        debug_print(f"Persisted {len(self)} record(s) to {path}")
        return path

    @classmethod
    def load(cls, path) -> "TagIndexedStore":
        path = Path(path)
        store = cls.from_bytes(path.read_bytes())
        debug_print(
            f"Loaded {len(store)} {BACKEND_NAMES[store.backend]} record(s) from {path}"
        )
        return store
