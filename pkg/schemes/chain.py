"""
Pieces shared by both SPCHS backends: the chain walker used by structured
search and the structure-private-part sealing helpers.
"""

from __future__ import annotations

import struct
from typing import Callable

from constants import KEY_MAGIC, ROLE_PRI_SEALED
from data.store import Record, TagIndexedStore
from utils.core import debug_print, short_hex
from utils.errors import (
    InvalidCiphertextError,
    MalformedElementError,
    MalformedStoreError,
    SpchsError,
)
from utils.sealing import seal, unseal

LENGTH = struct.Struct("<I")


def pack_fields(*fields: bytes) -> bytes:
    """Concatenate byte fields, each prefixed with a u32 little-endian length."""
    return b"".join(LENGTH.pack(len(f)) + bytes(f) for f in fields)


def unpack_fields(data: bytes, count: int) -> list[bytes]:
    fields, offset = [], 0
    for _ in range(count):
        if offset + LENGTH.size > len(data):
            raise MalformedElementError("truncated field length")
        (length,) = LENGTH.unpack_from(data, offset)
        offset += LENGTH.size
        if offset + length > len(data):
            raise MalformedElementError("truncated field")
        fields.append(bytes(data[offset : offset + length]))
        offset += length
    if offset != len(data):
        raise MalformedElementError("unexpected trailing bytes")
    return fields


def follow_chain(
    store: TagIndexedStore,
    start_tag: bytes,
    disclose_next: Callable[[Record], bytes],
) -> list[int]:
    """Walk a hidden chain from ``start_tag``; returns ordinals in chain order.

    Stops when a disclosed pointer matches no stored tag. A pointer that lands
    on an already returned record, or a walk longer than the store, raises
    ``MalformedStoreError``.
    """
    visited: set[int] = set()
    found: list[int] = []
    tag = start_tag
    for _ in range(len(store) + 1):
        record = store.find_by_tag(tag)
        if record is None:
            return found
        if record.ordinal in visited:
            raise MalformedStoreError(
                f"pointer cycle: record {record.ordinal} reached twice"
            )
        visited.add(record.ordinal)
        found.append(record.ordinal)
        try:
            tag = disclose_next(record)
        except (MalformedElementError, InvalidCiphertextError) as e:
            raise MalformedStoreError(
                f"record {record.ordinal} is not a well-formed ciphertext: {e}"
            ) from None
    raise MalformedStoreError(f"chain walk exceeded the store size ({len(store)})")


class StructuredScheme:
    """Behaviour common to the from-scratch and generic SPCHS backends.

    Subclasses provide ``backend`` plus the ``encode_*``/``decode_*`` methods
    and the five scheme algorithms.
    """

    backend: int

    def check_store(self, store: TagIndexedStore) -> None:
        if store.backend != self.backend:
            raise MalformedStoreError(
                f"store holds backend {store.backend} records, expected {self.backend}"
            )

    def store_ciphertext(self, store: TagIndexedStore, ciphertext, pub) -> int:
        """Append a ciphertext labelled with its structure's public part."""
        self.check_store(store)
        ordinal = store.insert(
            ciphertext.tag, ciphertext.payload, self.encode_structure_public(pub)
        )
        debug_print(f"Stored ciphertext #{ordinal} tag={short_hex(ciphertext.tag)}")
        return ordinal

    def _sealing_aad(self) -> bytes:
        return KEY_MAGIC + bytes([ROLE_PRI_SEALED, self.backend])

    def pri_export(self, pri, key: bytes) -> bytes:
        """AES-256-GCM sealed canonical encoding of a structure private part."""
        return seal(self.encode_structure_private(pri), key, self._sealing_aad())

    def pri_import(self, blob: bytes, key: bytes):
        plaintext = unseal(blob, key, self._sealing_aad())
        try:
            return self.decode_structure_private(plaintext)
        except SpchsError:
            raise
        except ValueError as e:
            raise MalformedElementError(f"sealed private part is malformed: {e}") from None

    def rotate_structure(self, mpk, rng=None):
        """Start a fresh structure; the old private part may be destroyed.

        Ciphertexts produced before rotation stay reachable from the old
        public part only.
        """
        debug_print("Rotating hidden structure")
        return self.structure_init(mpk, rng)
