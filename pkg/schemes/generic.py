"""
Generic SPCHS from any collision-free full-identity malleable IBKEM and any
IBE whose message space equals the IBKEM key space.

Pub is an encapsulation for a reserved identity under randomness u. The
first ciphertext of W carries the tag fim(W, u); each ciphertext body
IBE-encrypts, under identity W, the random tag of the next one.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from typing import Any

from constants import BACKEND_GENERIC, RESERVED_INIT_KEYWORD, SUPPORTED_SECURITY_LEVELS
from data.store import TagIndexedStore
from schemes.chain import StructuredScheme, follow_chain, pack_fields, unpack_fields
from schemes.ibe import Ibe
from schemes.ibkem import Ibkem
from utils.core import debug_print, resolve_rng
from utils.errors import MalformedElementError, UnsupportedSecurityLevelError
from utils.keywords import encode_keyword

COUNT = struct.Struct("<I")


@dataclass(frozen=True)
class GenericMasterPublicKey:
    kem_pk: Any
    ibe_pk: Any
    keyword_space: bytes = b""


@dataclass(frozen=True)
class GenericMasterSecretKey:
    kem_sk: Any
    ibe_sk: Any


@dataclass
class GenericPrivate:
    u: Any
    pointers: dict[bytes, bytes] = field(default_factory=dict)

    @property
    def anchors_emitted(self) -> frozenset[bytes]:
        return frozenset(self.pointers)


@dataclass(frozen=True)
class GenericPublic:
    encapsulation: Any


@dataclass(frozen=True)
class GenericCiphertext:
    tag: bytes
    body: Any
    payload: bytes


@dataclass(frozen=True)
class GenericTrapdoor:
    kem_key: Any
    ibe_key: Any


class GenericSpchs(StructuredScheme):
    backend = BACKEND_GENERIC

    def __init__(self, kem: Ibkem, ibe: Ibe):
        if kem.key_bytes != ibe.message_bytes:
            raise ValueError(
                f"IBKEM key space ({kem.key_bytes} bytes) must equal the IBE "
                f"message space ({ibe.message_bytes} bytes)"
            )
        self.kem = kem
        self.ibe = ibe
        # operation counters, when the backends expose a pairing context
        self.group = getattr(kem, "group", None)

    @property
    def pointer_bytes(self) -> int:
        return self.kem.key_bytes

    def system_setup(self, security_level=None, keyword_space=b"", rng=None):
        level = security_level or SUPPORTED_SECURITY_LEVELS[0]
        if level not in SUPPORTED_SECURITY_LEVELS:
            raise UnsupportedSecurityLevelError(f"security level {level} is not supported")
        rng = resolve_rng(rng)
        kem_pk, kem_sk = self.kem.setup(rng)
        ibe_pk, ibe_sk = self.ibe.setup(rng)
        return (
            GenericMasterPublicKey(kem_pk, ibe_pk, encode_keyword(keyword_space)),
            GenericMasterSecretKey(kem_sk, ibe_sk),
        )

    def structure_init(self, mpk: GenericMasterPublicKey, rng=None):
        u = self.kem.sample_randomness(rng)
        _, encapsulation = self.kem.encaps(mpk.kem_pk, RESERVED_INIT_KEYWORD, u)
        return GenericPrivate(u), GenericPublic(encapsulation)

    def structured_encrypt(self, mpk, keyword, pri: GenericPrivate, rng=None):
        rng = resolve_rng(rng)
        keyword = encode_keyword(keyword)
        if keyword not in pri.pointers:
            tag = self.kem.fim(mpk.kem_pk, keyword, pri.u)
        else:
            tag = pri.pointers[keyword]
        fresh = rng.randbytes(self.pointer_bytes)
        body = self.ibe.encrypt(mpk.ibe_pk, keyword, fresh, rng)
        pri.pointers[keyword] = fresh
        return GenericCiphertext(tag, body, self.ibe.encode_ciphertext(body))

    def trapdoor(self, msk: GenericMasterSecretKey, keyword) -> GenericTrapdoor:
        keyword = encode_keyword(keyword)
        return GenericTrapdoor(
            self.kem.extract(msk.kem_sk, keyword), self.ibe.extract(msk.ibe_sk, keyword)
        )

    def anchor(self, pub: GenericPublic, trap: GenericTrapdoor) -> bytes:
        return self.kem.decaps(trap.kem_key, pub.encapsulation)

    def structured_search(
        self,
        mpk: GenericMasterPublicKey,
        pub: GenericPublic,
        store: TagIndexedStore,
        trap: GenericTrapdoor,
    ) -> list[int]:
        """One decapsulation for the anchor, then one IBE decryption per match."""
        self.check_store(store)
        start = self.anchor(pub, trap)

        def next_tag(record):
            return self.ibe.decrypt(trap.ibe_key, self.decode_ciphertext(record).body)

        found = follow_chain(store, start, next_tag)
        debug_print(f"Generic structured search found {len(found)} ciphertext(s)")
        return found

    g_system_setup = system_setup
    g_structure_init = structure_init
    g_structured_encrypt = structured_encrypt
    g_trapdoor = trapdoor
    g_structured_search = structured_search

    # --- records and encodings ---

    def decode_ciphertext(self, record) -> GenericCiphertext:
        if len(record.tag) != self.pointer_bytes:
            raise MalformedElementError(f"tag must be {self.pointer_bytes} bytes")
        body = self.ibe.decode_ciphertext(record.payload)
        return GenericCiphertext(record.tag, body, record.payload)

    def encode_public_key(self, mpk: GenericMasterPublicKey) -> bytes:
        return pack_fields(
            self.kem.encode_public_key(mpk.kem_pk),
            self.ibe.encode_public_key(mpk.ibe_pk),
            mpk.keyword_space,
        )

    def decode_public_key(self, data: bytes) -> GenericMasterPublicKey:
        kem_pk, ibe_pk, keyword_space = unpack_fields(data, 3)
        return GenericMasterPublicKey(
            self.kem.decode_public_key(kem_pk), self.ibe.decode_public_key(ibe_pk), keyword_space
        )

    def encode_secret_key(self, msk: GenericMasterSecretKey) -> bytes:
        return pack_fields(
            self.kem.encode_secret_key(msk.kem_sk), self.ibe.encode_secret_key(msk.ibe_sk)
        )

    def decode_secret_key(self, data: bytes) -> GenericMasterSecretKey:
        kem_sk, ibe_sk = unpack_fields(data, 2)
        return GenericMasterSecretKey(
            self.kem.decode_secret_key(kem_sk), self.ibe.decode_secret_key(ibe_sk)
        )

    def encode_structure_public(self, pub: GenericPublic) -> bytes:
        return self.kem.encode_encapsulation(pub.encapsulation)

    def decode_structure_public(self, data: bytes) -> GenericPublic:
        return GenericPublic(self.kem.decode_encapsulation(data))

    def encode_trapdoor(self, trap: GenericTrapdoor) -> bytes:
        return pack_fields(
            self.kem.encode_decaps_key(trap.kem_key),
            self.ibe.encode_decryption_key(trap.ibe_key),
        )

    def decode_trapdoor(self, data: bytes) -> GenericTrapdoor:
        kem_key, ibe_key = unpack_fields(data, 2)
        return GenericTrapdoor(
            self.kem.decode_decaps_key(kem_key), self.ibe.decode_decryption_key(ibe_key)
        )

    def encode_structure_private(self, pri: GenericPrivate) -> bytes:
        """Encoded u, then (keyword, pointer) field pairs sorted by keyword."""
        out = bytearray(pack_fields(self.kem.encode_randomness(pri.u)))
        out += COUNT.pack(len(pri.pointers))
        for keyword in sorted(pri.pointers):
            out += pack_fields(keyword, pri.pointers[keyword])
        return bytes(out)

    def decode_structure_private(self, data: bytes) -> GenericPrivate:
        if len(data) < COUNT.size:
            raise MalformedElementError("truncated private part")
        (length,) = COUNT.unpack_from(data, 0)
        u = self.kem.decode_randomness(data[COUNT.size : COUNT.size + length])
        rest = data[COUNT.size + length :]
        if len(rest) < COUNT.size:
            raise MalformedElementError("truncated private part")
        (count,) = COUNT.unpack_from(rest, 0)
        entries = unpack_fields(rest[COUNT.size :], 2 * count)
        pointers = {}
        for keyword, pointer in zip(entries[::2], entries[1::2]):
            if len(pointer) != self.pointer_bytes:
                raise MalformedElementError(f"pointer must be {self.pointer_bytes} bytes")
            pointers[keyword] = pointer
        return GenericPrivate(u, pointers)
