"""
SPCHS built directly on a pairing: keyword-searchable ciphertexts linked by
hidden star-like structures.

For a structure with secret u and a keyword W, the first ciphertext carries
the anchor e(P, H(W))^u as its tag; every ciphertext hides, under
e(P, H(W))^r, the random tag of the next ciphertext of W. A trapdoor
H(W)^s lets the server recompute the anchor from the public head g^u and
then unwrap one pointer per match.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field

from constants import BACKEND_SCRATCH, GROUP_NAME, SUPPORTED_SECURITY_LEVELS
from data.store import TagIndexedStore
from schemes.chain import StructuredScheme, follow_chain, pack_fields, unpack_fields
from utils.core import debug_print, resolve_rng
from utils.errors import MalformedElementError, UnsupportedSecurityLevelError
from utils.group import (
    G1_BYTES,
    G1Element,
    G2Element,
    GTElement,
    PairingGroup,
    deserialize_g1,
    deserialize_g2,
    deserialize_gt,
    deserialize_scalar,
    gt_size,
    serialize_scalar,
)
from utils.keywords import encode_keyword

COUNT = struct.Struct("<I")


@dataclass(frozen=True)
class MasterPublicKey:
    P: G1Element
    keyword_space: bytes = b""
    group_name: str = GROUP_NAME
    ciphertext_space: str = "GT x G1 x GT"


@dataclass(frozen=True)
class MasterSecretKey:
    s: int


@dataclass
class StructurePrivate:
    """Sender-local chain state: u and the current pointer per keyword."""

    u: int
    pointers: dict[bytes, GTElement] = field(default_factory=dict)

    @property
    def anchors_emitted(self) -> frozenset[bytes]:
        return frozenset(self.pointers)


@dataclass(frozen=True)
class StructurePublic:
    head: G1Element


@dataclass(frozen=True)
class SpchsCiphertext:
    c1: GTElement
    c2: G1Element
    c3: GTElement

    @property
    def tag(self) -> bytes:
        return self.c1.to_bytes()

    @property
    def payload(self) -> bytes:
        return self.c2.to_bytes() + self.c3.to_bytes()


@dataclass(frozen=True)
class SearchTrapdoor:
    t: G2Element


class ScratchSpchs(StructuredScheme):
    backend = BACKEND_SCRATCH

    def __init__(self, group: PairingGroup | None = None):
        self.group = group or PairingGroup()
        # (P, keyword) -> e(P, H(W))
        self._bases: dict[tuple[bytes, bytes], GTElement] = {}

    # --- the five algorithms ---

    def system_setup(self, security_level=None, keyword_space=b"", rng=None):
        level = security_level or self.group.security_level
        if level not in SUPPORTED_SECURITY_LEVELS:
            raise UnsupportedSecurityLevelError(
                f"security level {level} is not supported "
                f"(supported: {', '.join(map(str, SUPPORTED_SECURITY_LEVELS))})"
            )
        s = self.group.random_scalar(rng)
        mpk = MasterPublicKey(self.group.g1_mul(self.group.g1, s), encode_keyword(keyword_space))
        return mpk, MasterSecretKey(s)

    def structure_init(self, mpk: MasterPublicKey, rng=None):
        u = self.group.random_scalar(rng)
        return StructurePrivate(u), StructurePublic(self.group.g1_mul(self.group.g1, u))

    def keyword_base(self, mpk: MasterPublicKey, keyword: bytes) -> GTElement:
        """e(P, H(W)), cached per master key."""
        key = (mpk.P.to_bytes(), keyword)
        base = self._bases.get(key)
        if base is None:
            base = self.group.pair(mpk.P, self.group.hash_to_g2(keyword))
            self._bases[key] = base
        return base

    def structured_encrypt(self, mpk, keyword, pri: StructurePrivate, rng=None):
        """Encrypt one keyword occurrence and advance the structure's chain."""
        rng = resolve_rng(rng)
        keyword = encode_keyword(keyword)
        base = self.keyword_base(mpk, keyword)
        r = self.group.random_scalar(rng)
        c2 = self.group.g1_mul(self.group.g1, r)
        mask = self.group.gt_exp(base, r)
        fresh = self.group.random_gt(rng)

        if keyword not in pri.pointers:
            c1 = self.group.gt_exp(base, pri.u)
        else:
            c1 = pri.pointers[keyword]
        pri.pointers[keyword] = fresh
        return SpchsCiphertext(c1, c2, mask * fresh)

    def trapdoor(self, msk: MasterSecretKey, keyword) -> SearchTrapdoor:
        return SearchTrapdoor(
            self.group.g2_mul(self.group.hash_to_g2(encode_keyword(keyword)), msk.s)
        )

    def anchor(self, pub: StructurePublic, trap: SearchTrapdoor) -> GTElement:
        return self.group.pair(pub.head, trap.t)

    def disclose_pointer(self, ciphertext: SpchsCiphertext, trap: SearchTrapdoor) -> GTElement:
        return self.group.pair(ciphertext.c2, trap.t).inverse() * ciphertext.c3

    def structured_search(
        self,
        mpk: MasterPublicKey,
        pub: StructurePublic,
        store: TagIndexedStore,
        trap: SearchTrapdoor,
    ) -> list[int]:
        """Ordinals of the trapdoor keyword's ciphertexts under ``pub``, chain order.

        Uses exactly m + 1 pairings for m matches.
        """
        self.check_store(store)
        start = self.anchor(pub, trap).to_bytes()

        def next_tag(record):
            c2, c3 = self.decode_link(record)
            return (self.group.pair(c2, trap.t).inverse() * c3).to_bytes()

        found = follow_chain(store, start, next_tag)
        debug_print(f"Structured search found {len(found)} ciphertext(s)")
        return found

    # --- records and encodings ---

    def decode_link(self, record) -> tuple[G1Element, GTElement]:
        """(c2, c3) of a record; the tag itself is only ever a lookup key."""
        payload = record.payload
        if len(payload) != G1_BYTES + gt_size():
            raise MalformedElementError(f"payload must be {G1_BYTES + gt_size()} bytes")
        return deserialize_g1(payload[:G1_BYTES]), deserialize_gt(payload[G1_BYTES:])

    def decode_ciphertext(self, record) -> SpchsCiphertext:
        c2, c3 = self.decode_link(record)
        return SpchsCiphertext(deserialize_gt(record.tag), c2, c3)

    def encode_public_key(self, mpk: MasterPublicKey) -> bytes:
        return pack_fields(mpk.P.to_bytes(), mpk.keyword_space)

    def decode_public_key(self, data: bytes) -> MasterPublicKey:
        point, keyword_space = unpack_fields(data, 2)
        return MasterPublicKey(deserialize_g1(point), keyword_space)

    def encode_secret_key(self, msk: MasterSecretKey) -> bytes:
        return serialize_scalar(msk.s)

    def decode_secret_key(self, data: bytes) -> MasterSecretKey:
        return MasterSecretKey(deserialize_scalar(data))

    def encode_structure_public(self, pub: StructurePublic) -> bytes:
        return pub.head.to_bytes()

    def decode_structure_public(self, data: bytes) -> StructurePublic:
        return StructurePublic(deserialize_g1(data))

    def encode_trapdoor(self, trap: SearchTrapdoor) -> bytes:
        return trap.t.to_bytes()

    def decode_trapdoor(self, data: bytes) -> SearchTrapdoor:
        return SearchTrapdoor(deserialize_g2(data))

    def encode_structure_private(self, pri: StructurePrivate) -> bytes:
        """u, then (keyword-length, keyword, pointer) records sorted by keyword."""
        out = bytearray(serialize_scalar(pri.u))
        out += COUNT.pack(len(pri.pointers))
        for keyword in sorted(pri.pointers):
            out += COUNT.pack(len(keyword)) + keyword + pri.pointers[keyword].to_bytes()
        return bytes(out)

    def decode_structure_private(self, data: bytes) -> StructurePrivate:
        u = deserialize_scalar(data[:32])
        offset = 32
        if offset + COUNT.size > len(data):
            raise MalformedElementError("truncated private part")
        (count,) = COUNT.unpack_from(data, offset)
        offset += COUNT.size
        pointers: dict[bytes, GTElement] = {}
        for _ in range(count):
            if offset + COUNT.size > len(data):
                raise MalformedElementError("truncated private part")
            (length,) = COUNT.unpack_from(data, offset)
            offset += COUNT.size
            end = offset + length + gt_size()
            if end > len(data):
                raise MalformedElementError("truncated private part")
            keyword = bytes(data[offset : offset + length])
            pointers[keyword] = deserialize_gt(data[offset + length : end])
            offset = end
        if offset != len(data):
            raise MalformedElementError("unexpected trailing bytes in private part")
        return StructurePrivate(u, pointers)
