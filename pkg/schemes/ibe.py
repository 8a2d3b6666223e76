"""
Identity-based encryption of fixed-length messages.

``HashMaskIbe`` is an anonymous CPA scheme: (g^t, m XOR KDF(e(P', H(ID))^t)).
It has no integrity, so decrypting under the wrong identity yields an
unrelated message rather than an error.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Protocol, runtime_checkable

from constants import IBE_DST, IBE_KDF_INFO, KEY_BYTES
from utils.errors import InvalidCiphertextError, MalformedElementError
from utils.group import (
    G1_BYTES,
    G1Element,
    G2Element,
    GTElement,
    PairingGroup,
    deserialize_g1,
    deserialize_g2,
    deserialize_scalar,
    serialize_scalar,
)
from utils.keywords import encode_keyword
from utils.sealing import kdf


@runtime_checkable
class Ibe(Protocol):
    message_bytes: int

    def setup(self, rng=None) -> tuple[Any, Any]: ...

    def extract(self, sk, identity: bytes) -> Any: ...

    def encrypt(self, pk, identity: bytes, message: bytes, rng=None) -> Any: ...

    def decrypt(self, dk, ciphertext) -> bytes: ...

    def encode_public_key(self, pk) -> bytes: ...

    def decode_public_key(self, data: bytes) -> Any: ...

    def encode_secret_key(self, sk) -> bytes: ...

    def decode_secret_key(self, data: bytes) -> Any: ...

    def encode_decryption_key(self, dk) -> bytes: ...

    def decode_decryption_key(self, data: bytes) -> Any: ...

    def encode_ciphertext(self, ciphertext) -> bytes: ...

    def decode_ciphertext(self, data: bytes) -> Any: ...


@dataclass(frozen=True)
class IbePublicKey:
    P: G1Element


@dataclass(frozen=True)
class IbeSecretKey:
    s: int


@dataclass(frozen=True)
class IbeDecryptionKey:
    d: G2Element


@dataclass(frozen=True)
class IbeCiphertext:
    u: G1Element
    v: bytes


class HashMaskIbe:
    message_bytes = KEY_BYTES

    def __init__(self, group: PairingGroup | None = None):
        self.group = group or PairingGroup()
        self._bases: dict[tuple[bytes, bytes], GTElement] = {}

    def _hash(self, identity) -> G2Element:
        return self.group.hash_to_g2(encode_keyword(identity), IBE_DST)

    def _pad(self, value) -> bytes:
        return kdf(value.to_bytes(), IBE_KDF_INFO, self.message_bytes)

    def _base(self, pk: IbePublicKey, identity) -> GTElement:
        key = (pk.P.to_bytes(), encode_keyword(identity))
        base = self._bases.get(key)
        if base is None:
            base = self.group.pair(pk.P, self._hash(identity))
            self._bases[key] = base
        return base

    def setup(self, rng=None):
        s = self.group.random_scalar(rng)
        return IbePublicKey(self.group.g1_mul(self.group.g1, s)), IbeSecretKey(s)

    def extract(self, sk: IbeSecretKey, identity) -> IbeDecryptionKey:
        return IbeDecryptionKey(self.group.g2_mul(self._hash(identity), sk.s))

    def encrypt(self, pk: IbePublicKey, identity, message: bytes, rng=None) -> IbeCiphertext:
        if len(message) != self.message_bytes:
            raise ValueError(f"message must be {self.message_bytes} bytes")
        t = self.group.random_scalar(rng)
        mask = self._pad(self.group.gt_exp(self._base(pk, identity), t))
        return IbeCiphertext(
            self.group.g1_mul(self.group.g1, t),
            bytes(x ^ y for x, y in zip(message, mask)),
        )

    def decrypt(self, dk: IbeDecryptionKey, ciphertext: IbeCiphertext) -> bytes:
        if ciphertext.u.is_identity() or len(ciphertext.v) != self.message_bytes:
            raise InvalidCiphertextError("malformed IBE ciphertext")
        self.group.counters.ibe_decrypts += 1
        mask = self._pad(self.group.pair(ciphertext.u, dk.d))
        return bytes(x ^ y for x, y in zip(ciphertext.v, mask))

    def encode_public_key(self, pk: IbePublicKey) -> bytes:
        return pk.P.to_bytes()

    def decode_public_key(self, data: bytes) -> IbePublicKey:
        return IbePublicKey(deserialize_g1(data))

    def encode_secret_key(self, sk: IbeSecretKey) -> bytes:
        return serialize_scalar(sk.s)

    def decode_secret_key(self, data: bytes) -> IbeSecretKey:
        return IbeSecretKey(deserialize_scalar(data))

    def encode_decryption_key(self, dk: IbeDecryptionKey) -> bytes:
        return dk.d.to_bytes()

    def decode_decryption_key(self, data: bytes) -> IbeDecryptionKey:
        return IbeDecryptionKey(deserialize_g2(data))

    def encode_ciphertext(self, ciphertext: IbeCiphertext) -> bytes:
        return ciphertext.u.to_bytes() + ciphertext.v

    def decode_ciphertext(self, data: bytes) -> IbeCiphertext:
        if len(data) != G1_BYTES + self.message_bytes:
            raise InvalidCiphertextError(
                f"IBE ciphertext must be {G1_BYTES + self.message_bytes} bytes"
            )
        try:
            u = deserialize_g1(data[:G1_BYTES])
        except MalformedElementError as e:
            raise InvalidCiphertextError(f"invalid IBE ciphertext: {e}") from None
        return IbeCiphertext(u, bytes(data[G1_BYTES:]))
