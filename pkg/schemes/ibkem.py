"""
Identity-based key encapsulation.

``Ibkem`` is the interface the generic SPCHS construction is written against.
``PairingIbkem`` is the random-oracle instance: P = g^s, encapsulation g^r,
key KDF(e(P, H(ID))^r). Because the encapsulator knows r it can compute the
key any identity would decapsulate (``fim``), which is what lets a
structure's public head anchor every keyword.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Protocol, runtime_checkable

from constants import IBKEM_DST, IBKEM_KDF_INFO, KEY_BYTES
from utils.core import debug_print
from utils.errors import InvalidEncapsulationError, MalformedElementError
from utils.group import (
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
class Ibkem(Protocol):
    """Setup / Extract / Encaps / Decaps plus the full-identity-malleable key map.

    Keys are ``key_bytes``-long byte-strings. The randomness ``r`` is passed
    in explicitly and is opaque to callers apart from its byte encoding.
    """

    key_bytes: int

    def setup(self, rng=None) -> tuple[Any, Any]: ...

    def extract(self, sk, identity: bytes) -> Any: ...

    def encaps(self, pk, identity: bytes, r) -> tuple[bytes, Any]: ...

    def decaps(self, dk, encapsulation) -> bytes: ...

    def fim(self, pk, identity: bytes, r) -> bytes: ...

    def sample_randomness(self, rng=None) -> Any: ...

    def encode_randomness(self, r) -> bytes: ...

    def decode_randomness(self, data: bytes) -> Any: ...

    def encode_public_key(self, pk) -> bytes: ...

    def decode_public_key(self, data: bytes) -> Any: ...

    def encode_secret_key(self, sk) -> bytes: ...

    def decode_secret_key(self, data: bytes) -> Any: ...

    def encode_encapsulation(self, encapsulation) -> bytes: ...

    def decode_encapsulation(self, data: bytes) -> Any: ...

    def encode_decaps_key(self, dk) -> bytes: ...

    def decode_decaps_key(self, data: bytes) -> Any: ...


@dataclass(frozen=True)
class IbkemPublicKey:
    P: G1Element


@dataclass(frozen=True)
class IbkemSecretKey:
    s: int


@dataclass(frozen=True)
class Encapsulation:
    c: G1Element


@dataclass(frozen=True)
class IbkemDecapsKey:
    d: G2Element


class PairingIbkem:
    key_bytes = KEY_BYTES

    def __init__(self, group: PairingGroup | None = None):
        self.group = group or PairingGroup()
        self._bases: dict[tuple[bytes, bytes], GTElement] = {}

    def _hash(self, identity) -> G2Element:
        return self.group.hash_to_g2(encode_keyword(identity), IBKEM_DST)

    def _key(self, value: GTElement) -> bytes:
        return kdf(value.to_bytes(), IBKEM_KDF_INFO, self.key_bytes)

    def _base(self, pk: IbkemPublicKey, identity) -> GTElement:
        key = (pk.P.to_bytes(), encode_keyword(identity))
        base = self._bases.get(key)
        if base is None:
            base = self.group.pair(pk.P, self._hash(identity))
            self._bases[key] = base
        return base

    def setup(self, rng=None):
        s = self.group.random_scalar(rng)
        return IbkemPublicKey(self.group.g1_mul(self.group.g1, s)), IbkemSecretKey(s)

    def extract(self, sk: IbkemSecretKey, identity) -> IbkemDecapsKey:
        return IbkemDecapsKey(self.group.g2_mul(self._hash(identity), sk.s))

    def encaps(self, pk: IbkemPublicKey, identity, r: int):
        """Deterministic in (identity, r): returns (key, encapsulation)."""
        encapsulation = Encapsulation(self.group.g1_mul(self.group.g1, r))
        return self.fim(pk, identity, r), encapsulation

    def decaps(self, dk: IbkemDecapsKey, encapsulation: Encapsulation) -> bytes:
        if not isinstance(encapsulation, Encapsulation) or encapsulation.c.is_identity():
            raise InvalidEncapsulationError("encapsulation is not a nonidentity G1 element")
        self.group.counters.kem_decaps += 1
        return self._key(self.group.pair(encapsulation.c, dk.d))

    def fim(self, pk: IbkemPublicKey, identity, r: int) -> bytes:
        return self._key(self.group.gt_exp(self._base(pk, identity), r))

    def sample_randomness(self, rng=None) -> int:
        return self.group.random_scalar(rng)

    def encode_randomness(self, r: int) -> bytes:
        return serialize_scalar(r)

    def decode_randomness(self, data: bytes) -> int:
        return deserialize_scalar(data)

    def encode_public_key(self, pk: IbkemPublicKey) -> bytes:
        return pk.P.to_bytes()

    def decode_public_key(self, data: bytes) -> IbkemPublicKey:
        return IbkemPublicKey(deserialize_g1(data))

    def encode_secret_key(self, sk: IbkemSecretKey) -> bytes:
        return serialize_scalar(sk.s)

    def decode_secret_key(self, data: bytes) -> IbkemSecretKey:
        return IbkemSecretKey(deserialize_scalar(data))

    def encode_encapsulation(self, encapsulation: Encapsulation) -> bytes:
        return encapsulation.c.to_bytes()

    def decode_encapsulation(self, data: bytes) -> Encapsulation:
        try:
            return Encapsulation(deserialize_g1(data))
        except MalformedElementError as e:
            debug_print(f"Rejected encapsulation: {e}")
            raise InvalidEncapsulationError(f"invalid encapsulation: {e}") from None

    def encode_decaps_key(self, dk: IbkemDecapsKey) -> bytes:
        return dk.d.to_bytes()

    def decode_decaps_key(self, data: bytes) -> IbkemDecapsKey:
        return IbkemDecapsKey(deserialize_g2(data))
