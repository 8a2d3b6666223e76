"""
Hash-then-compare PEKS over the SPCHS master keys: the linear-scan baseline.
"""

from __future__ import annotations

import hmac
from dataclasses import dataclass

from constants import BACKEND_PEKS, KEY_BYTES, PEKS_KDF_INFO
from data.store import Record, TagIndexedStore
from utils.core import debug_print
from utils.errors import MalformedElementError, MalformedStoreError
from utils.group import G1Element, GTElement, PairingGroup, deserialize_g1
from utils.keywords import encode_keyword
from utils.sealing import kdf


@dataclass(frozen=True)
class PeksCiphertext:
    a: G1Element
    b: bytes

    @property
    def tag(self) -> bytes:
        return self.a.to_bytes()

    @property
    def payload(self) -> bytes:
        return self.b


class PeksBaseline:
    backend = BACKEND_PEKS

    def __init__(self, group: PairingGroup | None = None):
        self.group = group or PairingGroup()
        self._bases: dict[tuple[bytes, bytes], GTElement] = {}

    def _base(self, mpk, keyword: bytes) -> GTElement:
        key = (mpk.P.to_bytes(), keyword)
        if key not in self._bases:
            self._bases[key] = self.group.pair(mpk.P, self.group.hash_to_g2(keyword))
        return self._bases[key]

    def peks_encrypt(self, mpk, keyword, rng=None) -> PeksCiphertext:
        r = self.group.random_scalar(rng)
        base = self._base(mpk, encode_keyword(keyword))
        digest = kdf(self.group.gt_exp(base, r).to_bytes(), PEKS_KDF_INFO)
        return PeksCiphertext(self.group.g1_mul(self.group.g1, r), digest)

    def peks_test(self, ciphertext: PeksCiphertext, trap) -> bool:
        """One pairing: KDF(e(a, T_W)) == b."""
        digest = kdf(self.group.pair(ciphertext.a, trap.t).to_bytes(), PEKS_KDF_INFO)
        return hmac.compare_digest(digest, ciphertext.b)

    def store_ciphertext(self, store: TagIndexedStore, ciphertext: PeksCiphertext, label=b"") -> int:
        if store.backend != self.backend:
            raise MalformedStoreError("PEKS ciphertexts need a peks store")
        return store.insert(ciphertext.tag, ciphertext.payload, label)

    def decode_ciphertext(self, record: Record) -> PeksCiphertext:
        if len(record.payload) != KEY_BYTES:
            raise MalformedElementError(f"PEKS digest must be {KEY_BYTES} bytes")
        return PeksCiphertext(deserialize_g1(record.tag), record.payload)

    def decode_records(self, store: TagIndexedStore) -> list[tuple[int, PeksCiphertext]]:
        """Decode every record once, in ordinal order."""
        if store.backend != self.backend:
            raise MalformedStoreError(
                f"store holds backend {store.backend} records, expected {self.backend}"
            )
        decoded = []
        for record in store:
            try:
                decoded.append((record.ordinal, self.decode_ciphertext(record)))
            except MalformedElementError as e:
                raise MalformedStoreError(
                    f"record {record.ordinal} is not a PEKS ciphertext: {e}"
                ) from None
        return decoded

    def peks_scan(self, decoded: list[tuple[int, PeksCiphertext]], trap) -> list[int]:
        """Test every decoded record; n pairings for n records."""
        matches = [ordinal for ordinal, ciphertext in decoded if self.peks_test(ciphertext, trap)]
        debug_print(f"PEKS scan tested {len(decoded)} record(s), {len(matches)} match(es)")
        return matches

    def peks_search(self, store: TagIndexedStore, trap) -> list[int]:
        return self.peks_scan(self.decode_records(store), trap)
