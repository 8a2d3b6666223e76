"""
Authenticated encryption of structure private parts (AES-256-GCM) and the
HKDF-based fixed-length KDF used by PEKS, the IBKEM and the IBE.
"""

import os

from cryptography.exceptions import InvalidTag
from cryptography.hazmat.primitives import hashes
from cryptography.hazmat.primitives.ciphers.aead import AESGCM
from cryptography.hazmat.primitives.kdf.hkdf import HKDF

from constants import KEY_BYTES
from utils.errors import PriAuthenticationError

NONCE_BYTES = 12


def kdf(secret: bytes, info: bytes, length: int = KEY_BYTES) -> bytes:
    """Derive a fixed-length key from a canonical group-element encoding."""
    return HKDF(
        algorithm=hashes.SHA256(),
        length=length,
        salt=None,
        info=info,
    ).derive(secret)


def parse_key(text: str) -> bytes:
    """Parse a 64-hex-character sealing key (``SPCHS_PRI_KEY``)."""
    try:
        key = bytes.fromhex(text.strip())
    except ValueError:
        raise ValueError("sealing key must be hex encoded") from None
    if len(key) != KEY_BYTES:
        raise ValueError(f"sealing key must be {KEY_BYTES} bytes")
    return key


def seal(plaintext: bytes, key: bytes, associated_data: bytes) -> bytes:
    if len(key) != KEY_BYTES:
        raise ValueError(f"sealing key must be {KEY_BYTES} bytes")
    nonce = os.urandom(NONCE_BYTES)
    return nonce + AESGCM(key).encrypt(nonce, plaintext, associated_data)


def unseal(blob: bytes, key: bytes, associated_data: bytes) -> bytes:
    if len(key) != KEY_BYTES:
        raise ValueError(f"sealing key must be {KEY_BYTES} bytes")
    if len(blob) < NONCE_BYTES + 16:
        raise PriAuthenticationError("sealed blob is too short")
    nonce, body = blob[:NONCE_BYTES], blob[NONCE_BYTES:]
    try:
        return AESGCM(key).decrypt(nonce, body, associated_data)
    except InvalidTag:
        raise PriAuthenticationError(
            "authentication failed (wrong key or tampered data)"
        ) from None
