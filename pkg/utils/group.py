"""
Pairing group backend over BLS12-381 (type-3 pairing).

Elements paired on the left (generators, public keys, g^r) live in G1; hash
outputs and trapdoors live in G2. Every element has a fixed-length canonical
encoding, and decoding validates canonicality and subgroup membership.

The arithmetic comes from an engine chosen once per process with
``SPCHS_PAIRING``:

- ``py_ecc``: pure Python, always available, slow (a pairing takes a large
  fraction of a second).
- ``blst``: native BLS12-381 through ``blspy``, used for benchmark-scale runs.
- ``auto`` (default): ``blst`` when ``blspy`` is importable, else ``py_ecc``.

G1, G2 and scalar encodings are the same under both engines (ZCash
compressed points, RFC 9380 hash-to-G2). GT encodings are engine-specific,
so a store or private part written under one engine is read back under the
same one.

Operation counters live on each ``PairingGroup`` instance so that parallel
benchmark contexts never share counts.
"""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass, field, replace
from functools import cached_property, lru_cache
from typing import Any, Optional

from py_ecc.bls.hash_to_curve import hash_to_G2
from py_ecc.bls.point_compression import (
    compress_G1,
    compress_G2,
    decompress_G1,
    decompress_G2,
)
from py_ecc.optimized_bls12_381 import (
    FQ12,
    G1,
    G2,
    Z1,
    b,
    b2,
    curve_order,
    eq,
    field_modulus,
    is_inf,
    is_on_curve,
    multiply,
    neg,
    pairing,
)

from constants import GROUP_NAME, H_DST, PAIRING_ENGINES, SECURITY_LEVEL
from utils.core import debug_print, resolve_rng
from utils.errors import MalformedElementError

G1_BYTES = 48
G2_BYTES = 96
SCALAR_BYTES = 32
G1_INFINITY = bytes([0xC0]) + bytes(G1_BYTES - 1)
G2_INFINITY = bytes([0xC0]) + bytes(G2_BYTES - 1)


# --- engines ---------------------------------------------------------------


class PyEccEngine:
    """Pure-Python arithmetic from ``py_ecc.optimized_bls12_381``."""

    name = "py_ecc"
    gt_bytes = 12 * 48

    def g1(self):
        return G1

    def g2(self):
        return G2

    def g1_identity(self):
        return Z1

    def pair(self, p, q):
        return pairing(q, p)

    def mul(self, point, k: int):
        return multiply(point, k)

    def neg(self, point):
        return neg(point)

    def eq(self, p, q) -> bool:
        return eq(p, q)

    def hash_to_g2(self, data: bytes, dst: bytes):
        return hash_to_G2(data, dst, hashlib.sha256)

    def encode_g1(self, point) -> bytes:
        return compress_G1(point).to_bytes(G1_BYTES, "big")

    def encode_g2(self, point) -> bytes:
        z1, z2 = compress_G2(point)
        return z1.to_bytes(G1_BYTES, "big") + z2.to_bytes(G1_BYTES, "big")

    def decode_g1(self, data: bytes):
        try:
            point = decompress_G1(int.from_bytes(data, "big"))
        except (ValueError, AssertionError, TypeError) as e:
            raise MalformedElementError(f"invalid G1 encoding: {e}") from None
        if self.encode_g1(point) != data:
            raise MalformedElementError("non-canonical G1 encoding")
        if not is_inf(point) and (
            not is_on_curve(point, b) or not is_inf(multiply(point, curve_order))
        ):
            raise MalformedElementError("G1 point outside the prime-order subgroup")
        return point

    def decode_g2(self, data: bytes):
        z1 = int.from_bytes(data[:G1_BYTES], "big")
        z2 = int.from_bytes(data[G1_BYTES:], "big")
        try:
            point = decompress_G2((z1, z2))
        except (ValueError, AssertionError, TypeError) as e:
            raise MalformedElementError(f"invalid G2 encoding: {e}") from None
        if self.encode_g2(point) != data:
            raise MalformedElementError("non-canonical G2 encoding")
        if not is_inf(point) and (
            not is_on_curve(point, b2) or not is_inf(multiply(point, curve_order))
        ):
            raise MalformedElementError("G2 point outside the prime-order subgroup")
        return point

    def gt_mul(self, x, y):
        return x * y

    def gt_exp(self, x, k: int, origin):
        return x ** k

    def gt_inverse(self, x, origin):
        return x.inv()

    def gt_one(self):
        return FQ12.one()

    def encode_gt(self, x) -> bytes:
        # optimized FQP keeps plain ints, the reference one keeps FQ objects
        return b"".join(
            ((c if isinstance(c, int) else int(c.n)) % field_modulus).to_bytes(48, "big")
            for c in x.coeffs
        )

    def decode_gt(self, data: bytes):
        coeffs = [int.from_bytes(data[i : i + 48], "big") for i in range(0, len(data), 48)]
        if any(c >= field_modulus for c in coeffs):
            raise MalformedElementError("non-canonical GT encoding")
        if not any(coeffs):
            raise MalformedElementError("zero is not a GT element")
        value = FQ12(coeffs)
        if value ** curve_order != FQ12.one():
            raise MalformedElementError("GT value outside the order-q subgroup")
        return value


class BlstEngine:
    """Native arithmetic from ``blspy`` (blst).

    blspy has no GT exponentiation or inversion, so both are computed
    through the pairing that produced the element: e(P, Q)^k = e(kP, Q).
    """

    name = "blst"

    def __init__(self):
        import blspy

        self._lib = blspy
        self.gt_bytes = blspy.GTElement.SIZE

    def g1(self):
        return self._lib.G1Element.generator()

    def g2(self):
        return self._lib.G2Element.generator()

    def g1_identity(self):
        return self._lib.G1Element()

    def pair(self, p, q):
        return p.pair(q)

    def mul(self, point, k: int):
        k %= curve_order
        if k == 0:
            return type(point)()
        return point * self._lib.PrivateKey.from_bytes(k.to_bytes(SCALAR_BYTES, "big"))

    def neg(self, point):
        return point.negate()

    def eq(self, p, q) -> bool:
        return bytes(p) == bytes(q)

    def hash_to_g2(self, data: bytes, dst: bytes):
        return self._lib.G2Element.from_message(data, dst)

    def encode_g1(self, point) -> bytes:
        return bytes(point)

    def encode_g2(self, point) -> bytes:
        return bytes(point)

    def _decode(self, cls, data: bytes, label: str):
        try:
            point = cls.from_bytes(data)
        except (ValueError, RuntimeError) as e:
            raise MalformedElementError(f"invalid {label} encoding: {e}") from None
        if bytes(point) != data:
            raise MalformedElementError(f"non-canonical {label} encoding")
        return point

    def decode_g1(self, data: bytes):
        return self._decode(self._lib.G1Element, data, "G1")

    def decode_g2(self, data: bytes):
        return self._decode(self._lib.G2Element, data, "G2")

    def _from_origin(self, origin, label: str):
        if origin is None:
            raise MalformedElementError(f"{label} needs a pairing-derived GT element")
        p, q, e = origin
        return self.pair(self.mul(p, e), q)

    def gt_mul(self, x, y):
        return x * y

    def gt_exp(self, x, k: int, origin):
        return self._from_origin(origin, "GT exponentiation")

    def gt_inverse(self, x, origin):
        return self._from_origin(origin, "GT inversion")

    @cached_property
    def _one(self):
        g1, g2 = self.g1(), self.g2()
        return self.pair(g1, g2) * self.pair(self.neg(g1), g2)

    def gt_one(self):
        return self._one

    def encode_gt(self, x) -> bytes:
        return bytes(x)

    def decode_gt(self, data: bytes):
        try:
            return self._lib.GTElement.from_bytes(data)
        except (ValueError, RuntimeError) as e:
            raise MalformedElementError(f"invalid GT encoding: {e}") from None


@lru_cache(maxsize=1)
def engine():
    """The process-wide arithmetic engine, resolved on first use."""
    choice = os.getenv("SPCHS_PAIRING", "auto").strip().lower() or "auto"
    if choice not in PAIRING_ENGINES:
        raise ValueError(
            f"SPCHS_PAIRING must be one of {', '.join(PAIRING_ENGINES)}, got '{choice}'"
        )
    if choice == "py_ecc":
        selected = PyEccEngine()
    elif choice == "blst":
        selected = BlstEngine()
    else:
        try:
            selected = BlstEngine()
        except ImportError:
            selected = PyEccEngine()
    debug_print(f"Pairing engine: {selected.name}")
    return selected


def gt_size() -> int:
    return engine().gt_bytes


# --- elements --------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class G1Element:
    point: Any

    @cached_property
    def encoded(self) -> bytes:
        return engine().encode_g1(self.point)

    def to_bytes(self) -> bytes:
        return self.encoded

    def is_identity(self) -> bool:
        return self.encoded == G1_INFINITY

    def __eq__(self, other):
        return isinstance(other, G1Element) and engine().eq(self.point, other.point)

    def __hash__(self):
        return hash(self.encoded)


@dataclass(frozen=True, eq=False)
class G2Element:
    point: Any

    @cached_property
    def encoded(self) -> bytes:
        return engine().encode_g2(self.point)

    def to_bytes(self) -> bytes:
        return self.encoded

    def is_identity(self) -> bool:
        return self.encoded == G2_INFINITY

    def __eq__(self, other):
        return isinstance(other, G2Element) and engine().eq(self.point, other.point)

    def __hash__(self):
        return hash(self.encoded)


@dataclass(frozen=True, eq=False)
class GTElement:
    """A GT value; ``origin`` = (P, Q, e) when the value is e(P, Q)^e."""

    value: Any
    origin: Optional[tuple] = field(default=None, compare=False)

    @cached_property
    def encoded(self) -> bytes:
        return engine().encode_gt(self.value)

    def to_bytes(self) -> bytes:
        return self.encoded

    def is_identity(self) -> bool:
        return self.encoded == engine().encode_gt(engine().gt_one())

    def inverse(self) -> "GTElement":
        origin = None
        if self.origin is not None:
            p, q, e = self.origin
            origin = (p, q, -e % curve_order)
        return GTElement(engine().gt_inverse(self.value, origin), origin)

    def __mul__(self, other: "GTElement") -> "GTElement":
        return GTElement(engine().gt_mul(self.value, other.value))

    def __eq__(self, other):
        return isinstance(other, GTElement) and self.encoded == other.encoded

    def __hash__(self):
        return hash(self.encoded)


@dataclass
class OpCounters:
    pairings: int = 0
    g1_muls: int = 0
    g2_muls: int = 0
    gt_exps: int = 0
    hashes: int = 0
    kem_decaps: int = 0
    ibe_decrypts: int = 0


def _pair(p, q) -> GTElement:
    return GTElement(engine().pair(p, q), (p, q, 1))


@lru_cache(maxsize=1)
def _gt_generator() -> GTElement:
    return _pair(engine().g1(), engine().g2())


# --- canonical encodings ---------------------------------------------------


def serialize(element) -> bytes:
    """Canonical fixed-length encoding of any group element or scalar."""
    if isinstance(element, (G1Element, G2Element, GTElement)):
        return element.to_bytes()
    if isinstance(element, int):
        return serialize_scalar(element)
    raise TypeError(f"cannot serialize {type(element).__name__}")


def serialize_scalar(value: int) -> bytes:
    if not 0 <= value < curve_order:
        raise MalformedElementError("scalar out of range")
    return value.to_bytes(SCALAR_BYTES, "big")


def deserialize_scalar(data: bytes, allow_zero: bool = False) -> int:
    if len(data) != SCALAR_BYTES:
        raise MalformedElementError(
            f"scalar must be {SCALAR_BYTES} bytes, got {len(data)}"
        )
    value = int.from_bytes(data, "big")
    if value >= curve_order:
        raise MalformedElementError("scalar is not reduced modulo the group order")
    if value == 0 and not allow_zero:
        raise MalformedElementError("scalar must be nonzero")
    return value


def deserialize_g1(data: bytes, allow_identity: bool = False) -> G1Element:
    data = bytes(data)
    if len(data) != G1_BYTES:
        raise MalformedElementError(f"G1 element must be {G1_BYTES} bytes, got {len(data)}")
    if data == G1_INFINITY and not allow_identity:
        raise MalformedElementError("G1 identity is not allowed here")
    return G1Element(engine().decode_g1(data))


def deserialize_g2(data: bytes, allow_identity: bool = False) -> G2Element:
    data = bytes(data)
    if len(data) != G2_BYTES:
        raise MalformedElementError(f"G2 element must be {G2_BYTES} bytes, got {len(data)}")
    if data == G2_INFINITY and not allow_identity:
        raise MalformedElementError("G2 identity is not allowed here")
    return G2Element(engine().decode_g2(data))


def deserialize_gt(data: bytes) -> GTElement:
    data = bytes(data)
    if len(data) != gt_size():
        raise MalformedElementError(f"GT element must be {gt_size()} bytes, got {len(data)}")
    return GTElement(engine().decode_gt(data))


# --- the group context -----------------------------------------------------


class PairingGroup:
    """BLS12-381 pairing context with its own operation counters."""

    name = GROUP_NAME
    security_level = SECURITY_LEVEL
    order = curve_order

    def __init__(self):
        self.counters = OpCounters()
        self.engine = engine()

    @property
    def g1(self) -> G1Element:
        return G1Element(self.engine.g1())

    @property
    def g2(self) -> G2Element:
        return G2Element(self.engine.g2())

    @property
    def gt(self) -> GTElement:
        return _gt_generator()

    @property
    def g1_identity(self) -> G1Element:
        return G1Element(self.engine.g1_identity())

    def pair(self, a: G1Element, b_: G2Element) -> GTElement:
        self.counters.pairings += 1
        return _pair(a.point, b_.point)

    def g1_mul(self, a: G1Element, k: int) -> G1Element:
        self.counters.g1_muls += 1
        return G1Element(self.engine.mul(a.point, k % curve_order))

    def g2_mul(self, a: G2Element, k: int) -> G2Element:
        self.counters.g2_muls += 1
        return G2Element(self.engine.mul(a.point, k % curve_order))

    def gt_exp(self, x: GTElement, k: int) -> GTElement:
        self.counters.gt_exps += 1
        k %= curve_order
        origin = None
        if x.origin is not None:
            p, q, e = x.origin
            origin = (p, q, e * k % curve_order)
        return GTElement(self.engine.gt_exp(x.value, k, origin), origin)

    def hash_to_g2(self, data: bytes, dst: bytes = H_DST) -> G2Element:
        """RFC 9380 hash-to-G2 (SSWU, SHA-256) under a domain-separation tag."""
        self.counters.hashes += 1
        return G2Element(self.engine.hash_to_g2(bytes(data), bytes(dst)))

    def random_scalar(self, rng=None) -> int:
        return resolve_rng(rng).randrange(1, curve_order)

    def random_gt(self, rng=None) -> GTElement:
        return self.gt_exp(self.gt, self.random_scalar(rng))

    def counters_snapshot(self) -> OpCounters:
        return replace(self.counters)

    def counters_reset(self) -> OpCounters:
        self.counters = OpCounters()
        return replace(self.counters)
