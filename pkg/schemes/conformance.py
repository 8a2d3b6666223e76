"""
Executable checks of the laws the generic construction relies on.

Each law is sampled ``trials`` times against fresh master keys. A failing
law records the first counterexample found.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from schemes.generic import GenericSpchs
from schemes.ibe import Ibe
from schemes.ibkem import Ibkem
from utils.core import debug_print, resolve_rng, short_hex
from utils.errors import BackendConformanceError, SpchsError

# identities shared across samples so that a key map ignoring r collides
COLLISION_IDENTITY_POOL = 4


@dataclass
class LawResult:
    name: str
    passed: bool = True
    trials: int = 0
    counterexample: Optional[str] = None

    def fail(self, counterexample: str) -> None:
        if self.passed:
            self.passed = False
            self.counterexample = counterexample


@dataclass
class ConformanceReport:
    laws: list[LawResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(law.passed for law in self.laws)

    @property
    def failures(self) -> list[LawResult]:
        return [law for law in self.laws if not law.passed]

    def law(self, name: str) -> LawResult:
        for law in self.laws:
            if law.name == name:
                return law
        raise KeyError(name)


def _identity(rng, index: int) -> bytes:
    return b"id-%d-" % index + rng.randbytes(8)


def backend_conformance(
    kem: Ibkem,
    ibe: Ibe,
    trials: int = 20,
    collision_samples: int = 100,
    rng=None,
) -> ConformanceReport:
    """Run the IBKEM and IBE consistency laws and report per-law results."""
    rng = resolve_rng(rng)
    pk, sk = kem.setup(rng)
    report = ConformanceReport()

    consistency = LawResult("kem-consistency")
    determinism = LawResult("kem-determinism")
    malleability = LawResult("fim-malleability")
    for i in range(trials):
        identity, other = _identity(rng, i), _identity(rng, trials + i)
        r = kem.sample_randomness(rng)
        try:
            key, encapsulation = kem.encaps(pk, identity, r)
            again_key, again_enc = kem.encaps(pk, identity, r)
            recovered = kem.decaps(kem.extract(sk, identity), encapsulation)
            cross = kem.decaps(kem.extract(sk, other), encapsulation)
            own_fim = kem.fim(pk, identity, r)
            cross_fim = kem.fim(pk, other, r)
        except SpchsError as e:
            consistency.fail(f"trial {i}: {e}")
            continue
        for law in (consistency, determinism, malleability):
            law.trials += 1
        if recovered != key:
            consistency.fail(f"identity {identity!r}: decaps {short_hex(recovered)} != {short_hex(key)}")
        if again_key != key or kem.encode_encapsulation(again_enc) != kem.encode_encapsulation(encapsulation):
            determinism.fail(f"identity {identity!r}: encaps is not deterministic in r")
        if own_fim != key or cross_fim != cross:
            malleability.fail(
                f"identities {identity!r} -> {other!r}: fim {short_hex(cross_fim)} "
                f"!= decaps {short_hex(cross)}"
            )
    report.laws += [consistency, determinism, malleability]

    collisions = LawResult("fim-collision-freeness")
    pool = [_identity(rng, i) for i in range(COLLISION_IDENTITY_POOL)]
    seen: dict[bytes, int] = {}
    for i in range(collision_samples):
        identity = pool[i % len(pool)]
        key = kem.fim(pk, identity, kem.sample_randomness(rng))
        collisions.trials += 1
        if key in seen:
            collisions.fail(f"samples {seen[key]} and {i} share the key {short_hex(key)}")
            break
        seen[key] = i
    report.laws.append(collisions)

    ibe_pk, ibe_sk = ibe.setup(rng)
    roundtrip = LawResult("ibe-consistency")
    freshness = LawResult("ibe-freshness")
    for i in range(trials):
        identity = _identity(rng, i)
        message = rng.randbytes(ibe.message_bytes)
        try:
            first = ibe.encrypt(ibe_pk, identity, message, rng)
            second = ibe.encrypt(ibe_pk, identity, message, rng)
            decrypted = ibe.decrypt(ibe.extract(ibe_sk, identity), first)
        except SpchsError as e:
            roundtrip.fail(f"trial {i}: {e}")
            continue
        roundtrip.trials += 1
        freshness.trials += 1
        if decrypted != message:
            roundtrip.fail(
                f"identity {identity!r}: decrypted {short_hex(decrypted)} != {short_hex(message)}"
            )
        if ibe.encode_ciphertext(first) == ibe.encode_ciphertext(second):
            freshness.fail(f"identity {identity!r}: two encryptions are identical")
    report.laws += [roundtrip, freshness]

    for law in report.laws:
        debug_print(f"Law {law.name}: {'pass' if law.passed else 'FAIL'} ({law.trials} trials)")
    return report


def checked_generic(
    kem: Ibkem,
    ibe: Ibe,
    rng=None,
    trials: int = 20,
    collision_samples: int = 100,
) -> GenericSpchs:
    """Instantiate the generic construction only if the backends conform."""
    report = backend_conformance(kem, ibe, trials, collision_samples, rng)
    if not report.passed:
        raise BackendConformanceError(report)
    return GenericSpchs(kem, ibe)
