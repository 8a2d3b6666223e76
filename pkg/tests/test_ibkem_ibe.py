import pytest

from schemes.ibe import HashMaskIbe, Ibe, IbeCiphertext
from schemes.ibkem import Encapsulation, Ibkem, PairingIbkem
from utils.errors import InvalidCiphertextError, InvalidEncapsulationError


@pytest.fixture
def kem(group):
    return PairingIbkem(group)


@pytest.fixture
def ibe(group):
    return HashMaskIbe(group)


def test_instances_satisfy_the_interfaces(kem, ibe):
    assert isinstance(kem, Ibkem)
    assert isinstance(ibe, Ibe)
    assert kem.key_bytes == ibe.message_bytes == 32


def test_decaps_recovers_the_encapsulated_key(kem, rng):
    pk, sk = kem.setup(rng)
    for i in range(3):
        identity = b"id-%d" % i
        r = kem.sample_randomness(rng)
        key, encapsulation = kem.encaps(pk, identity, r)
        assert len(key) == kem.key_bytes
        assert kem.decaps(kem.extract(sk, identity), encapsulation) == key
        assert kem.encaps(pk, identity, r) == (key, encapsulation)
        assert kem.fim(pk, identity, r) == key


def test_full_identity_malleability(kem, rng):
    pk, sk = kem.setup(rng)
    r = kem.sample_randomness(rng)
    _, encapsulation = kem.encaps(pk, b"alice", r)
    assert kem.decaps(kem.extract(sk, b"bob"), encapsulation) == kem.fim(pk, b"bob", r)


def test_fim_outputs_do_not_collide(kem, rng):
    pk, _ = kem.setup(rng)
    keys = {
        kem.fim(pk, identity, kem.sample_randomness(rng))
        for identity in (b"a", b"b")
        for _ in range(5)
    }
    assert len(keys) == 10


def test_decaps_counts_and_rejects_identity(kem, group, rng):
    pk, sk = kem.setup(rng)
    dk = kem.extract(sk, b"id")
    _, encapsulation = kem.encaps(pk, b"id", kem.sample_randomness(rng))
    group.counters_reset()
    kem.decaps(dk, encapsulation)
    assert group.counters.kem_decaps == 1
    assert group.counters.pairings == 1
    with pytest.raises(InvalidEncapsulationError):
        kem.decaps(dk, Encapsulation(group.g1_identity))


def test_malformed_encapsulation_bytes_are_rejected(kem):
    with pytest.raises(InvalidEncapsulationError):
        kem.decode_encapsulation(b"\x00" * 48)
    with pytest.raises(InvalidEncapsulationError):
        kem.decode_encapsulation(b"short")


def test_ibe_round_trip_and_freshness(ibe, rng):
    pk, sk = ibe.setup(rng)
    message = rng.randbytes(ibe.message_bytes)
    first = ibe.encrypt(pk, b"id", message, rng)
    second = ibe.encrypt(pk, b"id", message, rng)
    assert ibe.decrypt(ibe.extract(sk, b"id"), first) == message
    assert ibe.encode_ciphertext(first) != ibe.encode_ciphertext(second)


def test_ibe_wrong_identity_yields_another_message(ibe, rng):
    pk, sk = ibe.setup(rng)
    message = rng.randbytes(ibe.message_bytes)
    ciphertext = ibe.encrypt(pk, b"right", message, rng)
    assert ibe.decrypt(ibe.extract(sk, b"wrong"), ciphertext) != message


def test_ibe_rejects_malformed_ciphertexts(ibe, group, rng):
    pk, sk = ibe.setup(rng)
    dk = ibe.extract(sk, b"id")
    with pytest.raises(InvalidCiphertextError):
        ibe.decrypt(dk, IbeCiphertext(group.g1_identity, bytes(32)))
    with pytest.raises(InvalidCiphertextError):
        ibe.decrypt(dk, IbeCiphertext(group.g1, bytes(31)))
    with pytest.raises(InvalidCiphertextError):
        ibe.decode_ciphertext(b"\x00" * 80)
    with pytest.raises(ValueError):
        ibe.encrypt(pk, b"id", b"too short", rng)


@pytest.mark.slow
def test_laws_at_acceptance_scale(kem, ibe, rng):
    pk, sk = kem.setup(rng)
    for i in range(100):
        identity, other = b"id-%d" % i, b"other-%d" % i
        r = kem.sample_randomness(rng)
        key, encapsulation = kem.encaps(pk, identity, r)
        assert kem.decaps(kem.extract(sk, identity), encapsulation) == key
        assert kem.fim(pk, other, r) == kem.decaps(kem.extract(sk, other), encapsulation)

    outputs = {kem.fim(pk, b"id-%d" % (i % 10), kem.sample_randomness(rng)) for i in range(1000)}
    assert len(outputs) == 1000

    ibe_pk, ibe_sk = ibe.setup(rng)
    for i in range(100):
        message = rng.randbytes(ibe.message_bytes)
        ciphertext = ibe.encrypt(ibe_pk, b"id-%d" % i, message, rng)
        assert ibe.decrypt(ibe.extract(ibe_sk, b"id-%d" % i), ciphertext) == message
