import random

import pytest

from constants import BACKEND_PEKS, BACKEND_SCRATCH
from data.store import TagIndexedStore
from utils.corpus import build_corpus, random_script
from utils.errors import (
    MalformedStoreError,
    PriAuthenticationError,
    UnsupportedSecurityLevelError,
)


def _encrypt_all(scheme, mpk, pri, pub, store, keywords, rng):
    return [
        scheme.store_ciphertext(store, scheme.structured_encrypt(mpk, w, pri, rng), pub)
        for w in keywords
    ]


def test_setup_is_fresh_and_well_formed(scratch, group, rng):
    mpk, msk = scratch.system_setup(rng=rng)
    other_mpk, other_msk = scratch.system_setup(rng=rng)
    assert msk.s != other_msk.s
    assert mpk.P == group.g1_mul(group.g1, msk.s)
    assert not mpk.P.is_identity()


def test_unsupported_security_level(scratch):
    with pytest.raises(UnsupportedSecurityLevelError):
        scratch.system_setup(security_level=80)


def test_trapdoor_delegation_identity(scratch, scratch_keys, group):
    mpk, msk = scratch_keys
    trap = scratch.trapdoor(msk, b"w")
    assert group.pair(mpk.P, group.hash_to_g2(b"w")) == group.pair(group.g1, trap.t)
    assert scratch.trapdoor(msk, b"w") == trap
    assert scratch.trapdoor(msk, b"v") != trap


def test_structure_init(scratch, scratch_keys, rng):
    mpk, _ = scratch_keys
    pri, pub = scratch.structure_init(mpk, rng)
    other_pri, other_pub = scratch.structure_init(mpk, rng)
    assert pri.pointers == {}
    assert pri.u != other_pri.u
    assert pub != other_pub

    scratch.structured_encrypt(mpk, b"w", pri, rng)
    assert set(pri.pointers) == {b"w"}
    assert pri.anchors_emitted == frozenset({b"w"})


def test_anchor_and_chain_linkage(scratch, scratch_keys, group, rng):
    mpk, msk = scratch_keys
    pri, pub = scratch.structure_init(mpk, rng)
    trap = scratch.trapdoor(msk, b"w")

    first = scratch.structured_encrypt(mpk, b"w", pri, rng)
    second = scratch.structured_encrypt(mpk, b"w", pri, rng)
    third = scratch.structured_encrypt(mpk, b"w", pri, rng)

    assert first.c1 == group.pair(pub.head, trap.t)
    assert second.c1 == group.pair(first.c2, trap.t).inverse() * first.c3
    assert third.c1 == group.pair(second.c2, trap.t).inverse() * second.c3
    # c2 and c3 never repeat
    assert len({c.c2.to_bytes() for c in (first, second, third)}) == 3
    assert len({c.c3.to_bytes() for c in (first, second, third)}) == 3


def test_search_returns_exact_chain_with_m_plus_one_pairings(scratch, scratch_keys, group, rng):
    mpk, msk = scratch_keys
    store = TagIndexedStore(BACKEND_SCRATCH)
    pri, pub = scratch.structure_init(mpk, rng)
    other_pri, other_pub = scratch.structure_init(mpk, rng)

    expected = []
    plan = [b"w", b"x", b"w", b"y", b"w", b"x", b"w", b"w", b"y"]
    for i, keyword in enumerate(plan):
        ordinal = _encrypt_all(scratch, mpk, pri, pub, store, [keyword], rng)[0]
        if keyword == b"w":
            expected.append(ordinal)
        _encrypt_all(scratch, mpk, other_pri, other_pub, store, [b"w" if i % 2 else b"z"], rng)

    trap = scratch.trapdoor(msk, b"w")
    group.counters_reset()
    assert scratch.structured_search(mpk, pub, store, trap) == expected
    assert group.counters.pairings == len(expected) + 1


def test_empty_store_costs_one_pairing(scratch, scratch_keys, group, rng):
    mpk, msk = scratch_keys
    _, pub = scratch.structure_init(mpk, rng)
    trap = scratch.trapdoor(msk, b"w")
    group.counters_reset()
    assert scratch.structured_search(mpk, pub, TagIndexedStore(BACKEND_SCRATCH), trap) == []
    assert group.counters.pairings == 1


def test_unknown_keyword_and_independent_chains(scratch, scratch_keys, rng):
    mpk, msk = scratch_keys
    store = TagIndexedStore(BACKEND_SCRATCH)
    pri, pub = scratch.structure_init(mpk, rng)
    first, second = _encrypt_all(scratch, mpk, pri, pub, store, [b"w1", b"w2"], rng)

    assert scratch.structured_search(mpk, pub, store, scratch.trapdoor(msk, b"w1")) == [first]
    assert scratch.structured_search(mpk, pub, store, scratch.trapdoor(msk, b"w2")) == [second]
    assert scratch.structured_search(mpk, pub, store, scratch.trapdoor(msk, b"never")) == []


def test_rotation_separates_old_and_new_ciphertexts(scratch, scratch_keys, rng):
    mpk, msk = scratch_keys
    store = TagIndexedStore(BACKEND_SCRATCH)
    pri, pub = scratch.structure_init(mpk, rng)
    before = _encrypt_all(scratch, mpk, pri, pub, store, [b"w", b"w"], rng)

    new_pri, new_pub = scratch.rotate_structure(mpk, rng)
    assert new_pub != pub
    after = _encrypt_all(scratch, mpk, new_pri, new_pub, store, [b"w"], rng)

    trap = scratch.trapdoor(msk, b"w")
    assert scratch.structured_search(mpk, pub, store, trap) == before
    assert scratch.structured_search(mpk, new_pub, store, trap) == after


def test_pri_export_round_trip_and_tamper(scratch, scratch_keys, sealing_key, rng):
    mpk, _ = scratch_keys
    pri, _ = scratch.structure_init(mpk, rng)
    for keyword in (b"b", b"a", b"c", b"a"):
        scratch.structured_encrypt(mpk, keyword, pri, rng)

    blob = scratch.pri_export(pri, sealing_key)
    restored = scratch.pri_import(blob, sealing_key)
    assert scratch.encode_structure_private(restored) == scratch.encode_structure_private(pri)

    tampered = bytearray(blob)
    tampered[-5] ^= 0x40
    with pytest.raises(PriAuthenticationError):
        scratch.pri_import(bytes(tampered), sealing_key)
    with pytest.raises(PriAuthenticationError):
        scratch.pri_import(blob, bytes(32))


def test_restored_pri_continues_the_chain(scratch, scratch_keys, sealing_key, rng):
    mpk, msk = scratch_keys
    store = TagIndexedStore(BACKEND_SCRATCH)
    pri, pub = scratch.structure_init(mpk, rng)
    first = _encrypt_all(scratch, mpk, pri, pub, store, [b"w"], rng)
    restored = scratch.pri_import(scratch.pri_export(pri, sealing_key), sealing_key)
    second = _encrypt_all(scratch, mpk, restored, pub, store, [b"w"], rng)
    assert scratch.structured_search(mpk, pub, store, scratch.trapdoor(msk, b"w")) == first + second


def test_key_encodings_round_trip(scratch, scratch_keys, rng):
    mpk, msk = scratch_keys
    _, pub = scratch.structure_init(mpk, rng)
    trap = scratch.trapdoor(msk, b"w")
    assert scratch.decode_public_key(scratch.encode_public_key(mpk)) == mpk
    assert scratch.decode_secret_key(scratch.encode_secret_key(msk)) == msk
    assert scratch.decode_structure_public(scratch.encode_structure_public(pub)) == pub
    assert scratch.decode_trapdoor(scratch.encode_trapdoor(trap)) == trap


def test_pointer_cycle_is_reported(scratch, scratch_keys, group, rng):
    mpk, msk = scratch_keys
    _, pub = scratch.structure_init(mpk, rng)
    trap = scratch.trapdoor(msk, b"w")
    anchor = scratch.anchor(pub, trap)
    middle = group.random_gt(rng)

    store = TagIndexedStore(BACKEND_SCRATCH)
    # anchor -> middle -> anchor
    for tag, target in ((anchor, middle), (middle, anchor)):
        c2 = group.g1_mul(group.g1, group.random_scalar(rng))
        c3 = group.pair(c2, trap.t) * target
        store.insert(tag.to_bytes(), c2.to_bytes() + c3.to_bytes(), b"")

    group.counters_reset()
    with pytest.raises(MalformedStoreError, match="cycle"):
        scratch.structured_search(mpk, pub, store, trap)
    assert group.counters.pairings <= len(store) + 1


def test_undecodable_record_is_reported(scratch, scratch_keys, rng):
    mpk, msk = scratch_keys
    _, pub = scratch.structure_init(mpk, rng)
    trap = scratch.trapdoor(msk, b"w")
    store = TagIndexedStore(BACKEND_SCRATCH)
    store.insert(scratch.anchor(pub, trap).to_bytes(), b"\x01" * 10, b"")
    with pytest.raises(MalformedStoreError):
        scratch.structured_search(mpk, pub, store, trap)


def test_store_of_another_backend_is_refused(scratch, scratch_keys, rng):
    mpk, msk = scratch_keys
    _, pub = scratch.structure_init(mpk, rng)
    with pytest.raises(MalformedStoreError):
        scratch.structured_search(mpk, pub, TagIndexedStore(BACKEND_PEKS), scratch.trapdoor(msk, b"w"))


@pytest.mark.parametrize("seed", [1, 2])
def test_random_corpus_matches_ground_truth(scratch, scratch_keys, seed, assert_consistent):
    mpk, msk = scratch_keys
    rng = random.Random(seed)
    script = random_script(rng, n_structures=3, n_keywords=4, n_ciphertexts=14)
    corpus = build_corpus(scratch, mpk, script, 3, rng)
    assert_consistent(scratch, mpk, msk, corpus)


@pytest.mark.slow
def test_fifty_random_corpora_match_ground_truth(scratch, assert_consistent):
    for seed in range(50):
        rng = random.Random(seed)
        mpk, msk = scratch.system_setup(rng=rng)
        script = random_script(
            rng,
            n_structures=rng.randint(1, 5),
            n_keywords=rng.randint(1, 50),
            n_ciphertexts=rng.randint(1, 500),
        )
        corpus = build_corpus(scratch, mpk, script, None, rng)
        assert_consistent(scratch, mpk, msk, corpus)
