import os
from pathlib import Path

from constants import ROLE_PUB
from commands.common import (
    CommandFailure,
    fail,
    load_keyed_scheme,
    load_master_public,
    read_structure_private,
    require_file,
    write_structure_private,
)
from data.store import TagIndexedStore
from utils.core import debug_print, derive_rng
from utils.errors import SpchsError
from utils.keywords import load_keyword_list


def _load_or_create_store(state, backend):
    path = Path(state.get_raw_variable("STORE"))
    if not path.exists():
        debug_print(f"Creating new store at {path}")
        return TagIndexedStore(backend)
    try:
        store = TagIndexedStore.load(path)
    except (SpchsError, OSError) as e:
        raise CommandFailure("--store", str(e)) from None
    if store.backend != backend:
        raise CommandFailure("--store", "store holds ciphertexts of a different backend")
    return store


def _load_structure_public(state, scheme):
    other, _, body = load_keyed_scheme(state, "PUB", ROLE_PUB)
    if other.backend != scheme.backend:
        raise CommandFailure("--pub", "structure belongs to a different backend")
    try:
        return scheme.decode_structure_public(body)
    except ValueError as e:
        raise CommandFailure("--pub", f"invalid structure public part: {e}") from None


def _commit(state, scheme, store, pri, sealed):
    """Stage the store and the private part, then swap both into place.

    A failure while staging leaves both files untouched. The store is
    swapped in before the private part.
    """
    store_path = Path(state.get_raw_variable("STORE"))
    pri_path = Path(state.get_raw_variable("PRI"))
    staged = [path.with_name(path.name + ".tmp") for path in (store_path, pri_path)]
    try:
        store.persist(staged[0])
        write_structure_private(state, scheme, pri, sealed, staged[1])
        os.replace(staged[0], store_path)
        os.replace(staged[1], pri_path)
    finally:
        for path in staged:
            path.unlink(missing_ok=True)
    debug_print(f"Committed {store_path} and {pri_path}")


def cmd_encrypt(args, state):
    """Encrypt each keyword of a list file under one structure.

    Ciphertexts are appended to the store in file order and the structure's
    private part is written back in the form (sealed or plain) it was read.
    """
    missing, invalid = state.validate_required_vars(["MPK", "PRI", "PUB", "STORE", "KEYWORD"])
    if missing or invalid:
        return 1

    try:
        scheme, mpk = load_master_public(state)
        pri, sealed = read_structure_private(state, scheme)
        pub = _load_structure_public(state, scheme)
        keyword_file = require_file(state, "KEYWORD")
        try:
            keywords = load_keyword_list(keyword_file)
        except (OSError, UnicodeDecodeError) as e:
            raise CommandFailure("--keyword", str(e)) from None
        store = _load_or_create_store(state, scheme.backend)

        rng = derive_rng(state.get_raw_variable("SEED"), scheme.encode_structure_private(pri))
        for keyword in keywords:
            ciphertext = scheme.structured_encrypt(mpk, keyword, pri, rng)
            scheme.store_ciphertext(store, ciphertext, pub)

        _commit(state, scheme, store, pri, sealed)
    except CommandFailure as e:
        return fail(e.flag, e.reason)
    except SpchsError as e:
        return fail("--store", str(e))
    except OSError as e:
        return fail("--store", f"cannot write: {e}")

    if not keywords:
        print(f"⚠️  {keyword_file} lists no keywords")
    print(f"✅ Encrypted {len(keywords)} keyword(s); store now holds {len(store)} record(s)")
    return 0
