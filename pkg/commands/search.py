from pathlib import Path

from constants import ROLE_PUB, ROLE_TRAPDOOR
from commands.common import CommandFailure, fail, load_master_public, require_file
from data.store import TagIndexedStore
from utils.core import debug_print, short_hex
from utils.errors import KeyFileError, SpchsError
from utils.keyfiles import read_key_file


def _structure_labels(state, scheme, store):
    """Pub encodings to search: the ``--pub`` files, else every label in the store."""
    pub_files = state.get_raw_variable("PUB") or []
    if isinstance(pub_files, str):
        pub_files = [pub_files]
    if not pub_files:
        return store.labels()

    labels = []
    for name in pub_files:
        path = Path(name)
        if not path.is_file():
            raise CommandFailure("--pub", f"file not found: {name}")
        try:
            _, backend, body = read_key_file(path, ROLE_PUB)
        except KeyFileError as e:
            raise CommandFailure("--pub", f"{name}: {e}") from None
        if backend != scheme.backend:
            raise CommandFailure("--pub", f"{name} belongs to a different backend")
        labels.append(body)
    return labels


def cmd_search(args, state):
    """Follow the trapdoor keyword's hidden chains and print ordinals per structure."""
    missing, invalid = state.validate_required_vars(["MPK", "STORE", "TRAPDOOR"])
    if missing or invalid:
        return 1

    try:
        scheme, mpk = load_master_public(state)

        try:
            _, backend, body = read_key_file(require_file(state, "TRAPDOOR"), ROLE_TRAPDOOR)
            if backend != scheme.backend:
                raise CommandFailure("--trapdoor", "trapdoor belongs to a different backend")
            trap = scheme.decode_trapdoor(body)
        except (KeyFileError, ValueError) as e:
            raise CommandFailure("--trapdoor", str(e)) from None

        try:
            store = TagIndexedStore.load(require_file(state, "STORE"))
        except SpchsError as e:
            raise CommandFailure("--store", str(e)) from None

        labels = _structure_labels(state, scheme, store)
        label_flag = "--pub" if state.get_raw_variable("PUB") else "--store"
        results = []
        for label in labels:
            try:
                pub = scheme.decode_structure_public(label)
            except ValueError as e:
                raise CommandFailure(label_flag, f"invalid structure public part: {e}") from None
            try:
                ordinals = scheme.structured_search(mpk, pub, store, trap)
            except SpchsError as e:
                raise CommandFailure("--store", str(e)) from None
            results.append((label, ordinals))
    except CommandFailure as e:
        return fail(e.flag, e.reason)
    except OSError as e:
        return fail("--store", str(e))

    total = 0
    for label, ordinals in results:
        debug_print(f"Structure {label.hex()} -> {ordinals}")
        if not ordinals:
            continue
        total += len(ordinals)
        print(f"📊 Structure {short_hex(label)}: {len(ordinals)} match(es)")
        print(f"   {' '.join(str(o) for o in ordinals)}")

    print(f"✅ {total} matching ciphertext(s) across {len(results)} structure(s)")
    return 0
