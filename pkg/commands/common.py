"""
Common helpers for SPCHS commands: usage text and key-file plumbing.
"""

from pathlib import Path

from constants import (
    BACKEND_NAMES,
    ROLE_MPK,
    ROLE_PRI,
    ROLE_PRI_SEALED,
    get_scheme,
)
from utils.core import debug_print
from utils.errors import KeyFileError, SpchsError
from utils.keyfiles import read_key_file, write_key_file
from utils.sealing import parse_key


class CommandFailure(Exception):
    """A command cannot proceed; carries the flag to blame."""

    def __init__(self, flag, reason):
        super().__init__(f"{flag}: {reason}")
        self.flag = flag
        self.reason = reason


def fail(flag, reason):
    print(f"❌ {flag}: {reason}")
    return 1


def require_file(state, name):
    """Path of an existing file named by a variable, or ``CommandFailure``."""
    value = state.get_raw_variable(name)
    path = Path(value)
    if not path.is_file():
        raise CommandFailure(state.flag(name), f"file not found: {value}")
    return path


def load_keyed_scheme(state, name, roles):
    """Read a key file and build the scheme for its backend byte.

    Returns ``(scheme, role, body)``.
    """
    path = require_file(state, name)
    try:
        role, backend, body = read_key_file(path, roles)
    except (KeyFileError, OSError) as e:
        raise CommandFailure(state.flag(name), str(e)) from None
    try:
        scheme = get_scheme(backend)
    except ValueError:
        raise CommandFailure(
            state.flag(name), f"{BACKEND_NAMES[backend]} keys cannot be used here"
        ) from None
    debug_print(f"{state.flag(name)} holds {BACKEND_NAMES[backend]} keys")
    return scheme, role, body


def load_master_public(state):
    scheme, _, body = load_keyed_scheme(state, "MPK", ROLE_MPK)
    try:
        return scheme, scheme.decode_public_key(body)
    except ValueError as e:
        raise CommandFailure(state.flag("MPK"), f"invalid master public key: {e}") from None


def sealing_key(state):
    """The Pri sealing key from ``SPCHS_PRI_KEY``, or None when unset."""
    text = state.get_raw_variable("PRI_KEY")
    if not text:
        return None
    try:
        return parse_key(text)
    except ValueError as e:
        raise CommandFailure("SPCHS_PRI_KEY", str(e)) from None


def write_structure_private(state, scheme, pri, sealed, path=None):
    path = path or state.get_raw_variable("PRI")
    if sealed:
        key = sealing_key(state)
        if key is None:
            raise CommandFailure("SPCHS_PRI_KEY", "a sealed private part needs the sealing key")
        write_key_file(path, ROLE_PRI_SEALED, scheme.backend, scheme.pri_export(pri, key))
    else:
        write_key_file(path, ROLE_PRI, scheme.backend, scheme.encode_structure_private(pri))


def read_structure_private(state, scheme):
    """Returns ``(pri, sealed)``."""
    path = require_file(state, "PRI")
    try:
        role, backend, body = read_key_file(path, (ROLE_PRI, ROLE_PRI_SEALED))
    except KeyFileError as e:
        raise CommandFailure("--pri", str(e)) from None
    if backend != scheme.backend:
        raise CommandFailure("--pri", "private part belongs to a different backend")
    if role == ROLE_PRI:
        try:
            return scheme.decode_structure_private(body), False
        except ValueError as e:
            raise CommandFailure("--pri", f"invalid private part: {e}") from None
    key = sealing_key(state)
    if key is None:
        raise CommandFailure("--pri", "private part is sealed but SPCHS_PRI_KEY is not set")
    try:
        return scheme.pri_import(body, key), True
    except SpchsError as e:
        raise CommandFailure("--pri", str(e)) from None


def print_help_for_command(command, state=None):
    if command == "setup":
        print("Usage: setup --mpk FILE --msk FILE [--backend scratch|generic] [--seed N] [--keyword-space TAG]")
        print("Generate a master key pair.")
    elif command == "struct-init":
        print("Usage: struct-init --mpk FILE --pri FILE --pub FILE [--seed N]")
        print("Start a hidden structure. The private part is sealed when SPCHS_PRI_KEY is set.")
    elif command == "encrypt":
        print("Usage: encrypt --mpk FILE --pri FILE --pub FILE --store FILE --keyword FILE [--seed N]")
        print("Encrypt every keyword of a list file (one per line) and append to the store.")
        print("Surrounding whitespace is stripped. Blank lines and lines starting with # are skipped.")
    elif command == "trapdoor":
        print("Usage: trapdoor --msk FILE --keyword WORD --out FILE")
        print("Derive the search trapdoor of one keyword.")
        print("WORD is stripped like a keyword list line and may not start with #.")
    elif command == "search":
        print("Usage: search --mpk FILE --store FILE --trapdoor FILE [--pub FILE ...]")
        print("Print matching record ordinals per structure (all structures when no --pub).")
    elif command == "bench":
        print("Usage: bench --out CSV [--backend B] [--seed N] [--n N] [--structures N] [--keywords N]")
        print("             [--distribution uniform|zipf] [--zipf-s S] [--m-list 0,100,...] [--reps R] [--no-peks]")
        print("Compare structured search with the PEKS linear scan and write a CSV.")
    else:
        print(f"No help available for {command}.")


def cmd_help(args=None, state=None):
    print("\nSPCHS - COMMAND REFERENCE")
    print("  setup        # master key pair")
    print("  struct-init  # new hidden structure (Pri + Pub)")
    print("  encrypt      # keyword list -> ciphertexts in a store")
    print("  trapdoor     # keyword -> search trapdoor")
    print("  search       # follow hidden chains in a store")
    print("  bench        # SPCHS vs PEKS timing and operation counts")
    print("  Global: --debug (or SPCHS_DEBUG=true)")
