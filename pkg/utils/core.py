"""
Utility functions for the SPCHS toolkit.
"""

import hashlib
import random
import secrets

DEBUG = False

_system_rng = secrets.SystemRandom()


def sync_debug_with_state(state):
    """Sync the cached DEBUG value with the state."""
    global DEBUG
    DEBUG = state.get_variable("DEBUG")


def debug_print(*msg):
    """Print debug messages if DEBUG is enabled."""
    if DEBUG and len(msg) == 1:
        print(f"DEBUG: {msg[0]}")
    elif DEBUG and len(msg) > 1:
        print("DEBUG:", " ".join(str(m) for m in msg))


def set_debug(enabled, state):
    """Set the global debug flag."""
    state.set_variable("DEBUG", "true" if enabled else "false")
    sync_debug_with_state(state)
    if DEBUG:
        debug_print(f"Debugging is {'enabled' if enabled else 'disabled'}")


def make_rng(seed=None) -> random.Random:
    """Return a seeded ``random.Random`` or the OS-backed generator.

    A seed makes every randomized operation reproducible (``--seed``); without
    one the system CSPRNG is used.
    """
    if seed is None or seed == "":
        return _system_rng
    return random.Random(int(seed))


def derive_rng(seed, context: bytes) -> random.Random:
    """Like ``make_rng``, but a seeded generator also depends on ``context``.

    The same seed over different state (e.g. a structure whose chains have
    advanced) yields different draws; the same seed over the same state
    yields the same ones.
    """
    if seed is None or seed == "":
        return _system_rng
    digest = hashlib.sha256(str(int(seed)).encode() + b"\x00" + bytes(context)).digest()
    return random.Random(int.from_bytes(digest, "big"))


def resolve_rng(rng=None) -> random.Random:
    return _system_rng if rng is None else rng


def short_hex(data: bytes, length: int = 16) -> str:
    """Hex preview of a byte-string for display."""
    text = data.hex()
    return text if len(text) <= length else text[:length] + "…"
