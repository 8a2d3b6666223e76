"""
SPCHS1 key-file framing: MAGIC || role || backend || body.
"""

from pathlib import Path

from constants import BACKEND_NAMES, KEY_MAGIC, ROLE_NAMES
from utils.core import debug_print
from utils.errors import KeyFileError

HEADER_BYTES = len(KEY_MAGIC) + 2


def frame(role: int, backend: int, body: bytes) -> bytes:
    return KEY_MAGIC + bytes([role, backend]) + bytes(body)


def unframe(data: bytes, roles) -> tuple[int, int, bytes]:
    """Split a framed key blob, checking the role against ``roles``.

    Returns ``(role, backend, body)``.
    """
    if isinstance(roles, int):
        roles = (roles,)
    if len(data) < HEADER_BYTES or not data.startswith(KEY_MAGIC):
        raise KeyFileError("not an SPCHS1 key file")
    role, backend = data[len(KEY_MAGIC)], data[len(KEY_MAGIC) + 1]
    if role not in roles:
        wanted = " or ".join(ROLE_NAMES.get(r, str(r)) for r in roles)
        found = ROLE_NAMES.get(role, f"unknown role {role}")
        raise KeyFileError(f"expected a {wanted}, found a {found}")
    if backend not in BACKEND_NAMES:
        raise KeyFileError(f"unknown backend byte {backend}")
    return role, backend, bytes(data[HEADER_BYTES:])


def write_key_file(path, role: int, backend: int, body: bytes) -> Path:
    path = Path(path)
    path.write_bytes(frame(role, backend, body))
    debug_print(
        f"Wrote {ROLE_NAMES[role]} ({BACKEND_NAMES[backend]}) to {path}"
    )
    return path


def read_key_file(path, roles) -> tuple[int, int, bytes]:
    path = Path(path)
    return unframe(path.read_bytes(), roles)
