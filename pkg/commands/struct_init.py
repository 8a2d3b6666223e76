from constants import ROLE_PUB
from commands.common import (
    CommandFailure,
    fail,
    load_master_public,
    sealing_key,
    write_structure_private,
)
from utils.core import short_hex
from utils.keyfiles import write_key_file


def cmd_struct_init(args, state):
    """Start a hidden structure: write its private part and public head."""
    missing, invalid = state.validate_required_vars(["MPK", "PRI", "PUB"])
    if missing or invalid:
        return 1

    try:
        scheme, mpk = load_master_public(state)
        sealed = sealing_key(state) is not None
        pri, pub = scheme.structure_init(mpk, state.rng())
        write_key_file(
            state.get_raw_variable("PUB"),
            ROLE_PUB,
            scheme.backend,
            scheme.encode_structure_public(pub),
        )
        write_structure_private(state, scheme, pri, sealed)
    except CommandFailure as e:
        return fail(e.flag, e.reason)
    except OSError as e:
        return fail("--pri/--pub", f"cannot write structure files: {e}")

    label = short_hex(scheme.encode_structure_public(pub))
    print(f"✅ Structure {label} initialized")
    if sealed:
        print("🔒 Private part sealed with SPCHS_PRI_KEY")
    else:
        print("⚠️  Private part stored unsealed")
        print("💡 Set SPCHS_PRI_KEY (64 hex chars) to store it encrypted")
    return 0
