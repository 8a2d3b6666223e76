from constants import BACKEND_IDS, ROLE_MPK, ROLE_MSK, get_scheme
from commands.common import fail
from utils.core import debug_print
from utils.errors import SpchsError
from utils.keyfiles import write_key_file


def cmd_setup(args, state):
    """Generate a master key pair and write the mpk and msk key files."""
    missing, invalid = state.validate_required_vars(["MPK", "MSK", "BACKEND"])
    if missing or invalid:
        return 1

    backend_name = state.get_raw_variable("BACKEND")
    scheme = get_scheme(BACKEND_IDS[backend_name])
    try:
        mpk, msk = scheme.system_setup(
            keyword_space=state.get_raw_variable("KEYWORD_SPACE"), rng=state.rng()
        )
        write_key_file(
            state.get_raw_variable("MPK"), ROLE_MPK, scheme.backend, scheme.encode_public_key(mpk)
        )
        write_key_file(
            state.get_raw_variable("MSK"), ROLE_MSK, scheme.backend, scheme.encode_secret_key(msk)
        )
    except OSError as e:
        return fail("--mpk/--msk", f"cannot write key file: {e}")
    except SpchsError as e:
        return fail("--backend", str(e))

    debug_print(f"Setup complete for backend {backend_name}")
    print(f"✅ Master keys ({backend_name}) written to {state.get_raw_variable('MPK')} and {state.get_raw_variable('MSK')}")
    print("💡 Keep the master secret key private; trapdoors are derived from it.")
    return 0
