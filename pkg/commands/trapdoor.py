from constants import ROLE_MSK, ROLE_TRAPDOOR
from commands.common import CommandFailure, fail, load_keyed_scheme
from utils.keyfiles import write_key_file
from utils.validation import validation_wrapper


@validation_wrapper
def cmd_trapdoor(args, state, *, validated=None):
    """Derive the trapdoor of ``--keyword`` from the master secret key."""
    missing, invalid = state.validate_required_vars(["MSK", "OUT"])
    if missing or invalid:
        return 1
    keyword = validated

    try:
        scheme, _, body = load_keyed_scheme(state, "MSK", ROLE_MSK)
        try:
            msk = scheme.decode_secret_key(body)
        except ValueError as e:
            raise CommandFailure("--msk", f"invalid master secret key: {e}") from None
        trap = scheme.trapdoor(msk, keyword)
        write_key_file(
            state.get_raw_variable("OUT"),
            ROLE_TRAPDOOR,
            scheme.backend,
            scheme.encode_trapdoor(trap),
        )
    except CommandFailure as e:
        return fail(e.flag, e.reason)
    except OSError as e:
        return fail("--out", f"cannot write trapdoor: {e}")

    print(f"✅ Trapdoor for '{keyword.decode('utf-8', 'replace')}' written to {state.get_raw_variable('OUT')}")
    return 0
