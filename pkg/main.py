import argparse
import os
import sys

from dotenv import load_dotenv

from constants import DEFAULT_BENCH_N, get_commands
from state import CLIState

from commands.common import cmd_help, print_help_for_command
from utils.core import debug_print, set_debug


def build_parser():
    parser = argparse.ArgumentParser(
        prog="spchs",
        description="SPCHS - searchable public-key ciphertexts with hidden structures",
    )
    parser.add_argument(
        "--debug", dest="debug", action="store_true", help="Enable debug output"
    )
    parser.set_defaults(debug=False)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    setup = sub.add_parser("setup", help="generate a master key pair")
    setup.add_argument("--mpk", required=True, help="master public key file to write")
    setup.add_argument("--msk", required=True, help="master secret key file to write")
    setup.add_argument("--backend", default="scratch", choices=["scratch", "generic"])
    setup.add_argument("--keyword-space", dest="keyword_space", default="", help="keyword-space tag")
    setup.add_argument("--seed", help="seed for reproducible keys")

    init = sub.add_parser("struct-init", help="start a hidden structure")
    init.add_argument("--mpk", required=True)
    init.add_argument("--pri", required=True, help="structure private part to write")
    init.add_argument("--pub", required=True, help="structure public part to write")
    init.add_argument("--seed")

    encrypt = sub.add_parser("encrypt", help="encrypt a keyword list into a store")
    encrypt.add_argument("--mpk", required=True)
    encrypt.add_argument("--pri", required=True)
    encrypt.add_argument("--pub", required=True)
    encrypt.add_argument("--store", required=True, help="store file (created when absent)")
    encrypt.add_argument("--keyword", required=True, help="keyword list file, one per line; whitespace stripped, blank and # lines skipped")
    encrypt.add_argument("--seed")

    trapdoor = sub.add_parser("trapdoor", help="derive a keyword trapdoor")
    trapdoor.add_argument("--msk", required=True)
    trapdoor.add_argument("--keyword", required=True, help="the keyword itself, stripped; may not start with #")
    trapdoor.add_argument("--out", required=True, help="trapdoor file to write")

    search = sub.add_parser("search", help="search a store with a trapdoor")
    search.add_argument("--mpk", required=True)
    search.add_argument("--store", required=True)
    search.add_argument("--trapdoor", required=True)
    search.add_argument(
        "--pub", action="append", help="structure public part (repeatable; default: all)"
    )

    bench = sub.add_parser("bench", help="SPCHS vs PEKS benchmark")
    bench.add_argument("--out", required=True, help="CSV file to write")
    bench.add_argument("--backend", default="scratch", choices=["scratch", "generic"])
    bench.add_argument("--seed", default="0")
    bench.add_argument("--n", type=int, default=DEFAULT_BENCH_N, help="total ciphertexts")
    bench.add_argument("--structures", type=int, default=4)
    bench.add_argument("--keywords", type=int, default=100, help="background keyword universe")
    bench.add_argument("--distribution", default="uniform", choices=["uniform", "zipf"])
    bench.add_argument("--zipf-s", dest="zipf_s", type=float, default=1.0)
    bench.add_argument("--m-list", dest="m_list", help="comma separated match counts")
    bench.add_argument("--reps", type=int, default=3)
    bench.add_argument("--no-peks", dest="no_peks", action="store_true")
    return parser


def execute_command(commands, command, args):
    """Execute a command and return its exit status."""
    if command not in commands:
        print(f"❌ Unknown command: {command}")
        cmd_help()
        return 2
    try:
        status = commands[command](args)
        return 0 if status is None else status
    except KeyboardInterrupt:
        print("\n⚠️  Command interrupted")
        return 130
    except Exception as e:
        print(f"❌ Command error: {e}")
        from utils.core import DEBUG

        if DEBUG:
            import traceback

            traceback.print_exc()
        return 1


def run_command(argv=None):
    """Parse ``argv``, run one subcommand and return the exit status."""
    load_dotenv()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    state = CLIState()
    env_debug = os.getenv("SPCHS_DEBUG", "").lower() in ["true", "1", "yes", "on"]
    set_debug(args.debug or env_debug, state)

    if not args.command:
        cmd_help()
        return 2

    state.apply_args(args)
    state.set_variable("PRI_KEY", os.getenv("SPCHS_PRI_KEY", ""))
    if state.get_raw_variable("SEED") and not state.get_raw_variable("SEED").isdigit():
        print("❌ --seed: must be a non-negative integer")
        print_help_for_command(args.command, state)
        return 1

    debug_print(f"Executing command: {args.command}")
    return execute_command(get_commands(state), args.command, args)


def main():
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
