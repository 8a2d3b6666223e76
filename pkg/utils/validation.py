from functools import wraps

from constants import BACKEND_IDS, DEFAULT_BENCH_M_LIST
from utils.keywords import COMMENT_PREFIX, normalize_keyword_text


def parse_m_list(text):
    """Parse ``--m-list`` (comma separated, e.g. ``0,100,200``)."""
    if text is None or text == "":
        return list(DEFAULT_BENCH_M_LIST)
    values = []
    for part in str(text).split(","):
        part = part.strip()
        if not part:
            continue
        try:
            values.append(int(part))
        except ValueError:
            raise ValueError(f"--m-list: '{part}' is not an integer") from None
    if not values:
        raise ValueError("--m-list: no values given")
    return values


def validate_bench_args(args):
    """Validate arguments for the 'bench' command.

    Parameters
    ----------
    args : argparse.Namespace
        Parsed bench flags.

    Returns
    -------
    BenchConfig
        The checked benchmark configuration.

    Raises
    ------
    ValueError
        If a flag is out of range (``BenchConfigError`` is a ``ValueError``).
    """
    from commands.bench import BenchConfig

    if args.backend not in BACKEND_IDS or args.backend == "peks":
        raise ValueError(f"--backend: expected scratch or generic, got '{args.backend}'")
    seed = None
    if args.seed not in (None, ""):
        try:
            seed = int(args.seed)
        except ValueError:
            raise ValueError("--seed must be an integer") from None

    config = BenchConfig(
        n=args.n,
        n_structures=args.structures,
        universe=args.keywords,
        distribution=args.distribution,
        zipf_s=args.zipf_s,
        m_list=tuple(parse_m_list(args.m_list)),
        backend=args.backend,
        reps=args.reps,
        seed=seed,
        include_peks=not args.no_peks,
    )
    config.validate()
    return config


def validate_trapdoor_args(args):
    text = args.keyword or ""
    keyword = normalize_keyword_text(text)
    if keyword is None:
        if text.strip().startswith(COMMENT_PREFIX):
            raise ValueError("--keyword: keywords starting with '#' are comments in keyword lists")
        raise ValueError("--keyword: a keyword is required")
    return keyword


# Mapping of command names to validator functions
VALIDATORS = {
    "bench": validate_bench_args,
    "trapdoor": validate_trapdoor_args,
}


def validation_wrapper(func):
    """Factory that applies validation before executing a command function."""

    command_name = func.__name__.replace("cmd_", "", 1)
    validator = VALIDATORS.get(command_name)

    @wraps(func)
    def wrapped(args, state, *f_args, **f_kwargs):
        validated = None
        if validator:
            try:
                validated = validator(args)
            except ValueError as e:
                print(f"❌ {e}")
                from commands.common import print_help_for_command

                print_help_for_command(command_name.replace("_", "-"), state)
                return 1
        return func(args, state, *f_args, validated=validated, **f_kwargs)

    return wrapped
