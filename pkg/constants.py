GROUP_NAME = "BLS12-381"
SECURITY_LEVEL = 128
SUPPORTED_SECURITY_LEVELS = (SECURITY_LEVEL,)

# SPCHS_PAIRING values; auto prefers the native engine when installed
PAIRING_ENGINES = ("auto", "py_ecc", "blst")

# Hash-to-curve domain separation tags, one per module
H_DST = b"SPCHS-H-v1"
IBKEM_DST = b"SPCHS-IBKEM-H-v1"
IBE_DST = b"SPCHS-IBE-H-v1"

# KDF labels (HKDF info); lambda = 256 bits
KEY_BYTES = 32
PEKS_KDF_INFO = b"SPCHS-PEKS-KDF-v1"
IBKEM_KDF_INFO = b"SPCHS-IBKEM-KDF-v1"
IBE_KDF_INFO = b"SPCHS-IBE-KDF-v1"

# Generic construction: anchor identity used at structure initialization
RESERVED_INIT_KEYWORD = b"\x00SPCHS-INIT"

# Key-file framing: MAGIC || role || backend || body
KEY_MAGIC = b"SPCHS1"
ROLE_MPK = 0x01
ROLE_MSK = 0x02
ROLE_PUB = 0x03
ROLE_TRAPDOOR = 0x04
ROLE_PRI = 0x05
ROLE_PRI_SEALED = 0x06

ROLE_NAMES = {
    ROLE_MPK: "master public key",
    ROLE_MSK: "master secret key",
    ROLE_PUB: "structure public part",
    ROLE_TRAPDOOR: "trapdoor",
    ROLE_PRI: "structure private part",
    ROLE_PRI_SEALED: "sealed structure private part",
}

BACKEND_SCRATCH = 0x01
BACKEND_GENERIC = 0x02
BACKEND_PEKS = 0x03

BACKEND_NAMES = {
    BACKEND_SCRATCH: "scratch",
    BACKEND_GENERIC: "generic",
    BACKEND_PEKS: "peks",
}
BACKEND_IDS = {name: backend for backend, name in BACKEND_NAMES.items()}

# Store file
STORE_MAGIC = b"SPCHSDB1"
STORE_FLAG_CRC = 0x01

# Benchmark output
CSV_COLUMNS = [
    "backend",
    "n",
    "n_structures",
    "m",
    "median_ms",
    "pairings",
    "comparisons",
    "reps",
]
DEFAULT_BENCH_N = 10_000
DEFAULT_BENCH_M_LIST = [0, 100, 200, 300, 400, 500, 600, 700, 800, 900, 1000]



def get_scheme(backend, group=None):
    """Build the SPCHS scheme object for a backend byte or name."""
    from utils.group import PairingGroup

    if isinstance(backend, str):
        backend = BACKEND_IDS[backend]
    group = group or PairingGroup()
    if backend == BACKEND_SCRATCH:
        from schemes.spchs import ScratchSpchs

        return ScratchSpchs(group)
    if backend == BACKEND_GENERIC:
        from schemes.generic import GenericSpchs
        from schemes.ibe import HashMaskIbe
        from schemes.ibkem import PairingIbkem

        return GenericSpchs(PairingIbkem(group), HashMaskIbe(group))
    raise ValueError(f"unknown SPCHS backend: {backend!r}")


def get_commands(state):
    """Build a mapping of subcommand names to handlers."""
    from commands.setup import cmd_setup
    from commands.struct_init import cmd_struct_init
    from commands.encrypt import cmd_encrypt
    from commands.trapdoor import cmd_trapdoor
    from commands.search import cmd_search
    from commands.bench import cmd_bench

    return {
        "setup": lambda args: cmd_setup(args, state),
        "struct-init": lambda args: cmd_struct_init(args, state),
        "encrypt": lambda args: cmd_encrypt(args, state),
        "trapdoor": lambda args: cmd_trapdoor(args, state),
        "search": lambda args: cmd_search(args, state),
        "bench": lambda args: cmd_bench(args, state),
    }
