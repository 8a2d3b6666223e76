import os
import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from schemes.generic import GenericSpchs  # noqa: E402
from schemes.ibe import HashMaskIbe  # noqa: E402
from schemes.ibkem import PairingIbkem  # noqa: E402
from schemes.peks import PeksBaseline  # noqa: E402
from schemes.spchs import ScratchSpchs  # noqa: E402
from utils.group import PairingGroup  # noqa: E402


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "slow: acceptance-scale run, enabled with SPCHS_SLOW=1"
    )


def pytest_collection_modifyitems(config, items):
    if os.getenv("SPCHS_SLOW") == "1":
        return
    skip_slow = pytest.mark.skip(reason="set SPCHS_SLOW=1 to run acceptance-scale tests")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def rng():
    return random.Random(20240229)


@pytest.fixture
def group():
    return PairingGroup()


@pytest.fixture
def scratch(group):
    return ScratchSpchs(group)


@pytest.fixture
def scratch_keys(scratch, rng):
    return scratch.system_setup(rng=rng)


@pytest.fixture
def peks(group):
    return PeksBaseline(group)


@pytest.fixture
def generic(group):
    return GenericSpchs(PairingIbkem(group), HashMaskIbe(group))


@pytest.fixture
def generic_keys(generic, rng):
    return generic.system_setup(rng=rng)


@pytest.fixture
def sealing_key():
    return bytes(range(32))


def _check_corpus(scheme, mpk, msk, corpus):
    for keyword in corpus.keywords() | {b"absent"}:
        trap = scheme.trapdoor(msk, keyword)
        for index, pub in enumerate(corpus.publics):
            found = scheme.structured_search(mpk, pub, corpus.store, trap)
            assert found == corpus.expected(index, keyword), (index, keyword)


@pytest.fixture
def assert_consistent():
    """Search every (structure, keyword) of a corpus and compare with its log."""
    return _check_corpus
