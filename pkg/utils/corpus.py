"""
Synthetic corpora for tests and benchmarks.

A script is the encryption order: a list of (structure index, keyword)
pairs. Building a corpus runs the script against a scheme and records, per
(structure, keyword), the ordinals that search must return.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any

from data.store import TagIndexedStore
from utils.core import debug_print, resolve_rng
from utils.errors import BenchConfigError
from utils.keywords import encode_keyword

Script = list[tuple[int, bytes]]


@dataclass
class Corpus:
    store: TagIndexedStore
    structures: list[tuple[Any, Any]] = field(default_factory=list)
    ground_truth: dict[tuple[int, bytes], list[int]] = field(default_factory=dict)

    @property
    def publics(self) -> list[Any]:
        return [pub for _, pub in self.structures]

    def expected(self, structure: int, keyword) -> list[int]:
        return self.ground_truth.get((structure, encode_keyword(keyword)), [])

    def keywords(self) -> set[bytes]:
        return {keyword for _, keyword in self.ground_truth}


def random_script(
    rng,
    n_structures: int = 5,
    n_keywords: int = 50,
    n_ciphertexts: int = 500,
    max_per_chain: int | None = None,
) -> Script:
    """Uniformly interleaved script; optionally caps each (structure, keyword) chain."""
    rng = resolve_rng(rng)
    keywords = [b"w-%d" % i for i in range(n_keywords)]
    counts: dict[tuple[int, bytes], int] = defaultdict(int)
    script: Script = []
    attempts = 0
    while len(script) < n_ciphertexts and attempts < 20 * n_ciphertexts:
        attempts += 1
        entry = (rng.randrange(n_structures), rng.choice(keywords))
        if max_per_chain is not None and counts[entry] >= max_per_chain:
            continue
        counts[entry] += 1
        script.append(entry)
    return script


def build_corpus(scheme, mpk, script: Script, n_structures: int | None = None, rng=None) -> Corpus:
    """Encrypt ``script`` under fresh structures into a new store."""
    rng = resolve_rng(rng)
    if n_structures is None:
        n_structures = 1 + max((s for s, _ in script), default=0)
    corpus = Corpus(TagIndexedStore(scheme.backend))
    corpus.structures = [scheme.structure_init(mpk, rng) for _ in range(n_structures)]
    truth: dict[tuple[int, bytes], list[int]] = defaultdict(list)
    for structure, keyword in script:
        pri, pub = corpus.structures[structure]
        ciphertext = scheme.structured_encrypt(mpk, keyword, pri, rng)
        ordinal = scheme.store_ciphertext(corpus.store, ciphertext, pub)
        truth[(structure, encode_keyword(keyword))].append(ordinal)
    corpus.ground_truth = dict(truth)
    debug_print(
        f"Built corpus: {len(corpus.store)} ciphertext(s), {n_structures} structure(s)"
    )
    return corpus


def build_peks_corpus(peks, mpk, script: Script, rng=None) -> Corpus:
    """The same logical corpus as PEKS ciphertexts; structure is only a label."""
    rng = resolve_rng(rng)
    corpus = Corpus(TagIndexedStore(peks.backend))
    truth: dict[tuple[int, bytes], list[int]] = defaultdict(list)
    for structure, keyword in script:
        ciphertext = peks.peks_encrypt(mpk, keyword, rng)
        ordinal = peks.store_ciphertext(corpus.store, ciphertext, b"structure-%d" % structure)
        truth[(structure, encode_keyword(keyword))].append(ordinal)
    corpus.ground_truth = dict(truth)
    return corpus


def target_keyword(m: int) -> bytes:
    return b"target-%d" % m


def background_weights(universe: int, distribution: str, zipf_s: float = 1.0) -> list[float]:
    if distribution == "uniform":
        return [1.0] * universe
    if distribution == "zipf":
        return [1.0 / (rank + 1) ** zipf_s for rank in range(universe)]
    raise BenchConfigError(f"unknown keyword distribution: {distribution}")


def plan_target_script(
    n: int,
    n_structures: int,
    m_list: list[int],
    universe: int,
    distribution: str = "uniform",
    zipf_s: float = 1.0,
    rng=None,
) -> Script:
    """Script of ``n`` ciphertexts in which ``target-<m>`` occurs exactly m times.

    Target occurrences are spread round-robin over the structures; the rest of
    the corpus is background keywords ``kw-<i>``. Raises ``BenchConfigError``
    when the targets cannot fit.
    """
    rng = resolve_rng(rng)
    if n_structures < 1 or n < n_structures:
        raise BenchConfigError(f"need n >= structures >= 1 (n={n}, structures={n_structures})")
    targets = sorted(set(m_list))
    if any(m < 0 or m > n for m in targets):
        raise BenchConfigError(f"every m must lie in [0, {n}]")
    if sum(targets) > n:
        raise BenchConfigError(
            f"target keywords need {sum(targets)} ciphertexts but n is {n}"
        )
    if universe < 1 and sum(targets) < n:
        raise BenchConfigError("background keyword universe must be nonempty")

    script: Script = []
    for m in targets:
        script += [(i % n_structures, target_keyword(m)) for i in range(m)]

    background = n - len(script)
    if background:
        keywords = [b"kw-%d" % i for i in range(universe)]
        weights = background_weights(universe, distribution, zipf_s)
        for keyword in rng.choices(keywords, weights=weights, k=background):
            script.append((rng.randrange(n_structures), keyword))
    rng.shuffle(script)
    return script
