"""
Benchmark: structured search against the PEKS linear scan on one synthetic
corpus, with operation counts taken from the group's counters.
"""

from __future__ import annotations

import statistics
from dataclasses import asdict, dataclass, field
from pathlib import Path
from time import perf_counter

import numpy as np
import pandas as pd

from constants import (
    BACKEND_IDS,
    BACKEND_NAMES,
    BACKEND_PEKS,
    BACKEND_SCRATCH,
    CSV_COLUMNS,
    DEFAULT_BENCH_M_LIST,
    DEFAULT_BENCH_N,
    get_scheme,
)
from commands.common import fail
from schemes.peks import PeksBaseline
from utils.core import debug_print, make_rng
from utils.corpus import build_corpus, build_peks_corpus, plan_target_script, target_keyword
from utils.errors import BenchConfigError, BenchOutputError, SpchsError
from utils.group import PairingGroup
from utils.validation import validation_wrapper


@dataclass(frozen=True)
class BenchConfig:
    n: int = DEFAULT_BENCH_N
    n_structures: int = 4
    universe: int = 100
    distribution: str = "uniform"
    zipf_s: float = 1.0
    m_list: tuple[int, ...] = tuple(DEFAULT_BENCH_M_LIST)
    backend: str = "scratch"
    reps: int = 3
    seed: int | None = 0
    include_peks: bool = True

    def validate(self) -> "BenchConfig":
        if self.n_structures < 1 or self.n < self.n_structures:
            raise BenchConfigError(
                f"need n >= structures >= 1 (n={self.n}, structures={self.n_structures})"
            )
        if self.reps < 1:
            raise BenchConfigError("--reps must be at least 1")
        if self.backend not in BACKEND_IDS or BACKEND_IDS[self.backend] == BACKEND_PEKS:
            raise BenchConfigError(f"unknown SPCHS backend: {self.backend}")
        if self.distribution not in ("uniform", "zipf"):
            raise BenchConfigError(f"unknown keyword distribution: {self.distribution}")
        if not self.m_list:
            raise BenchConfigError("--m-list must name at least one match count")
        bad = [m for m in self.m_list if m < 0 or m > self.n]
        if bad:
            raise BenchConfigError(f"match counts outside [0, {self.n}]: {bad}")
        needed = sum(set(self.m_list))
        if needed > self.n:
            raise BenchConfigError(
                f"no corpus of {self.n} ciphertexts can hold target keywords needing {needed}"
            )
        return self


@dataclass(frozen=True)
class BenchRow:
    backend: str
    n: int
    n_structures: int
    m: int
    median_ms: float
    pairings: int
    comparisons: int
    reps: int


@dataclass
class BenchResult:
    config: BenchConfig
    rows: list[BenchRow] = field(default_factory=list)

    def rows_for(self, backend: str) -> list[BenchRow]:
        return [row for row in self.rows if row.backend == backend]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([asdict(row) for row in self.rows], columns=CSV_COLUMNS)


def _median_ms(samples):
    return statistics.median(samples) * 1000.0


def _time_structured(scheme, group, mpk, corpus, trap, reps):
    samples, found = [], 0
    for _ in range(reps):
        group.counters_reset()
        corpus.store.reset_comparisons()
        start = perf_counter()
        found = sum(
            len(scheme.structured_search(mpk, pub, corpus.store, trap))
            for pub in corpus.publics
        )
        samples.append(perf_counter() - start)
    return samples, found, group.counters_snapshot().pairings, corpus.store.comparisons


def _time_peks(peks, group, decoded, trap, reps):
    samples, found = [], 0
    for _ in range(reps):
        group.counters_reset()
        start = perf_counter()
        found = len(peks.peks_scan(decoded, trap))
        samples.append(perf_counter() - start)
    return samples, found, group.counters_snapshot().pairings


def bench_corpus(config: BenchConfig, group: PairingGroup | None = None) -> BenchResult:
    """Build one corpus and time every target keyword, SPCHS then PEKS.

    Targets run sequentially so the counters and timings of each belong to it
    alone. Counter values are those of the last repetition; they are the same
    for every repetition.
    """
    config.validate()
    rng = make_rng(config.seed)
    script = plan_target_script(
        config.n,
        config.n_structures,
        list(config.m_list),
        config.universe,
        config.distribution,
        config.zipf_s,
        rng,
    )

    group = group or PairingGroup()
    scheme = get_scheme(config.backend, group)
    mpk, msk = scheme.system_setup(rng=rng)
    print(f"🔧 Building {config.backend} corpus: {config.n} ciphertext(s), {config.n_structures} structure(s)")
    corpus = build_corpus(scheme, mpk, script, config.n_structures, rng)

    peks = peks_records = peks_keys = None
    if config.include_peks:
        peks = PeksBaseline(group)
        if scheme.backend == BACKEND_SCRATCH:
            peks_keys = (scheme, mpk, msk)
        else:
            scratch = get_scheme(BACKEND_SCRATCH, group)
            peks_keys = (scratch, *scratch.system_setup(rng=rng))
        print(f"🔧 Building PEKS corpus: {config.n} ciphertext(s)")
        peks_corpus = build_peks_corpus(peks, peks_keys[1], script, rng)
        peks_records = peks.decode_records(peks_corpus.store)

    result = BenchResult(config)
    seen = set()
    for m in config.m_list:
        if m in seen:
            continue
        seen.add(m)
        keyword = target_keyword(m)

        trap = scheme.trapdoor(msk, keyword)
        samples, found, pairings, comparisons = _time_structured(
            scheme, group, mpk, corpus, trap, config.reps
        )
        if found != m:
            raise SpchsError(f"structured search found {found} ciphertext(s) for m={m}")
        result.rows.append(
            BenchRow(config.backend, config.n, config.n_structures, m,
                     _median_ms(samples), pairings, comparisons, config.reps)
        )
        debug_print(f"{config.backend} m={m}: {pairings} pairings, {comparisons} comparisons")

        if peks is not None:
            keys_scheme, _, keys_msk = peks_keys
            peks_trap = keys_scheme.trapdoor(keys_msk, keyword)
            samples, found, pairings = _time_peks(peks, group, peks_records, peks_trap, config.reps)
            if found != m:
                raise SpchsError(f"PEKS scan found {found} ciphertext(s) for m={m}")
            result.rows.append(
                BenchRow(BACKEND_NAMES[BACKEND_PEKS], config.n, config.n_structures, m,
                         _median_ms(samples), pairings, 0, config.reps)
            )
            debug_print(f"peks m={m}: {pairings} pairings")
    return result


def emit_results(result: BenchResult, path) -> Path:
    """Write one CSV row per timed search under the ``CSV_COLUMNS`` header."""
    path = Path(path)
    try:
        result.to_frame().to_csv(path, index=False, float_format="%.3f", lineterminator="\n")
    except OSError as e:
        raise BenchOutputError(f"cannot write {path}: {e}") from None
    debug_print(f"Wrote {len(result.rows)} row(s) to {path}")
    return path


def fit_linear_trend(result: BenchResult, backend: str | None = None):
    """Least-squares fit of median time against m: (slope, intercept, r^2).

    Returns None when fewer than two distinct m values were timed.
    """
    rows = result.rows_for(backend or result.config.backend)
    if len({row.m for row in rows}) < 2:
        return None
    x = np.array([row.m for row in rows], dtype=float)
    y = np.array([row.median_ms for row in rows], dtype=float)
    slope, intercept = np.polyfit(x, y, 1)
    residual = y - (slope * x + intercept)
    total = y - y.mean()
    ss_tot = float(np.dot(total, total))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - float(np.dot(residual, residual)) / ss_tot
    return float(slope), float(intercept), r2


def _print_summary(result: BenchResult):
    frame = result.to_frame()
    print("\n📊 Results")
    print(frame.to_string(index=False, float_format=lambda v: f"{v:.1f}"))

    trend = fit_linear_trend(result)
    if trend:
        slope, intercept, r2 = trend
        print(f"📈 {result.config.backend}: {slope:.3f} ms per match, r² = {r2:.3f}")

    spchs = {row.m: row for row in result.rows_for(result.config.backend)}
    peks = {row.m: row for row in result.rows_for(BACKEND_NAMES[BACKEND_PEKS])}
    if 100 in spchs and 100 in peks and spchs[100].median_ms > 0:
        ratio = peks[100].median_ms / spchs[100].median_ms
        print(f"📊 PEKS / SPCHS at m = 100: {ratio:.1f}x")


@validation_wrapper
def cmd_bench(args, state, *, validated=None):
    """Run the SPCHS vs PEKS benchmark and write the CSV to ``--out``."""
    missing, invalid = state.validate_required_vars(["OUT"])
    if missing or invalid:
        return 1
    config = validated

    out = Path(state.get_raw_variable("OUT"))
    if not out.parent.exists():
        return fail("--out", f"directory does not exist: {out.parent}")

    try:
        result = bench_corpus(config)
        emit_results(result, out)
    except BenchConfigError as e:
        return fail("--m-list", str(e))
    except BenchOutputError as e:
        return fail("--out", str(e))

    _print_summary(result)
    print(f"✅ Wrote {len(result.rows)} row(s) to {out}")
    return 0
