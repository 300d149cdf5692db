"""Seeded replication, K sweeps and aggregation.

Seeding is positional: every random stream is derived from
``(master_seed, tag, k, replicate_index)`` by a keyed BLAKE2b hash, so the
record stream is identical whatever the worker count or scheduling. For a
given ``(k, replicate_index)`` all algorithms see the same landscape and
the same initial configuration; only their walk streams differ.
"""
from __future__ import annotations

import hashlib
import os
import struct
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError
from .landscape import Landscape, generate_landscape, make_rng
from .search import (NODE_SELECTION_MODES, SUBUNIT_EVAL_MODES, PuParams, SearchOutcome, hamming_distance,
                     make_partition, random_configuration, run_cs, run_ictt, run_pu)

CS = "CS"
PU = "PU"
ICTT1 = "ICTT1"
ICTT1_ALT = "ICTT1_ALT"
ALGORITHMS = (CS, PU, ICTT1, ICTT1_ALT)

LANDSCAPE_TAG = "landscape"
INIT_TAG = "init"


@dataclass(frozen=True)
class ExperimentSpec:
    """Parameters of a sweep. Defaults follow the published protocol."""

    n: int = 20
    k_values: tuple[int, ...] = tuple(range(20))
    algorithms: tuple[str, ...] = ALGORITHMS
    iterations: int = 10_000
    max_steps: int = 1000
    pu: PuParams = field(default_factory=PuParams)
    subunits_ictt1: int = 4
    subunits_ictt1_alt: int = 6
    master_seed: int = 2021
    subunit_eval_mode: str = "inclusive"
    ictt_node_selection: str = "untried"
    workers: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError("n must be positive")
        bad = [k for k in self.k_values if not 0 <= k <= self.n - 1]
        if bad:
            raise ParameterError(f"k values {bad} outside [0, {self.n - 1}]")
        unknown = [a for a in self.algorithms if a not in ALGORITHMS]
        if unknown:
            raise ParameterError(f"unknown algorithms {unknown}; choose from {ALGORITHMS}")
        if self.iterations < 1 or self.max_steps < 1 or self.workers < 1:
            raise ParameterError("iterations, max_steps and workers must be positive")
        for m in (self.subunits_ictt1, self.subunits_ictt1_alt):
            if not 1 <= m <= self.n:
                raise ParameterError(f"sub-unit count {m} outside [1, {self.n}]")
        if self.subunit_eval_mode not in SUBUNIT_EVAL_MODES:
            raise ParameterError(f"subunit_eval_mode must be one of {SUBUNIT_EVAL_MODES}")
        if self.ictt_node_selection not in NODE_SELECTION_MODES:
            raise ParameterError(f"ictt_node_selection must be one of {NODE_SELECTION_MODES}")


@dataclass(frozen=True)
class ReplicateRecord:
    algorithm: str
    k: int
    replicate_index: int
    best_fitness: float
    hamming: int
    steps_executed: int
    terminated_early: bool
    seed_used: int
    initial: str
    best: str


@dataclass(frozen=True)
class SummaryRow:
    algorithm: str
    k: int
    mean_fitness: float
    se_fitness: float
    mean_hamming: float
    se_hamming: float
    mean_steps: float
    early_term_rate: float
    iterations: int


@dataclass
class SweepSummary:
    rows: list[SummaryRow]

    def row(self, algorithm: str, k: int) -> SummaryRow:
        for r in self.rows:
            if r.algorithm == algorithm and r.k == k:
                return r
        raise KeyError((algorithm, k))


def derive_seed(master_seed: int, tag: str, k: int, replicate_index: int) -> int:
    """64-bit seed from a BLAKE2b digest of the packed fields."""
    payload = struct.pack("<Q", master_seed & 0xFFFFFFFFFFFFFFFF) + tag.encode() + \
        struct.pack("<qq", k, replicate_index)
    return int.from_bytes(hashlib.blake2b(payload, digest_size=8).digest(), "little")


# Per-process matrix buffers, keyed by shape; K=19 at n=20 is ~170 MB.
_buffers: dict[tuple[int, int], np.ndarray] = {}


def _landscape(spec: ExperimentSpec, k: int, r: int) -> Landscape:
    shape = (2 ** (k + 1), spec.n)
    if shape not in _buffers:
        _buffers.clear()
        _buffers[shape] = np.empty(shape)
    return generate_landscape(spec.n, k, derive_seed(spec.master_seed, LANDSCAPE_TAG, k, r),
                              out=_buffers[shape])


def initial_configuration(spec: ExperimentSpec, k: int, r: int) -> np.ndarray:
    return random_configuration(spec.n, make_rng(derive_seed(spec.master_seed, INIT_TAG, k, r)))


def run_walker(spec: ExperimentSpec, algorithm: str, landscape: Landscape, init,
               rng: np.random.Generator, max_steps: int | None = None) -> SearchOutcome:
    steps = spec.max_steps if max_steps is None else max_steps
    if algorithm == CS:
        return run_cs(landscape, init, steps, rng)
    if algorithm == PU:
        return run_pu(landscape, init, spec.pu, rng)
    m = spec.subunits_ictt1 if algorithm == ICTT1 else spec.subunits_ictt1_alt
    partition = make_partition(spec.n, m, rng)
    return run_ictt(landscape, partition, init, steps, rng, spec.subunit_eval_mode,
                    spec.ictt_node_selection)


def _record(algorithm, k, r, seed, outcome: SearchOutcome) -> ReplicateRecord:
    return ReplicateRecord(
        algorithm=algorithm, k=k, replicate_index=r,
        best_fitness=outcome.best_fitness,
        hamming=hamming_distance(outcome.initial, outcome.best),
        steps_executed=outcome.steps_executed,
        terminated_early=outcome.terminated_early,
        seed_used=seed,
        initial="".join(map(str, outcome.initial)),
        best="".join(map(str, outcome.best)),
    )


def _replicate_group(spec: ExperimentSpec, k: int, r: int,
                     algorithms) -> list[ReplicateRecord]:
    landscape = _landscape(spec, k, r)
    init = initial_configuration(spec, k, r)
    out = []
    for algorithm in algorithms:
        seed = derive_seed(spec.master_seed, algorithm, k, r)
        outcome = run_walker(spec, algorithm, landscape, init, make_rng(seed))
        out.append(_record(algorithm, k, r, seed, outcome))
    return out


def run_replicate(spec: ExperimentSpec, algorithm: str, k: int,
                  replicate_index: int) -> ReplicateRecord:
    """One walk of one algorithm on the shared landscape for ``(k, replicate_index)``."""
    if algorithm not in ALGORITHMS:
        raise ParameterError(f"unknown algorithm {algorithm!r}")
    if not 0 <= k <= spec.n - 1:
        raise ParameterError(f"k={k} outside [0, {spec.n - 1}]")
    return _replicate_group(spec, k, replicate_index, (algorithm,))[0]


def _sweep_item(args):
    spec, k, r = args
    return _replicate_group(spec, k, r, spec.algorithms)


def _map(fn, items, workers: int):
    if workers == 1:
        return [fn(x) for x in items]
    chunk = max(1, len(items) // (workers * 8))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=chunk))


def run_records(spec: ExperimentSpec) -> list[ReplicateRecord]:
    """Every replicate of the sweep, ordered by (algorithm, k, replicate)."""
    items = [(spec, k, r) for k in spec.k_values for r in range(spec.iterations)]
    records = [rec for group in _map(_sweep_item, items, spec.workers) for rec in group]
    records.sort(key=lambda x: (x.algorithm, x.k, x.replicate_index))
    return records


def summarize(records: list[ReplicateRecord]) -> SweepSummary:
    groups: dict[tuple[str, int], list[ReplicateRecord]] = {}
    for rec in records:
        groups.setdefault((rec.algorithm, rec.k), []).append(rec)
    rows = []
    for (algorithm, k), recs in groups.items():
        fit = np.array([x.best_fitness for x in recs])
        ham = np.array([x.hamming for x in recs], dtype=float)
        rows.append(SummaryRow(
            algorithm=algorithm, k=k,
            mean_fitness=float(fit.mean()), se_fitness=_se(fit),
            mean_hamming=float(ham.mean()), se_hamming=_se(ham),
            mean_steps=float(np.mean([x.steps_executed for x in recs])),
            early_term_rate=float(np.mean([x.terminated_early for x in recs])),
            iterations=len(recs),
        ))
    return SweepSummary(rows)


def _se(x: np.ndarray) -> float:
    if x.size < 2:
        return 0.0
    return float(x.std(ddof=1) / np.sqrt(x.size))


def run_sweep(spec: ExperimentSpec) -> tuple[SweepSummary, list[ReplicateRecord]]:
    records = run_records(spec)
    return summarize(records), records


def _trace_item(args):
    spec, k, r, steps = args
    landscape = _landscape(spec, k, r)
    init = initial_configuration(spec, k, r)
    seed = derive_seed(spec.master_seed, ICTT1, k, r)
    outcome = run_walker(spec, ICTT1, landscape, init, make_rng(seed), max_steps=steps)
    row = np.zeros(steps, dtype=np.int64)
    row[:outcome.steps_executed] = outcome.moves_available_trace
    return row


def moves_trace_matrix(spec: ExperimentSpec, k: int, steps: int) -> np.ndarray:
    """ICTT1 moves-available counts, one row per replicate, one column per step.

    Runs that stopped early are padded with zeros.
    """
    if steps < 1:
        raise ParameterError("steps must be positive")
    if not 0 <= k <= spec.n - 1:
        raise ParameterError(f"k={k} outside [0, {spec.n - 1}]")
    items = [(spec, k, r, steps) for r in range(spec.iterations)]
    return np.vstack(_map(_trace_item, items, spec.workers))


def run_moves_trace(spec: ExperimentSpec, k: int, steps: int) -> np.ndarray:
    """Mean ICTT1 moves available after each of ``steps`` steps."""
    return moves_trace_matrix(spec, k, steps).mean(axis=0)


def default_workers() -> int:
    return os.cpu_count() or 1
