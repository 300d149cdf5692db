"""Walkers over NK landscapes: centralized search, parallel updating, ICTT.

Every walker draws all of its randomness up front from the generator it is
handed (one uniform number per step for the single-flip walkers, a
``generations x n`` uniform table for parallel updating), then runs a
compiled loop. Two calls
with generators in the same state therefore produce identical outcomes.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import ParameterError
from .landscape import Landscape, as_configuration

INCLUSIVE = "inclusive"
EXCLUSIVE = "exclusive"
SUBUNIT_EVAL_MODES = (INCLUSIVE, EXCLUSIVE)
FRESH = "fresh"
UNTRIED = "untried"
NODE_SELECTION_MODES = (FRESH, UNTRIED)


@dataclass(frozen=True)
class Partition:
    """Assignment of nodes to sub-units ``0 .. m-1``."""

    assignment: np.ndarray
    m: int

    def members(self, unit: int) -> np.ndarray:
        return np.flatnonzero(self.assignment == unit)

    def sizes(self) -> np.ndarray:
        return np.bincount(self.assignment, minlength=self.m)


@dataclass(frozen=True)
class PuParams:
    tau: float = 0.33
    max_generations: int = 500

    def __post_init__(self):
        if not 0.0 < self.tau < 1.0:
            raise ParameterError(f"tau must lie in (0, 1), got {self.tau}")
        if self.max_generations < 1:
            raise ParameterError("max_generations must be positive")


@dataclass
class SearchOutcome:
    """Result of one walk.

    ``final`` is where the walk stopped; ``best`` is the highest-fitness
    configuration visited (for CS the two coincide). ``step_nodes`` and
    ``accepted`` log the single-flip walkers' attempted moves step by step; for PU,
    ``accepted`` is the ``steps x n`` table of nodes flipped per generation
    and ``step_nodes`` is empty.
    """

    initial: np.ndarray
    best: np.ndarray
    best_fitness: float
    final: np.ndarray
    steps_executed: int
    terminated_early: bool
    fitness_trace: np.ndarray
    moves_available_trace: np.ndarray
    step_nodes: np.ndarray = field(repr=False)
    accepted: np.ndarray = field(repr=False)

    @property
    def hamming(self) -> int:
        return hamming_distance(self.initial, self.best)


def random_configuration(n: int, rng: np.random.Generator) -> np.ndarray:
    """Each bit independently 0 or 1 with probability one half."""
    if n < 1:
        raise ParameterError(f"n must be positive, got {n}")
    return rng.integers(0, 2, size=n, dtype=np.uint8)


def make_partition(n: int, m: int, rng: np.random.Generator) -> Partition:
    """Split ``n`` nodes into ``m`` sub-units as evenly as divisibility allows.

    A random permutation deals ``n // m`` nodes to each sub-unit; the
    ``n % m`` leftover nodes all join one randomly chosen sub-unit.
    """
    if not 1 <= m <= n:
        raise ParameterError(f"need 1 <= m <= n, got m={m}, n={n}")
    order = rng.permutation(n)
    size = n // m
    assignment = np.empty(n, dtype=np.int64)
    for unit in range(m):
        assignment[order[unit * size:(unit + 1) * size]] = unit
    leftover = order[m * size:]
    if leftover.size:
        assignment[leftover] = rng.integers(0, m)
    return Partition(assignment, m)


def single_unit_partition(n: int) -> Partition:
    return Partition(np.zeros(n, dtype=np.int64), 1)


def hamming_distance(a, b) -> int:
    a = as_configuration(a)
    b = as_configuration(b)
    if a.shape != b.shape:
        raise ParameterError(f"length mismatch: {a.shape[0]} vs {b.shape[0]}")
    return int(np.count_nonzero(a != b))


def _prepared(landscape: Landscape, config):
    bits = as_configuration(config, landscape.n).copy()
    matrix, deps, indptr, indices = landscape.arrays
    contrib = _kernels.all_contributions(matrix, deps, bits)
    return matrix, deps, indptr, indices, bits, contrib


def _check_mode(mode: str) -> bool:
    if mode not in SUBUNIT_EVAL_MODES:
        raise ParameterError(f"subunit_eval must be one of {SUBUNIT_EVAL_MODES}, got {mode!r}")
    return mode == EXCLUSIVE


def _check_partition(landscape: Landscape, partition: Partition) -> np.ndarray:
    assignment = np.asarray(partition.assignment, dtype=np.int64)
    if assignment.shape != (landscape.n,):
        raise ParameterError("partition does not cover the landscape's nodes")
    return assignment


def count_improving_moves_global(landscape: Landscape, config) -> int:
    """Number of single flips that strictly raise overall fitness."""
    matrix, deps, indptr, indices, bits, contrib = _prepared(landscape, config)
    group = np.zeros(landscape.n, dtype=np.int64)
    return int(_kernels.count_improving(matrix, deps, indptr, indices, bits, contrib, group, False))


def count_improving_moves_subunit(landscape: Landscape, partition: Partition, config,
                                  subunit_eval: str = INCLUSIVE) -> int:
    """Number of single flips that strictly raise the flipped node's sub-unit sum."""
    exclusive = _check_mode(subunit_eval)
    group = _check_partition(landscape, partition)
    matrix, deps, indptr, indices, bits, contrib = _prepared(landscape, config)
    return int(_kernels.count_improving(matrix, deps, indptr, indices, bits, contrib, group,
                                        exclusive))


def _single_flip(landscape, init, group, exclusive, max_steps, rng, node_selection):
    if max_steps < 1:
        raise ParameterError("max_steps must be positive")
    if node_selection not in NODE_SELECTION_MODES:
        raise ParameterError(f"node_selection must be one of {NODE_SELECTION_MODES}")
    init = as_configuration(init, landscape.n)
    draws = rng.random(max_steps)
    matrix, deps, indptr, indices = landscape.arrays
    final, best, best_fitness, ftrace, mtrace, accepted, chosen, steps, terminated = (
        _kernels.single_flip_walk(matrix, deps, indptr, indices, init, draws, group, exclusive,
                                  node_selection == UNTRIED)
    )
    return SearchOutcome(
        initial=init.copy(), best=best, best_fitness=float(best_fitness), final=final,
        steps_executed=int(steps), terminated_early=bool(terminated),
        fitness_trace=ftrace, moves_available_trace=mtrace,
        step_nodes=chosen, accepted=accepted,
    )


def run_cs(landscape: Landscape, init, max_steps: int, rng: np.random.Generator,
           node_selection: str = FRESH) -> SearchOutcome:
    """Centralized search: flip a random node, keep it only if overall fitness rises.

    Stops once no single flip improves fitness or after ``max_steps``.
    """
    group = np.zeros(landscape.n, dtype=np.int64)
    return _single_flip(landscape, init, group, False, max_steps, rng, node_selection)


def run_ictt(landscape: Landscape, partition: Partition, init, max_steps: int,
             rng: np.random.Generator, subunit_eval: str = INCLUSIVE,
             node_selection: str = UNTRIED) -> SearchOutcome:
    """Incremental changes, taking turns.

    A random node is flipped each step and the flip is kept when the summed
    contributions of that node's sub-unit strictly increase, whatever that
    does to overall fitness. The outcome is the best configuration visited,
    updated whenever overall fitness beats the previously committed one.
    The walk stops when no node can improve its own sub-unit or after
    ``max_steps``.

    After a rejected flip the next node is drawn from those not yet tried
    since the last kept flip (``node_selection="untried"``); ``"fresh"``
    draws from all nodes every step instead. ``subunit_eval="exclusive"``
    leaves the flipped node's own contribution out of its sub-unit sum.
    """
    exclusive = _check_mode(subunit_eval)
    group = _check_partition(landscape, partition)
    return _single_flip(landscape, init, group, exclusive, max_steps, rng, node_selection)


def run_pu(landscape: Landscape, init, params: PuParams, rng: np.random.Generator) -> SearchOutcome:
    """Parallel updating.

    Each generation every node becomes a candidate with probability ``tau``;
    candidates whose solo flip from the generation's starting point would
    raise overall fitness all flip together. The simultaneous flip can lower
    fitness, so the best generation-boundary configuration is reported.
    """
    init = as_configuration(init, landscape.n)
    draws = rng.random((params.max_generations, landscape.n))
    matrix, deps, indptr, indices = landscape.arrays
    final, best, best_fitness, ftrace, mtrace, flipped, steps, terminated = (
        _kernels.parallel_walk(matrix, deps, indptr, indices, init, draws, params.tau)
    )
    return SearchOutcome(
        initial=init.copy(), best=best, best_fitness=float(best_fitness), final=final,
        steps_executed=int(steps), terminated_early=bool(terminated),
        fitness_trace=ftrace, moves_available_trace=mtrace,
        step_nodes=np.empty(0, dtype=np.int64), accepted=flipped,
    )

