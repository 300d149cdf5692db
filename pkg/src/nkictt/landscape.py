"""NK landscape instances and fitness evaluation.

A landscape over ``n`` binary nodes stores, for each node, the ``k`` other
nodes it depends on and a fitness matrix of ``2**(k+1)`` rows by ``n``
columns. Node ``p``'s contribution is read from column ``p``; the row is
chosen by ``p``'s own bit (upper half for 0, lower half for 1) followed by
the bits of its dependencies, concatenated in ascending node order with the
most significant bit first.

Everything here is 0-based except :func:`contribution_row_index`, which
reports the 1-based row number used in the textbook description of the
model.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np

from . import _kernels
from .errors import CapacityError, ParameterError

MAX_ADDRESS_BITS = 30


def make_rng(seed: int) -> np.random.Generator:
    """The generator used everywhere in the package: PCG64 seeded with a 64-bit int."""
    return np.random.Generator(np.random.PCG64(int(seed) & 0xFFFFFFFFFFFFFFFF))


@dataclass(frozen=True, eq=False)
class Landscape:
    n: int
    k: int
    deps: np.ndarray
    fitness_matrix: np.ndarray
    seed: int | None = None

    @classmethod
    def from_arrays(cls, deps, fitness_matrix, seed: int | None = None) -> "Landscape":
        """Build a landscape from explicit arrays, validating every invariant.

        Useful for hand-made fixtures such as constant-valued matrices.
        """
        deps = np.array(deps, dtype=np.int64, ndmin=2)
        matrix = np.array(fitness_matrix, dtype=np.float64, ndmin=2)
        n = matrix.shape[1]
        if deps.size == 0:
            deps = deps.reshape(n, 0)
        k = deps.shape[1]
        if deps.shape[0] != n:
            raise ParameterError(f"deps has {deps.shape[0]} rows, expected {n}")
        if matrix.shape[0] != 2 ** (k + 1):
            raise ParameterError(
                f"fitness matrix has {matrix.shape[0]} rows, expected {2 ** (k + 1)}"
            )
        for p in range(n):
            row = deps[p]
            if np.any(row == p) or np.any(row < 0) or np.any(row >= n):
                raise ParameterError(f"invalid dependency row for node {p}: {row}")
            if np.any(np.diff(row) <= 0):
                raise ParameterError(f"dependency row for node {p} not strictly ascending")
        if np.any(matrix < 0.0) or np.any(matrix >= 1.0):
            raise ParameterError("fitness matrix entries must lie in [0, 1)")
        return cls(n, k, _readonly(deps), _readonly(matrix), seed)

    @cached_property
    def _reverse(self) -> tuple[np.ndarray, np.ndarray]:
        # CSR list: node p itself, then every q whose deps contain p.
        lists = [[p] for p in range(self.n)]
        for q in range(self.n):
            for p in self.deps[q]:
                lists[p].append(q)
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        indptr[1:] = np.cumsum([len(x) for x in lists])
        indices = np.fromiter((q for x in lists for q in x), dtype=np.int64, count=indptr[-1])
        return indptr, indices

    def affected_by(self, p: int) -> np.ndarray:
        """Nodes whose contribution may change when ``p`` flips (``p`` first)."""
        indptr, indices = self._reverse
        return indices[indptr[p]:indptr[p + 1]]

    @property
    def arrays(self):
        indptr, indices = self._reverse
        return self.fitness_matrix, self.deps, indptr, indices


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def generate_landscape(n: int, k: int, seed: int, out: np.ndarray | None = None) -> Landscape:
    """Draw a random NK landscape.

    The matrix is filled first, row-major, with uniform draws on [0, 1);
    then each node, in index order, draws ``k`` distinct partners from the
    other ``n - 1`` nodes. ``(n, k, seed)`` therefore pins the instance.

    Parameters
    ----------
    n, k : int
        Number of nodes and number of dependencies per node, ``0 <= k < n``.
    seed : int
        64-bit seed for :func:`make_rng`.
    out : ndarray, optional
        Preallocated ``(2**(k+1), n)`` float64 buffer to fill in place. The
        returned landscape then aliases it, so reuse the buffer only after the
        previous landscape is no longer needed.
    """
    if n < 1:
        raise ParameterError(f"n must be positive, got {n}")
    if not 0 <= k <= n - 1:
        raise ParameterError(f"k must lie in [0, {n - 1}], got {k}")
    if k + 1 > MAX_ADDRESS_BITS:
        raise CapacityError(f"2**{k + 1} rows is too many to materialize")
    rng = make_rng(seed)
    shape = (2 ** (k + 1), n)
    if out is None:
        matrix = np.empty(shape)
    else:
        if out.shape != shape or out.dtype != np.float64:
            raise ParameterError(f"buffer must be float64 of shape {shape}")
        out.setflags(write=True)
        matrix = out
    rng.random(out=matrix)
    deps = np.empty((n, k), dtype=np.int64)
    nodes = np.arange(n)
    for p in range(n):
        others = np.delete(nodes, p)
        deps[p] = np.sort(rng.choice(others, size=k, replace=False))
    return Landscape(n, k, _readonly(deps), _readonly(matrix), int(seed))


def as_configuration(config, n: int | None = None) -> np.ndarray:
    """Coerce a bit sequence (list, array or '0101' string) to a uint8 array."""
    if isinstance(config, str):
        config = [int(c) for c in config]
    bits = np.asarray(config)
    if bits.ndim != 1 or not np.all((bits == 0) | (bits == 1)):
        raise ParameterError("configuration must be a 1-d sequence of 0/1 values")
    if n is not None and bits.shape[0] != n:
        raise ParameterError(f"configuration has length {bits.shape[0]}, expected {n}")
    return bits.astype(np.uint8)


def _check_node(landscape: Landscape, p: int) -> int:
    if not 0 <= p < landscape.n:
        raise ParameterError(f"node index {p} outside [0, {landscape.n})")
    return int(p)


def contribution_row_index(landscape: Landscape, config, p: int) -> int:
    """1-based row of the fitness matrix holding node ``p``'s contribution."""
    bits = as_configuration(config, landscape.n)
    return int(_kernels.row_index(landscape.deps, bits, _check_node(landscape, p))) + 1


def node_contribution(landscape: Landscape, config, p: int) -> float:
    bits = as_configuration(config, landscape.n)
    return float(_kernels.contribution(landscape.fitness_matrix, landscape.deps, bits,
                                       _check_node(landscape, p)))


def contributions(landscape: Landscape, config) -> np.ndarray:
    """Every node's contribution as a length-``n`` array."""
    bits = as_configuration(config, landscape.n)
    return _kernels.all_contributions(landscape.fitness_matrix, landscape.deps, bits)


def configuration_fitness(landscape: Landscape, config) -> float:
    """Mean contribution over all nodes."""
    bits = as_configuration(config, landscape.n)
    return float(_kernels.fitness(landscape.fitness_matrix, landscape.deps, bits))


def subunit_contribution_sum(landscape: Landscape, config, members: Iterable[int]) -> float:
    members = sorted(set(int(m) for m in members))
    if not members:
        raise ParameterError("members must be nonempty")
    for m in members:
        _check_node(landscape, m)
    return float(contributions(landscape, config)[members].sum())


def fitness_after_flip(landscape: Landscape, config, p: int) -> float:
    """Overall fitness once ``p`` is flipped, re-evaluating only affected nodes."""
    bits = as_configuration(config, landscape.n).copy()
    p = _check_node(landscape, p)
    matrix, deps, indptr, indices = landscape.arrays
    contrib = _kernels.all_contributions(matrix, deps, bits)
    _kernels.apply_flip(matrix, deps, indptr, indices, bits, contrib, p)
    return float(_kernels.mean(contrib))
