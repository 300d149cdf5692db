"""Brute-force ground truth for small landscapes.

Nothing here calls the compiled evaluation path. :func:`naive_fitness`
rebuilds each row address by writing the relevant bits out as a string
and parsing it, and the enumerators use their own vectorised addressing.
Bit strings are read with node 0 as the most significant bit, so ties are
broken towards the lexicographically smallest configuration.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CapacityError
from .landscape import Landscape

MAX_ENUMERATION_N = 24
MAX_LOCAL_OPTIMA_N = 20
_CHUNK = 1 << 16


@dataclass(frozen=True)
class OracleReport:
    global_best: np.ndarray
    global_best_fitness: float
    num_local_optima: int | None


def naive_contribution(landscape: Landscape, config, p: int) -> float:
    bits = [int(b) for b in config]
    own = bits[p]
    dependent = "".join(str(bits[q]) for q in sorted(landscape.deps[p]))
    row = 1 + (int(dependent, 2) if dependent else 0)
    if own == 1:
        row += 2 ** landscape.k
    return float(landscape.fitness_matrix[row - 1, p])


def naive_fitness(landscape: Landscape, config) -> float:
    return sum(naive_contribution(landscape, config, p) for p in range(landscape.n)) / landscape.n


def is_local_optimum(landscape: Landscape, config) -> bool:
    """True when no single flip strictly increases fitness."""
    bits = [int(b) for b in config]
    here = naive_fitness(landscape, bits)
    for p in range(landscape.n):
        neighbour = list(bits)
        neighbour[p] ^= 1
        if naive_fitness(landscape, neighbour) > here:
            return False
    return True


def _codes_to_bits(codes: np.ndarray, n: int) -> np.ndarray:
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    return ((codes[:, None] >> shifts) & 1).astype(np.int64)


def _fitness_of_codes(landscape: Landscape, codes: np.ndarray) -> np.ndarray:
    n, k = landscape.n, landscape.k
    bits = _codes_to_bits(codes, n)
    weights = 2 ** np.arange(k - 1, -1, -1, dtype=np.int64)
    total = np.zeros(codes.shape[0])
    for p in range(n):
        row = bits[:, p] * 2 ** k
        if k:
            row = row + bits[:, landscape.deps[p]] @ weights
        total += landscape.fitness_matrix[row, p]
    return total / n


def all_fitness(landscape: Landscape) -> np.ndarray:
    """Fitness of every configuration, indexed by its integer code."""
    _guard(landscape.n, MAX_ENUMERATION_N)
    size = 1 << landscape.n
    out = np.empty(size)
    for start in range(0, size, _CHUNK):
        codes = np.arange(start, min(size, start + _CHUNK), dtype=np.int64)
        out[start:start + codes.size] = _fitness_of_codes(landscape, codes)
    return out


def _guard(n: int, limit: int) -> None:
    if n > limit:
        raise CapacityError(f"enumeration limited to n <= {limit}, got n={n}")


def code_to_configuration(code: int, n: int) -> np.ndarray:
    return _codes_to_bits(np.array([code], dtype=np.int64), n)[0].astype(np.uint8)


def enumerate_global_optimum(landscape: Landscape) -> tuple[np.ndarray, float]:
    """Exhaustive maximum over all ``2**n`` configurations."""
    _guard(landscape.n, MAX_ENUMERATION_N)
    best_code, best_fit = 0, -np.inf
    size = 1 << landscape.n
    for start in range(0, size, _CHUNK):
        codes = np.arange(start, min(size, start + _CHUNK), dtype=np.int64)
        fit = _fitness_of_codes(landscape, codes)
        i = int(np.argmax(fit))  # first maximum, i.e. smallest code
        if fit[i] > best_fit:
            best_code, best_fit = int(codes[i]), float(fit[i])
    return code_to_configuration(best_code, landscape.n), best_fit


def local_optimum_mask(landscape: Landscape, fitness: np.ndarray | None = None) -> np.ndarray:
    _guard(landscape.n, MAX_LOCAL_OPTIMA_N)
    if fitness is None:
        fitness = all_fitness(landscape)
    codes = np.arange(fitness.size, dtype=np.int64)
    mask = np.ones(fitness.size, dtype=bool)
    for j in range(landscape.n):
        mask &= fitness >= fitness[codes ^ (1 << j)]
    return mask


def count_local_optima(landscape: Landscape) -> int:
    return int(local_optimum_mask(landscape).sum())


def oracle_report(landscape: Landscape) -> OracleReport:
    fitness = all_fitness(landscape)
    code = int(np.argmax(fitness))
    n_local = int(local_optimum_mask(landscape, fitness).sum()) \
        if landscape.n <= MAX_LOCAL_OPTIMA_N else None
    return OracleReport(code_to_configuration(code, landscape.n), float(fitness[code]), n_local)


def separable_optimum(landscape: Landscape) -> np.ndarray:
    """Per-node better bit; the global optimum when ``k == 0``."""
    m = landscape.fitness_matrix
    return (m[1] > m[0]).astype(np.uint8)
