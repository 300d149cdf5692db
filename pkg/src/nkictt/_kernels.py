"""Compiled inner loops shared by the landscape and the walkers.

All kernels take the raw landscape arrays (fitness matrix, dependency rows,
reverse-dependency CSR) and a uint8 bit vector. Node indices are 0-based and
matrix rows are 0-based here.
"""
from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def row_index(deps, bits, p):
    k = deps.shape[1]
    r = np.int64(bits[p]) << k
    for j in range(k):
        r |= np.int64(bits[deps[p, j]]) << (k - 1 - j)
    return r


@njit(cache=True)
def contribution(matrix, deps, bits, p):
    return matrix[row_index(deps, bits, p), p]


@njit(cache=True)
def all_contributions(matrix, deps, bits):
    n = bits.shape[0]
    out = np.empty(n)
    for p in range(n):
        out[p] = matrix[row_index(deps, bits, p), p]
    return out


@njit(cache=True)
def mean(values):
    # Fixed left-to-right order so every caller gets bit-identical fitness.
    total = 0.0
    for v in values:
        total += v
    return total / values.shape[0]


@njit(cache=True)
def fitness(matrix, deps, bits):
    return mean(all_contributions(matrix, deps, bits))


@njit(cache=True)
def flip_delta(matrix, deps, rptr, ridx, bits, contrib, p, group, exclusive):
    """Change in the summed contributions of ``p``'s group if ``p`` flips.

    Only nodes whose group id equals ``group[p]`` count; ``exclusive`` drops
    ``p`` itself from the sum. ``bits`` is restored before returning.
    """
    g = group[p]
    bits[p] ^= 1
    delta = 0.0
    for i in range(rptr[p], rptr[p + 1]):
        q = ridx[i]
        if group[q] != g or (exclusive and q == p):
            continue
        delta += matrix[row_index(deps, bits, q), q] - contrib[q]
    bits[p] ^= 1
    return delta


@njit(cache=True)
def apply_flip(matrix, deps, rptr, ridx, bits, contrib, p):
    bits[p] ^= 1
    for i in range(rptr[p], rptr[p + 1]):
        q = ridx[i]
        contrib[q] = matrix[row_index(deps, bits, q), q]


@njit(cache=True)
def count_improving(matrix, deps, rptr, ridx, bits, contrib, group, exclusive):
    n = bits.shape[0]
    c = 0
    for p in range(n):
        if flip_delta(matrix, deps, rptr, ridx, bits, contrib, p, group, exclusive) > 0.0:
            c += 1
    return c


@njit(cache=True)
def single_flip_walk(matrix, deps, rptr, ridx, init, draws, group, exclusive, untried):
    """One-node-per-step walk with group-local acceptance.

    With a single group spanning every node this is plain hill climbing on
    overall fitness. The committed configuration tracks the best overall
    fitness visited; the walk itself may move downhill overall.

    ``draws`` holds one uniform [0, 1) number per step. With ``untried`` the
    node is drawn from those not attempted since the last kept flip;
    otherwise every step draws from all nodes.
    """
    n = init.shape[0]
    max_steps = draws.shape[0]
    bits = init.copy()
    contrib = all_contributions(matrix, deps, bits)
    fitness = mean(contrib)
    best = bits.copy()
    best_fitness = fitness
    fitness_trace = np.empty(max_steps)
    moves_trace = np.empty(max_steps, dtype=np.int64)
    accepted = np.zeros(max_steps, dtype=np.bool_)
    chosen = np.empty(max_steps, dtype=np.int64)
    pool = np.arange(n)
    pool_size = n
    steps = 0
    terminated = False
    if count_improving(matrix, deps, rptr, ridx, bits, contrib, group, exclusive) == 0:
        terminated = True
    else:
        for t in range(max_steps):
            if untried:
                if pool_size == 0:
                    pool_size = n
                i = int(draws[t] * pool_size)
                p = pool[i]
            else:
                p = int(draws[t] * n)
            chosen[t] = p
            if flip_delta(matrix, deps, rptr, ridx, bits, contrib, p, group, exclusive) > 0.0:
                apply_flip(matrix, deps, rptr, ridx, bits, contrib, p)
                accepted[t] = True
                pool_size = n
                fitness = mean(contrib)
                if fitness > best_fitness:
                    best_fitness = fitness
                    best[:] = bits
            elif untried:
                pool_size -= 1
                pool[i] = pool[pool_size]
                pool[pool_size] = p
            fitness_trace[t] = fitness
            moves = count_improving(matrix, deps, rptr, ridx, bits, contrib, group, exclusive)
            moves_trace[t] = moves
            steps = t + 1
            if moves == 0:
                terminated = True
                break
    return (bits, best, best_fitness, fitness_trace[:steps], moves_trace[:steps],
            accepted[:steps], chosen[:steps], steps, terminated)


@njit(cache=True)
def parallel_walk(matrix, deps, rptr, ridx, init, draws, tau):
    """Generation-synchronous updating filtered by solo-flip improvement."""
    n = init.shape[0]
    generations = draws.shape[0]
    group = np.zeros(n, dtype=np.int64)
    bits = init.copy()
    contrib = all_contributions(matrix, deps, bits)
    fitness = mean(contrib)
    best = bits.copy()
    best_fitness = fitness
    fitness_trace = np.empty(generations)
    moves_trace = np.empty(generations, dtype=np.int64)
    flipped = np.zeros((generations, n), dtype=np.bool_)
    steps = 0
    terminated = False
    if count_improving(matrix, deps, rptr, ridx, bits, contrib, group, False) == 0:
        terminated = True
    else:
        for t in range(generations):
            for p in range(n):
                if draws[t, p] < tau:
                    if flip_delta(matrix, deps, rptr, ridx, bits, contrib, p, group, False) > 0.0:
                        flipped[t, p] = True
            for p in range(n):
                if flipped[t, p]:
                    bits[p] ^= 1
            contrib = all_contributions(matrix, deps, bits)
            fitness = mean(contrib)
            if fitness > best_fitness:
                best_fitness = fitness
                best[:] = bits
            fitness_trace[t] = fitness
            moves = count_improving(matrix, deps, rptr, ridx, bits, contrib, group, False)
            moves_trace[t] = moves
            steps = t + 1
            if moves == 0:
                terminated = True
                break
    return (bits, best, best_fitness, fitness_trace[:steps], moves_trace[:steps],
            flipped[:steps], steps, terminated)
