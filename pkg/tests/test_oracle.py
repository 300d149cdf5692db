import itertools

import numpy as np
import pytest

from nkictt.errors import CapacityError
from nkictt.landscape import Landscape, configuration_fitness, generate_landscape, make_rng
from nkictt.oracle import (all_fitness, count_local_optima, enumerate_global_optimum,
                           is_local_optimum, naive_fitness, oracle_report, separable_optimum)
from nkictt.search import count_improving_moves_global

from conftest import constant_landscape

# Frozen from the first exhaustive enumeration of generate_landscape(10, 2, 10).
GOLDEN_CONFIG = "1101101000"
GOLDEN_FITNESS = 0.7012774622745048


def test_golden_global_optimum():
    config, fitness = enumerate_global_optimum(generate_landscape(10, 2, 10))
    assert "".join(map(str, config)) == GOLDEN_CONFIG
    assert fitness == pytest.approx(GOLDEN_FITNESS, abs=1e-15)


def test_vectorised_enumeration_agrees_with_naive_path():
    land = generate_landscape(8, 3, 31)
    fit = all_fitness(land)
    for code, bits in enumerate(itertools.product((0, 1), repeat=8)):
        assert abs(fit[code] - naive_fitness(land, bits)) <= 1e-12
        assert abs(fit[code] - configuration_fitness(land, bits)) <= 1e-12


def test_k0_optimum_is_separable():
    land = generate_landscape(10, 0, 6)
    config, _ = enumerate_global_optimum(land)
    assert np.array_equal(config, separable_optimum(land))
    assert count_local_optima(land) == 1


def test_constant_matrix_ties():
    land = constant_landscape(6, 2)
    config, fitness = enumerate_global_optimum(land)
    assert not config.any()
    assert fitness == 0.5
    assert count_local_optima(land) == 2 ** 6
    assert is_local_optimum(land, [1, 0, 1, 0, 1, 1])


def test_global_optimum_is_local_optimum():
    land = generate_landscape(10, 5, 8)
    config, _ = enumerate_global_optimum(land)
    assert is_local_optimum(land, config)
    assert count_improving_moves_global(land, config) == 0


def test_improvable_config_is_not_local_optimum():
    land = generate_landscape(10, 2, 12)
    rng = make_rng(0)
    for _ in range(30):
        config = rng.integers(0, 2, 10)
        if count_improving_moves_global(land, config) > 0:
            assert not is_local_optimum(land, config)


def test_global_count_matches_oracle_neighbour_scan():
    land = generate_landscape(10, 2, 13)
    rng = make_rng(1)
    for _ in range(50):
        config = rng.integers(0, 2, 10)
        here = naive_fitness(land, config)
        expected = 0
        for p in range(10):
            nb = config.copy()
            nb[p] ^= 1
            expected += naive_fitness(land, nb) > here
        assert count_improving_moves_global(land, config) == expected


def test_local_optima_mask_matches_pointwise_check():
    land = generate_landscape(8, 4, 2)
    fit = all_fitness(land)
    n_opt = 0
    for code, bits in enumerate(itertools.product((0, 1), repeat=8)):
        n_opt += is_local_optimum(land, bits)
    assert count_local_optima(land) == n_opt
    assert oracle_report(land).num_local_optima == n_opt
    assert oracle_report(land).global_best_fitness == fit.max()


def test_ruggedness_grows_with_k():
    low = np.mean([count_local_optima(generate_landscape(12, 1, s)) for s in range(50)])
    high = np.mean([count_local_optima(generate_landscape(12, 10, s)) for s in range(50)])
    assert high > low


def test_capacity_guards():
    big = Landscape(25, 0, np.zeros((25, 0), dtype=np.int64), np.full((2, 25), 0.5))
    with pytest.raises(CapacityError):
        enumerate_global_optimum(big)
    mid = Landscape(21, 0, np.zeros((21, 0), dtype=np.int64), np.full((2, 21), 0.5))
    with pytest.raises(CapacityError):
        count_local_optima(mid)


def test_sixteen_nodes_enumerates_all_configurations():
    land = generate_landscape(16, 2, 3)
    assert all_fitness(land).size == 65_536
