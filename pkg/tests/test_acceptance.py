"""Exit criteria, run at desk scale.

N=20, 1000 replicates per K on the grid {2,3,5,7,11,15,19}, T=1000,
tau=0.33 with 500 generations, 4 and 6 sub-units, fixed master seed.
Takes several minutes on one core; most of it is drawing K=19 matrices.
"""
import numpy as np
import pytest

from nkictt import io
from nkictt.cli import main
from nkictt.harness import ExperimentSpec, derive_seed, moves_trace_matrix, summarize
from nkictt.landscape import (configuration_fitness, fitness_after_flip, generate_landscape,
                              make_rng)
from nkictt.oracle import (all_fitness, enumerate_global_optimum, is_local_optimum,
                           naive_fitness, separable_optimum)
from nkictt.search import (PuParams, make_partition, random_configuration, run_cs, run_ictt,
                           run_pu)

from conftest import ACCEPTANCE_LINES

SEED = 2021
K_GRID = (2, 3, 5, 7, 11, 15, 19)
ITERS = 1000
SWEEP_FLAGS = ["sweep", "--n", "20", "--k", ",".join(map(str, K_GRID)), "--iters", str(ITERS),
               "--steps", "1000", "--tau", "0.33", "--generations", "500",
               "--subunits", "4,6", "--seed", str(SEED), "--records"]


def report(name, ok, detail):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    assert ok, detail


@pytest.fixture(scope="module")
def sweep_dirs(tmp_path_factory):
    base = tmp_path_factory.mktemp("desk")
    for workers in (1, 8):
        out = base / f"w{workers}"
        assert main(SWEEP_FLAGS + ["--workers", str(workers), "--out", str(out)]) == 0
    return base / "w1", base / "w8"


@pytest.fixture(scope="module")
def records(sweep_dirs):
    return io.read_records(sweep_dirs[0] / "records.csv")


@pytest.fixture(scope="module")
def summary(records):
    return summarize(records)


def fitness_by(records, algorithm, k, field="best_fitness"):
    recs = sorted((r for r in records if r.algorithm == algorithm and r.k == k),
                  key=lambda r: r.replicate_index)
    return np.array([getattr(r, field) for r in recs], dtype=float)


def decline(summary, algorithm):
    f3 = summary.row(algorithm, 3).mean_fitness
    f19 = summary.row(algorithm, 19).mean_fitness
    return (f3 - f19) / f3


@pytest.mark.parametrize("algorithm", ["CS", "PU"])
def test_c1_complexity_catastrophe(summary, algorithm):
    d = decline(summary, algorithm)
    report(f"C1 {algorithm} decline K=3->19", 0.05 <= d <= 0.11, f"{d:.4%} (want 5%..11%)")


@pytest.mark.parametrize("algorithm", ["ICTT1", "ICTT1_ALT"])
def test_c2_ictt_resilience(summary, algorithm):
    d = decline(summary, algorithm)
    cs = decline(summary, "CS")
    report(f"C2 {algorithm} decline K=3->19", d <= 0.03 and d < cs / 2,
           f"{d:.4%} (want <=3% and < half of CS {cs:.4%})")


def paired_z(records, a, b, k, field):
    diff = fitness_by(records, a, k, field) - fitness_by(records, b, k, field)
    se = diff.std(ddof=1) / np.sqrt(diff.size)
    return diff.mean(), se


@pytest.mark.parametrize("k", [7, 11, 15, 19])
@pytest.mark.parametrize("baseline", ["CS", "PU"])
def test_c3_crossover_high_k(records, k, baseline):
    mean, se = paired_z(records, "ICTT1", baseline, k, "best_fitness")
    report(f"C3 ICTT1 > {baseline} fitness at K={k}", mean > 3 * se,
           f"diff {mean:.5f}, {mean / se:.1f} SE (want > 3)")


def test_c3_cs_wins_at_k2(summary):
    cs, ictt = summary.row("CS", 2).mean_fitness, summary.row("ICTT1", 2).mean_fitness
    report("C3 CS > ICTT1 fitness at K=2", cs > ictt, f"CS {cs:.5f} vs ICTT1 {ictt:.5f}")


@pytest.mark.parametrize("k", [7, 11, 15, 19])
@pytest.mark.parametrize("baseline", ["CS", "PU"])
def test_c4_far_reaching(records, k, baseline):
    mean, se = paired_z(records, "ICTT1", baseline, k, "hamming")
    report(f"C4 ICTT1 > {baseline} hamming at K={k}", mean > 3 * se,
           f"diff {mean:.3f}, {mean / se:.1f} SE (want > 3)")


def test_c5_moves_available():
    spec = ExperimentSpec(n=20, k_values=(2, 19), iterations=ITERS, master_seed=SEED)
    low = moves_trace_matrix(spec, 2, 100)[:, -1]
    high = moves_trace_matrix(spec, 19, 100)[:, -1]
    z_low, z_high = np.mean(low == 0), np.mean(high == 0)
    ok = z_low > 0.5 and z_high < 0.5 and high.mean() > low.mean()
    report("C5 moves available at step 100", ok,
           f"zero fraction K=2 {z_low:.3f} (>0.5), K=19 {z_high:.3f} (<0.5); "
           f"mean K=2 {low.mean():.3f} < K=19 {high.mean():.3f}")


def test_c6_oracle_equivalence():
    worst = 0.0
    cs_checked = 0
    exceed = 0
    separable_ok = True
    for k in (0, 2, 5, 9):
        for i in range(100):
            land = generate_landscape(10, k, derive_seed(SEED, "oracle", k, i))
            fit = all_fitness(land)
            codes = np.arange(1024)
            bits = ((codes[:, None] >> np.arange(9, -1, -1)) & 1).astype(np.uint8)
            for code in codes:
                fast = configuration_fitness(land, bits[code])
                worst = max(worst, abs(fast - naive_fitness(land, bits[code])),
                            abs(fast - fit[code]))
            optimum, best = enumerate_global_optimum(land)
            rng = make_rng(derive_seed(SEED, "oracle-walk", k, i))
            init = random_configuration(10, rng)
            cs = run_cs(land, init, 1000, rng)
            if cs.terminated_early:
                cs_checked += 1
                assert is_local_optimum(land, cs.best)
            walks = (cs, run_pu(land, init, PuParams(0.33, 500), rng),
                     run_ictt(land, make_partition(10, 4, rng), init, 1000, rng),
                     run_ictt(land, make_partition(10, 6, rng), init, 1000, rng))
            exceed += sum(w.best_fitness > best for w in walks)
            if k == 0:
                separable_ok &= bool(np.array_equal(optimum, separable_optimum(land)))
    ok = worst <= 1e-12 and exceed == 0 and separable_ok and cs_checked > 0
    report("C6 oracle equivalence", ok,
           f"max |fast - naive| {worst:.2e}; {cs_checked} CS runs at local optima; "
           f"{exceed} walkers above optimum; K=0 separable {separable_ok}")


def test_c7_incremental_evaluation():
    worst = 0.0
    total = 0
    for k, count in ((0, 3334), (7, 3333), (19, 3333)):
        for i in range(count):
            if i % 200 == 0:
                land = generate_landscape(20, k, derive_seed(SEED, "flip", k, i))
                rng = make_rng(derive_seed(SEED, "flip-config", k, i))
            config = random_configuration(20, rng)
            p = int(rng.integers(0, 20))
            flipped = config.copy()
            flipped[p] ^= 1
            worst = max(worst, abs(fitness_after_flip(land, config, p) - naive_fitness(land, flipped)))
            total += 1
    report("C7 incremental evaluation", worst <= 1e-12 and total == 10_000,
           f"{total} triples, max error {worst:.2e} (want <= 1e-12)")


def test_c8_reproducibility(sweep_dirs):
    one, eight = sweep_dirs
    same = (one / "records.csv").read_bytes() == (eight / "records.csv").read_bytes()
    same_summary = (one / "summary.csv").read_bytes() == (eight / "summary.csv").read_bytes()
    report("C8 records identical for workers=1 and workers=8", same and same_summary,
           f"records identical {same}, summary identical {same_summary}")
