"""NK fitness landscapes and three walkers: CS, PU and ICTT."""
from .errors import CapacityError, ParameterError
from .harness import (ALGORITHMS, ExperimentSpec, ReplicateRecord, SweepSummary, derive_seed,
                      run_moves_trace, run_replicate, run_sweep)
from .landscape import (Landscape, configuration_fitness, contribution_row_index,
                        fitness_after_flip, generate_landscape, make_rng, node_contribution,
                        subunit_contribution_sum)
from .oracle import (OracleReport, count_local_optima, enumerate_global_optimum,
                     is_local_optimum)
from .search import (Partition, PuParams, SearchOutcome, count_improving_moves_global,
                     count_improving_moves_subunit, hamming_distance, make_partition,
                     random_configuration, run_cs, run_ictt, run_pu)

__version__ = "0.1.0"
