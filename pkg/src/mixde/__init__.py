"""Component-wise differential evolution for mixed-integer black-box
optimization: pluggable mutation strategies, repair policies, and
parameter-control methods, plus a benchmarking harness."""

from .control import PCM_IDS, lehmer_mean, make_pcm
from .core import (Observer, RunConfig, RunLog, diagnostics, init_population,
                   iteration_budget, mean_successful_params, run,
                   select_and_archive)
from .estimator import DifferentialEvolution
from .harness import (aggregate_logs, best_config_table, execute_run,
                      read_diagnostics, read_ecdf, read_runlog, sweep,
                      write_diagnostics, write_ecdf, write_runlog)
from .metrics import EcdfCurve, ecdf, make_eval_grid, make_targets
from .mutation import (STRATEGY_IDS, distinct_indices, mutate, pbest_pool,
                       select_pbest)
from .problems import (CONTINUOUS, FUNCTION_IDS, INTEGER, FeasibilityError,
                       ProblemSpec, VariableDomain, make_domain_layout,
                       make_problem)
from .stream import RunStream, seed_material
from .variation import (BALDWIN, LAMARCK, REPAIR_MODES, apply_repair,
                        binomial_crossover, clamp_to_bounds, repair_round)

__version__ = "0.1.0"
