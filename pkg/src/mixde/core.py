"""The main optimizer loop.

One run owns a population matrix, an archive of replaced parents, a
parameter-control state, and a single random stream.  Per iteration the
loop consumes the stream in a fixed order: parameter generation, per-target
index draws, crossover draws (forced indices, then the uniform matrix),
selection and archive truncation, parameter update.  That order plus the
seed derivation makes a run bit-reproducible.

Children are always compared against the pre-iteration parents, and a
child replaces its parent whenever it is no worse; equal objective values
replace, which lets the population drift across the plateaus induced by
rounding.
"""

from dataclasses import dataclass, field

import numpy as np

from . import mutation
from .control import PCM_IDS, make_pcm
from .mutation import STRATEGY_IDS, pbest_pool
from .problems import ProblemSpec
from .stream import RunStream, seed_material
from .variation import (LAMARCK, REPAIR_MODES, clamp_population,
                        crossover_population, round_population)


def iteration_budget(budget, mu):
    """Iteration count implied by an evaluation budget (initialization
    costs mu evaluations, each iteration costs mu)."""
    return -((budget - mu) // -mu) + 1


@dataclass
class RunConfig:
    """Configuration of one optimizer run.

    archive_size=None means "population size", the conventional setting.
    """

    strategy: str
    pcm: str
    repair: str
    mu: int = 100
    p: float = 0.05
    archive_size: int | None = None
    budget: int = 0
    seed: int = 1

    def archive_cap(self):
        return self.mu if self.archive_size is None else self.archive_size

    def validate(self, n):
        if self.strategy not in STRATEGY_IDS:
            raise ValueError(f"unknown strategy {self.strategy!r}; "
                             f"valid: {', '.join(STRATEGY_IDS)}")
        if self.pcm not in PCM_IDS:
            raise ValueError(f"unknown pcm {self.pcm!r}; valid: {', '.join(PCM_IDS)}")
        if self.repair not in REPAIR_MODES:
            raise ValueError(f"unknown repair mode {self.repair!r}; "
                             f"valid: {', '.join(REPAIR_MODES)}")
        if self.mu < 4:
            raise ValueError(f"population size must be >= 4, got {self.mu}")
        mutation.check_population_size(self.strategy, self.mu)
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must be in [0, 1], got {self.p}")
        if self.archive_cap() < 0:
            raise ValueError("archive size must be nonnegative")
        if self.budget < self.mu:
            raise ValueError(f"budget {self.budget} cannot cover initialization "
                             f"of {self.mu} individuals")
        if n < 1:
            raise ValueError(f"dimension must be positive, got {n}")


@dataclass
class RunLog:
    """Everything one run produced.

    trace holds (evaluation index, best-so-far error) rows, written only on
    improvement; diagnostics holds one row per iteration:
    (t, evals, div, nsame, mean_succ_s, mean_succ_c, pcm_snapshot).
    """

    function: str
    n: int
    instance: int
    strategy: str
    pcm: str
    repair: str
    mu: int
    seed: int
    budget: int
    trace: list = field(default_factory=list)
    diagnostics: list = field(default_factory=list)
    best_genome: np.ndarray | None = None
    best_objective: float = float("inf")
    evals: int = 0


class Observer:
    """Run callbacks; override what you need.

    on_evaluation fires once per objective evaluation, on_iteration once
    per iteration after selection, on_population right after on_iteration
    with the live population (read-only by convention).
    """

    def on_evaluation(self, eval_index, f_delta_best):
        pass

    def on_iteration(self, t, evals, div, nsame, mean_succ_s, mean_succ_c, pcm_snapshot):
        pass

    def on_population(self, t, genomes, objectives):
        pass


def diagnostics(genomes, objectives):
    """Population spread around the best individual.

    div is the mean distance of the others to the best (best excluded from
    the sum, denominator mu); nsame counts individuals sharing the best
    objective value, the best itself included.
    """
    best = int(np.argmin(objectives))
    d = genomes - genomes[best]
    dist = np.sqrt(np.einsum("ij,ij->i", d, d))
    div = float(dist.sum() / len(genomes))
    nsame = int(np.count_nonzero(objectives == objectives[best]))
    return div, nsame


def mean_successful_params(s, c, success):
    """Means of the successful pairs, or None for an all-failed iteration."""
    if len(s) != len(success) or len(c) != len(success):
        raise ValueError("pairs/mask length mismatch")
    success = np.asarray(success, dtype=bool)
    if not np.any(success):
        return None
    return float(np.mean(s[success])), float(np.mean(c[success]))


def select_and_archive(genomes, objectives, child_genomes, child_objectives,
                       archive, capacity, rng):
    """Pair-wise replacement with archive maintenance, in place.

    A child replaces its parent when no worse (<=).  Replaced parents are
    appended to the archive in target order, then uniformly chosen entries
    are deleted until the archive fits its capacity.
    """
    if len(child_objectives) != len(objectives):
        raise ValueError("population/children length mismatch")
    mask = child_objectives <= objectives
    for i in np.nonzero(mask)[0]:
        archive.append(np.array(genomes[i]))
    genomes[mask] = child_genomes[mask]
    objectives[mask] = child_objectives[mask]
    while len(archive) > capacity:
        del archive[rng.randint(len(archive))]
    return mask


def init_population(mu, lo, hi, int_mask, repair, rng, evaluate_rows):
    """Uniform initial population over the box, repaired and evaluated.

    Every coordinate (integer ones included) is drawn continuously; the
    repair policy decides what is stored.  evaluate_rows may evaluate fewer
    rows than requested when the budget runs out, in which case the
    returned arrays are truncated accordingly.
    """
    n = len(lo)
    genomes = lo + (hi - lo) * rng.uniforms(mu * n).reshape(mu, n)
    repaired = round_population(genomes, lo, hi, int_mask)
    if repair == LAMARCK:
        genomes = repaired
    objectives = evaluate_rows(repaired)
    m = len(objectives)
    return genomes[:m], np.array(objectives, dtype=float)


def _draw_iteration_indices(strategy, mu, pool, archive_len, rng):
    """Index draws for all targets of one iteration, target order i=0..mu-1."""
    n_plain = mutation._NEEDS[strategy][0]
    uses_pbest = mutation._NEEDS[strategy][2]
    uses_union = mutation._NEEDS[strategy][3]
    pb = np.zeros(mu, dtype=np.intp)
    r = np.zeros((n_plain, mu), dtype=np.intp)
    ru = np.zeros(mu, dtype=np.intp)
    for i in range(mu):
        pb_i, rs, ru_i = mutation.draw_indices(strategy, i, mu, pool, archive_len, rng)
        if uses_pbest:
            pb[i] = pb_i
        for j in range(n_plain):
            r[j, i] = rs[j]
        if uses_union:
            ru[i] = ru_i
    return pb, r, ru


def run(config: RunConfig, problem: ProblemSpec, observer: Observer | None = None) -> RunLog:
    """Execute one full optimizer run against a problem instance.

    Terminates exactly when the evaluation budget is spent; a final
    incomplete iteration evaluates children in target order until the
    budget hits zero and applies selection only to the evaluated ones.
    """
    config.validate(problem.n)
    mu, n = config.mu, problem.n
    lo, hi = problem.bounds()
    int_mask = problem.integer_mask
    lamarck = config.repair == LAMARCK

    rng = RunStream(seed_material(
        "run", problem.name, problem.n, problem.instance_seed,
        config.strategy, config.pcm, config.repair, config.mu, config.p,
        config.archive_cap(), config.budget, config.seed))

    log = RunLog(function=problem.name, n=n, instance=problem.instance_seed,
                 strategy=config.strategy, pcm=config.pcm, repair=config.repair,
                 mu=mu, seed=config.seed, budget=config.budget)

    best = float("inf")
    best_genome = None
    f_opt = problem.f_opt

    def evaluate_rows(rows):
        nonlocal best, best_genome
        m = min(len(rows), config.budget - log.evals)
        rows = rows[:m]
        values = problem.evaluate_many(rows) if m else np.empty(0)
        for j in range(m):
            log.evals += 1
            v = values[j]
            if v < best:
                best = v
                best_genome = np.array(rows[j])
                log.trace.append((log.evals, float(v - f_opt)))
            if observer is not None:
                observer.on_evaluation(log.evals, float(best - f_opt))
        return values

    genomes, objectives = init_population(mu, lo, hi, int_mask, config.repair,
                                          rng, evaluate_rows)
    if len(objectives) < mu:  # budget died during initialization
        log.best_genome, log.best_objective = best_genome, float(best)
        return log

    archive = []
    cap = config.archive_cap()
    pcm = make_pcm(config.pcm, mu, iteration_budget(config.budget, mu))
    uses_best = mutation._NEEDS[config.strategy][1]
    uses_pbest = mutation._NEEDS[config.strategy][2]
    uses_union = mutation._NEEDS[config.strategy][3]

    t = 0
    while log.evals < config.budget:
        t += 1
        s_arr, c_arr = pcm.generate(t, rng)

        best_id = int(np.argmin(objectives)) if uses_best else -1
        pool = pbest_pool(objectives, config.p) if uses_pbest else None
        archive_mat = (np.asarray(archive) if uses_union and archive else None)
        pb, r, ru = _draw_iteration_indices(config.strategy, mu, pool,
                                            len(archive), rng)

        mutants = mutation.combine(config.strategy, genomes, archive_mat,
                                   best_id, pb, r, ru, s_arr)
        mutants = clamp_population(mutants, genomes, lo, hi)
        children = crossover_population(genomes, mutants, c_arr, rng)
        repaired = round_population(children, lo, hi, int_mask)
        child_values = evaluate_rows(repaired)
        m = len(child_values)

        stored = repaired if lamarck else children
        mask = np.zeros(mu, dtype=bool)
        mask[:m] = select_and_archive(genomes[:m], objectives[:m], stored[:m],
                                      child_values, archive, cap, rng)
        pcm.update(s_arr, c_arr, mask, t, rng)

        div, nsame = diagnostics(genomes, objectives)
        succ = mean_successful_params(s_arr, c_arr, mask)
        ms, mc = succ if succ is not None else (None, None)
        log.diagnostics.append((t, log.evals, div, nsame, ms, mc, pcm.snapshot()))
        if observer is not None:
            observer.on_iteration(t, log.evals, div, nsame, ms, mc, pcm.snapshot())
            observer.on_population(t, genomes, objectives)

    log.best_genome, log.best_objective = best_genome, float(best)
    return log
