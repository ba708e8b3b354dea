"""Estimator-style front end for the optimizer.

Thin scikit-learn-compatible surface: configuration lives in ``__init__``
(verbatim, so ``get_params``/``set_params``/``clone`` work), validation
happens in ``fit``, results land in trailing-underscore attributes.
"""

from sklearn.base import BaseEstimator

from .core import RunConfig, run


class DifferentialEvolution(BaseEstimator):
    """Differential evolution for mixed-integer box-constrained problems.

    Parameters
    ----------
    strategy : str
        Mutation strategy id (rand1, rand2, best1, best2, ctr1, ctb1,
        ctp1, rtp1).
    pcm : str
        Parameter control method id (nopcm, p-co, p-sin, p-cars, p-j,
        p-ja, p-sha, p-eps, p-cobi, p-c).
    repair : str
        Integer repair policy, "baldwin" or "lamarck".
    mu : int
        Population size.
    p : float
        Greediness of the p-best strategies.
    archive_size : int or None
        External archive capacity; None means mu.
    budget_mult : int
        Evaluation budget per dimension (budget = budget_mult * n).
    seed : int
        Master seed; identical configurations reproduce bit-identically.

    Attributes
    ----------
    result_ : RunLog
        Full run record (trace, diagnostics, counts).
    best_genome_ : ndarray
        Best feasible solution found.
    best_objective_ : float
        Its objective value.
    n_evaluations_ : int
        Objective evaluations consumed.
    """

    def __init__(self, strategy="rand1", pcm="nopcm", repair="baldwin",
                 mu=100, p=0.05, archive_size=None, budget_mult=10000, seed=1):
        self.strategy = strategy
        self.pcm = pcm
        self.repair = repair
        self.mu = mu
        self.p = p
        self.archive_size = archive_size
        self.budget_mult = budget_mult
        self.seed = seed

    def _config(self, n):
        return RunConfig(strategy=self.strategy, pcm=self.pcm, repair=self.repair,
                         mu=self.mu, p=self.p, archive_size=self.archive_size,
                         budget=self.budget_mult * n, seed=self.seed)

    def fit(self, problem, observer=None):
        """Optimize one ProblemSpec under the configured budget."""
        config = self._config(problem.n)
        config.validate(problem.n)
        self.result_ = run(config, problem, observer)
        self.best_genome_ = self.result_.best_genome
        self.best_objective_ = self.result_.best_objective
        self.n_evaluations_ = self.result_.evals
        return self

    optimize = fit
