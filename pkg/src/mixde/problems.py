"""Mixed-integer test problems on the five-block box domain.

Each problem is a shifted kernel ``f(x) = g(x - x_opt)`` with ``g(0) = 0``,
so the optimal value is exactly 0 and error targets ``f_opt + delta`` are
exact.  The integer/continuous split is fixed: four blocks of integer
variables with growing ranges, one block of continuous variables.
"""

from dataclasses import dataclass, field

import numpy as np

from .stream import seed_material

INTEGER = "integer"
CONTINUOUS = "continuous"


class FeasibilityError(ValueError):
    """Raised when a genome violates integrality or box bounds."""


@dataclass(frozen=True)
class VariableDomain:
    """One decision variable: integer or continuous, with inclusive bounds."""

    kind: str
    lo: float
    hi: float

    def __post_init__(self):
        if self.kind not in (INTEGER, CONTINUOUS):
            raise ValueError(f"unknown domain kind: {self.kind!r}")
        if not self.lo < self.hi:
            raise ValueError(f"empty domain: lo={self.lo}, hi={self.hi}")
        if self.kind == INTEGER and (self.lo != int(self.lo) or self.hi != int(self.hi)):
            raise ValueError("integer domain bounds must be integral")


def make_domain_layout(n):
    """Five equal blocks: Int[0,1], Int[0,3], Int[0,7], Int[0,15], Cont[-5,5].

    n must be a positive multiple of 5.
    """
    if n < 5 or n % 5 != 0:
        raise ValueError(f"dimension must be a positive multiple of 5, got {n}")
    block = n // 5
    domains = []
    for hi in (1, 3, 7, 15):
        domains.extend(VariableDomain(INTEGER, 0, hi) for _ in range(block))
    domains.extend(VariableDomain(CONTINUOUS, -5.0, 5.0) for _ in range(block))
    return domains


def domain_arrays(domains):
    """Bounds and integer mask as arrays, for vectorized variable handling."""
    lo = np.array([d.lo for d in domains], dtype=float)
    hi = np.array([d.hi for d in domains], dtype=float)
    int_mask = np.array([d.kind == INTEGER for d in domains], dtype=bool)
    return lo, hi, int_mask


def _sphere(z):
    return np.sum(z * z, axis=-1)


def _ellipsoid(z):
    n = z.shape[-1]
    coeff = 10.0 ** (6.0 * np.arange(n) / (n - 1))
    return np.sum(coeff * z * z, axis=-1)


def _rastrigin(z):
    # ill-conditioned variant: without the coordinate scaling, adaptive
    # parameter control sees no conflicting signal and the function loses
    # the plateau-trap character the diagnostics are meant to expose
    n = z.shape[-1]
    w = z * 10.0 ** (0.5 * np.arange(n) / (n - 1))
    return 10.0 * n + np.sum(w * w - 10.0 * np.cos(2.0 * np.pi * w), axis=-1)


def _rosenbrock(z):
    w = z + 1.0
    a = w[..., :-1]
    b = w[..., 1:]
    return np.sum(100.0 * (a * a - b) ** 2 + (a - 1.0) ** 2, axis=-1)


def _step_ellipsoid(y):
    n = y.shape[-1]
    coeff = 10.0 ** (2.0 * np.arange(n) / (n - 1))
    stepped = np.floor(0.5 + y)
    quad = np.sum(coeff * stepped * stepped, axis=-1)
    return 0.1 * np.maximum(np.abs(y[..., 0]) / 1e4, quad)


# name -> (kernel over the shifted point, needs rotation)
_KERNELS = {
    "sphere": (_sphere, False),
    "ellipsoid-sep": (_ellipsoid, False),
    "rastrigin-sep": (_rastrigin, False),
    "rosenbrock": (_rosenbrock, False),
    "rastrigin-rot": (_rastrigin, True),
    "step-ellipsoid": (_step_ellipsoid, True),
}

FUNCTION_IDS = tuple(_KERNELS)


@dataclass(frozen=True)
class ProblemSpec:
    """Immutable problem instance: domain, shifted kernel, known optimum.

    Attributes
    ----------
    name : str
        Kernel identifier, one of FUNCTION_IDS.
    n : int
        Dimension (multiple of 5).
    domains : tuple of VariableDomain
        The five-block layout for n.
    instance_seed : int
        Seed that determined x_opt (and the rotation, where used).
    x_opt : ndarray
        Feasible optimal genome; f(x_opt) = f_opt.
    f_opt : float
        Optimal value, 0.0 by construction.
    """

    name: str
    n: int
    domains: tuple
    instance_seed: int
    x_opt: np.ndarray = field(repr=False)
    f_opt: float
    _kernel: object = field(repr=False)
    _rotation: object = field(repr=False)
    _lo: np.ndarray = field(repr=False)
    _hi: np.ndarray = field(repr=False)
    _int_mask: np.ndarray = field(repr=False)

    def bounds(self):
        return self._lo, self._hi

    @property
    def integer_mask(self):
        return self._int_mask

    def _check_feasible(self, genomes):
        if genomes.shape[-1] != self.n:
            raise ValueError(f"genome length {genomes.shape[-1]} != dimension {self.n}")
        if np.any(genomes < self._lo) or np.any(genomes > self._hi):
            raise FeasibilityError("genome outside box bounds")
        ints = genomes[..., self._int_mask]
        if np.any(ints != np.floor(ints)):
            raise FeasibilityError("non-integral value in integer coordinate")

    def evaluate(self, genome):
        """Objective value of one feasible genome.

        Pure and deterministic; infeasible input raises FeasibilityError.
        """
        genome = np.asarray(genome, dtype=float)
        self._check_feasible(genome)
        return float(self._apply(genome))

    def evaluate_many(self, genomes):
        """Objective values of feasible genomes, one per row."""
        genomes = np.asarray(genomes, dtype=float)
        self._check_feasible(genomes)
        return self._apply(genomes)

    def _apply(self, genomes):
        z = genomes - self.x_opt
        if self._rotation is not None:
            z = z @ self._rotation.T
        return self._kernel(z)


def _random_rotation(n, rng):
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))


def make_problem(kind, n, instance_seed):
    """Build the deterministic problem instance for (kind, n, instance_seed).

    The optimum is drawn uniformly from the feasible set; kernels are
    evaluated on the shifted point, so f_opt = 0 for every instance.
    """
    if kind not in _KERNELS:
        raise ValueError(f"unknown function {kind!r}; valid: {', '.join(FUNCTION_IDS)}")
    domains = tuple(make_domain_layout(n))
    lo, hi, int_mask = domain_arrays(domains)
    rng = np.random.Generator(np.random.PCG64(
        np.random.SeedSequence(seed_material("problem", kind, n, int(instance_seed)))))
    x_opt = np.empty(n)
    x_opt[int_mask] = rng.integers(lo[int_mask].astype(int), hi[int_mask].astype(int) + 1)
    x_opt[~int_mask] = rng.uniform(lo[~int_mask], hi[~int_mask])
    x_opt.setflags(write=False)
    kernel, rotated = _KERNELS[kind]
    rotation = _random_rotation(n, rng) if rotated else None
    return ProblemSpec(
        name=kind, n=n, domains=domains, instance_seed=int(instance_seed),
        x_opt=x_opt, f_opt=0.0, _kernel=kernel, _rotation=rotation,
        _lo=lo, _hi=hi, _int_mask=int_mask,
    )
