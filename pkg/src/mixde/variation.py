"""Binomial crossover, bound handling, and rounding repair.

Scalar operations work on one genome and are the reference semantics; the
``*_population`` variants apply the same rule to a whole population matrix
at once and are what the optimizer loop uses.
"""

import numpy as np

from .problems import domain_arrays

BALDWIN = "baldwin"
LAMARCK = "lamarck"
REPAIR_MODES = (BALDWIN, LAMARCK)


def binomial_crossover(parent, mutant, c, rng):
    """Mix mutant into parent coordinate-wise with rate c.

    One index (drawn first) always comes from the mutant, so the child
    differs from the parent even at c = 0.  The n per-coordinate uniforms
    are consumed in index order.
    """
    parent = np.asarray(parent, dtype=float)
    mutant = np.asarray(mutant, dtype=float)
    if parent.shape != mutant.shape:
        raise ValueError(f"shape mismatch: {parent.shape} vs {mutant.shape}")
    n = parent.shape[0]
    j_rand = rng.randint(n)
    take = rng.uniforms(n) <= c
    take[j_rand] = True
    return np.where(take, mutant, parent)


def crossover_population(parents, mutants, c, rng):
    """Binomial crossover for all rows at once.

    Draw order: one forced-index draw per row, then the uniform matrix
    row-major.
    """
    mu, n = parents.shape
    j_rand = (rng.uniforms(mu) * n).astype(np.intp)
    take = rng.uniforms(mu * n).reshape(mu, n) <= c[:, None]
    take[np.arange(mu), j_rand] = True
    return np.where(take, mutants, parents)


def clamp_to_bounds(mutant, base, domains):
    """Move out-of-bounds coordinates to the midpoint of bound and base."""
    lo, hi, _ = domain_arrays(domains)
    return clamp_population(np.asarray(mutant, dtype=float)[None, :],
                            np.asarray(base, dtype=float)[None, :], lo, hi)[0]


def clamp_population(mutants, bases, lo, hi):
    out = np.where(mutants < lo, 0.5 * (lo + bases), mutants)
    return np.where(out > hi, 0.5 * (hi + bases), out)


def repair_round(genome, domains):
    """Round integer coordinates to the nearest integer (ties away from
    zero), clamped into bounds; continuous coordinates pass through."""
    lo, hi, int_mask = domain_arrays(domains)
    return round_population(np.asarray(genome, dtype=float)[None, :], lo, hi, int_mask)[0]


def round_population(genomes, lo, hi, int_mask):
    out = np.array(genomes, dtype=float)
    z = out[..., int_mask]
    rounded = np.floor(np.abs(z) + 0.5) * np.sign(z)
    out[..., int_mask] = np.clip(rounded, lo[int_mask], hi[int_mask])
    return out


def apply_repair(mode, genome, domains, evaluator):
    """Evaluate the rounded genome once; keep it only under Lamarckian repair.

    Returns (objective, stored_genome).  Baldwinian mode stores the raw
    genome and uses the rounded one solely for evaluation.
    """
    if mode not in REPAIR_MODES:
        raise ValueError(f"unknown repair mode {mode!r}; valid: {', '.join(REPAIR_MODES)}")
    genome = np.asarray(genome, dtype=float)
    repaired = repair_round(genome, domains)
    objective = evaluator(repaired)
    stored = repaired if mode == LAMARCK else genome.copy()
    return objective, stored
