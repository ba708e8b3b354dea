"""Differential mutation strategies.

Eight strategies behind one interface.  Index sampling and the vector
formula are separated: the sampler draws per-target index tuples from the
run's stream (sequential rejection), and the formula is applied to whole
index arrays at once so the optimizer can build all mutants of an
iteration in a few array operations.
"""

import numpy as np

STRATEGY_IDS = ("rand1", "rand2", "best1", "best2", "ctr1", "ctb1", "ctp1", "rtp1")

# plain r-index count, uses x_best, uses p-best, uses population/archive union
_NEEDS = {
    "rand1": (3, False, False, False),
    "rand2": (5, False, False, False),
    "best1": (2, True, False, False),
    "best2": (4, True, False, False),
    "ctr1": (3, False, False, False),
    "ctb1": (2, True, False, False),
    "ctp1": (1, False, True, True),
    "rtp1": (2, False, True, True),
}

# smallest population for which every index draw has an admissible outcome
# (worst case: empty archive, p-best distinct from the target)
MIN_POPULATION = {
    "rand1": 4, "rand2": 6, "best1": 3, "best2": 5,
    "ctr1": 4, "ctb1": 3, "ctp1": 4, "rtp1": 5,
}


def check_population_size(strategy, mu):
    if strategy not in _NEEDS:
        raise ValueError(f"unknown strategy {strategy!r}; valid: {', '.join(STRATEGY_IDS)}")
    if mu < MIN_POPULATION[strategy]:
        raise ValueError(f"population too small for {strategy}: "
                         f"mu={mu} < {MIN_POPULATION[strategy]}")


def pbest_pool(objectives, p):
    """Indices of the top max(floor(p*mu), 2) individuals, best first.

    Ranking ties keep original index order.
    """
    mu = len(objectives)
    if mu < 2:
        raise ValueError(f"population too small for p-best selection: mu={mu}")
    k = max(int(np.floor(p * mu)), 2)
    return np.argsort(objectives, kind="stable")[:k]


def select_pbest(objectives, p, rng):
    """Uniform draw from the p-best pool."""
    pool = pbest_pool(np.asarray(objectives, dtype=float), p)
    return int(pool[rng.randint(len(pool))])


def distinct_indices(exclude, k, m, rng):
    """k pairwise-distinct indices from {0..m-1} avoiding ``exclude``.

    Sequential rejection sampling: each candidate consumes one draw.
    """
    if m - len(set(exclude)) < k:
        raise ValueError(f"cannot draw {k} distinct indices from pool of {m} "
                         f"excluding {len(set(exclude))}")
    drawn = []
    for _ in range(k):
        r = rng.randint(m)
        while r in exclude or r in drawn:
            r = rng.randint(m)
        drawn.append(r)
    return drawn


def draw_indices(strategy, i, mu, pool, archive_len, rng):
    """All index draws for one target, in a fixed order.

    Order: p-best draw (where used), plain indices, union draw.  The p-best
    pick, plain indices, and the union pick are kept pairwise distinct; no
    draw ever lands on the target itself.  Union indices >= mu address the
    archive.
    """
    n_plain, _, uses_pbest, uses_union = _NEEDS[strategy]
    pb = -1
    exclude = (i,)
    if uses_pbest:
        pb = int(pool[rng.randint(len(pool))])
        if pb != i:
            exclude = (i, pb)
    rs = distinct_indices(exclude, n_plain, mu, rng)
    ru = -1
    if uses_union:
        taboo = frozenset(exclude + tuple(rs))
        total = mu + archive_len
        if total - len(taboo) < 1:
            raise ValueError(f"population too small for the union draw of {strategy}")
        ru = rng.randint(total)
        while ru in taboo:
            ru = rng.randint(total)
    return pb, rs, ru


def combine(strategy, genomes, archive, best_id, pb, r, ru, s):
    """Mutant rows from index arrays; s broadcasts per row.

    ``r`` is a (k, rows) index array, ``pb``/``ru`` are (rows,) arrays
    where the strategy uses them, and ``archive`` backs union indices
    >= len(genomes).
    """
    X = genomes
    s = np.asarray(s, dtype=float)[:, None]
    if strategy == "rand1":
        return X[r[0]] + s * (X[r[1]] - X[r[2]])
    if strategy == "rand2":
        return X[r[0]] + s * (X[r[1]] - X[r[2]]) + s * (X[r[3]] - X[r[4]])
    if strategy == "best1":
        return X[best_id] + s * (X[r[0]] - X[r[1]])
    if strategy == "best2":
        return X[best_id] + s * (X[r[0]] - X[r[1]]) + s * (X[r[2]] - X[r[3]])
    if strategy == "ctr1":
        return X + s * (X[r[0]] - X) + s * (X[r[1]] - X[r[2]])
    if strategy == "ctb1":
        return X + s * (X[best_id] - X) + s * (X[r[0]] - X[r[1]])
    if strategy == "ctp1":
        tilde = _gather_union(X, archive, ru)
        return X + s * (X[pb] - X) + s * (X[r[0]] - tilde)
    if strategy == "rtp1":
        tilde = _gather_union(X, archive, ru)
        return X[r[0]] + s * (X[pb] - X[r[0]]) + s * (X[r[1]] - tilde)
    raise ValueError(f"unknown strategy {strategy!r}; valid: {', '.join(STRATEGY_IDS)}")


def _gather_union(genomes, archive, ru):
    mu = genomes.shape[0]
    ru = np.asarray(ru)
    out = np.empty((len(ru), genomes.shape[1]))
    in_pop = ru < mu
    out[in_pop] = genomes[ru[in_pop]]
    if not np.all(in_pop):
        out[~in_pop] = archive[ru[~in_pop] - mu]
    return out


def mutate(strategy, i, genomes, objectives, archive, s, p, rng):
    """Mutant vector for target i.

    Reference single-target path: draws indices, then applies the strategy
    formula.  ``archive`` is a matrix of archived genomes (may be empty).
    """
    genomes = np.asarray(genomes, dtype=float)
    mu = genomes.shape[0]
    check_population_size(strategy, mu)
    objectives = np.asarray(objectives, dtype=float)
    archive = np.asarray(archive, dtype=float) if archive is not None and len(archive) else None
    archive_len = 0 if archive is None else archive.shape[0]
    _, uses_best, uses_pbest, _ = _NEEDS[strategy]
    best_id = int(np.argmin(objectives)) if uses_best else -1
    pool = pbest_pool(objectives, p) if uses_pbest else None
    pb, rs, ru = draw_indices(strategy, i, mu, pool, archive_len, rng)
    return _combine_single(strategy, genomes, archive, best_id, i, pb, rs, ru, s)


def _combine_single(strategy, X, archive, best_id, i, pb, rs, ru, s):
    def row(j):
        return X[j] if j < X.shape[0] else archive[j - X.shape[0]]

    if strategy == "rand1":
        return X[rs[0]] + s * (X[rs[1]] - X[rs[2]])
    if strategy == "rand2":
        return X[rs[0]] + s * (X[rs[1]] - X[rs[2]]) + s * (X[rs[3]] - X[rs[4]])
    if strategy == "best1":
        return X[best_id] + s * (X[rs[0]] - X[rs[1]])
    if strategy == "best2":
        return X[best_id] + s * (X[rs[0]] - X[rs[1]]) + s * (X[rs[2]] - X[rs[3]])
    if strategy == "ctr1":
        return X[i] + s * (X[rs[0]] - X[i]) + s * (X[rs[1]] - X[rs[2]])
    if strategy == "ctb1":
        return X[i] + s * (X[best_id] - X[i]) + s * (X[rs[0]] - X[rs[1]])
    if strategy == "ctp1":
        return X[i] + s * (X[pb] - X[i]) + s * (X[rs[0]] - row(ru))
    if strategy == "rtp1":
        return X[rs[0]] + s * (X[pb] - X[rs[0]]) + s * (X[rs[1]] - row(ru))
    raise ValueError(f"unknown strategy {strategy!r}")
