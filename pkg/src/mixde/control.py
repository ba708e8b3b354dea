"""Parameter control: per-iteration scale factor and crossover rate.

Nine control methods plus a fixed-parameter baseline share one interface:
``generate(t, rng)`` returns the <s, c> pair arrays used for the
iteration's variation, and ``update(s, c, success, t, rng)`` feeds back
the success mask (child no worse than parent).  Deterministic methods
ignore the feedback entirely.

Draw orders within generate/update are fixed per method so that runs are
reproducible: scale factors are always drawn before crossover rates.
"""

import numpy as np

PCM_IDS = ("nopcm", "p-co", "p-sin", "p-cars", "p-j", "p-ja", "p-sha",
           "p-eps", "p-cobi", "p-c")


def lehmer_mean(values):
    """Contraharmonic mean sum(v^2)/sum(v) of a nonempty positive set."""
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        raise ValueError("lehmer_mean of an empty set")
    return float(np.sum(v * v) / np.sum(v))


def _positive_capped_cauchy(loc, rng):
    """Cauchy(loc, 0.1) draws, redrawn per entry while <= 0, capped at 1."""
    loc = np.asarray(loc, dtype=float)
    s = rng.cauchy(loc, 0.1, loc.size)
    bad = s <= 0.0
    while np.any(bad):
        s[bad] = rng.cauchy(loc[bad], 0.1, int(bad.sum()))
        bad = s <= 0.0
    return np.minimum(s, 1.0)


class ParameterControl:
    """Base: a feedback-free method that ignores updates."""

    kind = None

    def __init__(self, mu):
        self.mu = mu

    def generate(self, t, rng):
        raise NotImplementedError

    def update(self, s, c, success, t, rng):
        if len(success) != self.mu or len(s) != self.mu or len(c) != self.mu:
            raise ValueError("pairs/mask length does not match population size")

    def snapshot(self):
        """Flattened memory state for diagnostics; empty when stateless."""
        return ()


class NoControl(ParameterControl):
    """Fixed <0.5, 0.9> for every individual at every iteration."""

    kind = "nopcm"

    def generate(self, t, rng):
        return np.full(self.mu, 0.5), np.full(self.mu, 0.9)


class ThreePairControl(ParameterControl):
    """Uniform pick per individual from <1,0.1>, <1,0.9>, <0.8,0.2>."""

    kind = "p-co"
    _S = np.array([1.0, 1.0, 0.8])
    _C = np.array([0.1, 0.9, 0.2])

    def generate(self, t, rng):
        idx = (rng.uniforms(self.mu) * 3).astype(np.intp)
        return self._S[idx].copy(), self._C[idx].copy()


class SinusoidControl(ParameterControl):
    """One shared pair per iteration from growing-amplitude sinusoids."""

    kind = "p-sin"
    freq = 0.25

    def __init__(self, mu, t_max):
        super().__init__(mu)
        if t_max < 1:
            raise ValueError(f"t_max must be >= 1, got {t_max}")
        self.t_max = t_max

    def values_at(self, t):
        ramp = t / self.t_max
        phase = 2.0 * np.pi * self.freq * t
        s = 0.5 * (ramp * np.sin(phase) + 1.0)
        c = 0.5 * (ramp * np.sin(phase + np.pi) + 1.0)
        return s, c

    def generate(self, t, rng):
        s, c = self.values_at(t)
        return np.full(self.mu, s), np.full(self.mu, c)


class NarrowRandomControl(ParameterControl):
    """Per-individual s in [0.5, 0.55]; one shared c from five levels."""

    kind = "p-cars"
    _C_SET = np.array([0.5, 0.6, 0.7, 0.8, 0.9])

    def generate(self, t, rng):
        s = 0.5 + 0.05 * rng.uniforms(self.mu)
        c = self._C_SET[rng.randint(5)]
        return s, np.full(self.mu, c)


class PerIndividualResetControl(ParameterControl):
    """Each individual keeps its pair while it succeeds, with occasional
    random trial pairs (jDE-style sporadic re-randomization)."""

    kind = "p-j"
    tau_s = 0.1
    tau_c = 0.1

    def __init__(self, mu):
        super().__init__(mu)
        self.s = np.full(mu, 0.5)
        self.c = np.full(mu, 0.9)

    def generate(self, t, rng):
        redraw_s = rng.uniforms(self.mu) < self.tau_s
        s_new = 0.1 + 0.9 * rng.uniforms(self.mu)
        redraw_c = rng.uniforms(self.mu) < self.tau_c
        c_new = rng.uniforms(self.mu)
        return np.where(redraw_s, s_new, self.s), np.where(redraw_c, c_new, self.c)

    def update(self, s, c, success, t, rng):
        super().update(s, c, success, t, rng)
        self.s[success] = s[success]
        self.c[success] = c[success]


class MeanTrackingControl(ParameterControl):
    """Single-slot adaptation: Cauchy around m_s, Normal around m_c,
    means pulled toward the successful values (JADE-style)."""

    kind = "p-ja"
    alpha = 0.1

    def __init__(self, mu):
        super().__init__(mu)
        self.m_s = 0.5
        self.m_c = 0.5

    def generate(self, t, rng):
        s = _positive_capped_cauchy(np.full(self.mu, self.m_s), rng)
        c = np.clip(rng.normal(self.m_c, 0.1, self.mu), 0.0, 1.0)
        return s, c

    def update(self, s, c, success, t, rng):
        super().update(s, c, success, t, rng)
        if np.any(success):
            self.m_s = (1 - self.alpha) * self.m_s + self.alpha * lehmer_mean(s[success])
            self.m_c = (1 - self.alpha) * self.m_c + self.alpha * float(np.mean(c[success]))

    def snapshot(self):
        return (self.m_s, self.m_c)


class HistoryMemoryControl(ParameterControl):
    """Success-history adaptation with h memory slots (SHADE-style).

    Each individual samples around a uniformly chosen memory slot; one slot
    per iteration is overwritten with the Lehmer mean of the successful
    values.  Iterations with no success leave memory and the write index
    untouched.
    """

    kind = "p-sha"
    history = 10

    def __init__(self, mu):
        super().__init__(mu)
        self.m_s = np.full(self.history, 0.5)
        self.m_c = np.full(self.history, 0.5)
        self.k = 0  # next slot to overwrite

    def generate(self, t, rng):
        r = (rng.uniforms(self.mu) * self.history).astype(np.intp)
        s = _positive_capped_cauchy(self.m_s[r], rng)
        c = np.clip(rng.normal(self.m_c[r], 0.1, self.mu), 0.0, 1.0)
        return s, c

    def update(self, s, c, success, t, rng):
        super().update(s, c, success, t, rng)
        if not np.any(success):
            return
        self.m_s[self.k] = lehmer_mean(s[success])
        # clipped crossover rates may all be exactly 0; the Lehmer mean is
        # then 0/0, and the memory entry takes its limit value 0
        succ_c = c[success]
        den = float(np.sum(succ_c))
        self.m_c[self.k] = float(np.sum(succ_c * succ_c) / den) if den > 0 else 0.0
        self.k = (self.k + 1) % self.history

    def snapshot(self):
        return tuple(self.m_s) + tuple(self.m_c)


class RetainOrResampleControl(ParameterControl):
    """Keep the pair on success, draw a fresh one on failure.

    Subclasses define the pair generator; pairs are first drawn lazily at
    the first generate call.
    """

    def __init__(self, mu):
        super().__init__(mu)
        self.s = None
        self.c = None

    def _fresh(self, k, rng):
        raise NotImplementedError

    def generate(self, t, rng):
        if self.s is None:
            self.s, self.c = self._fresh(self.mu, rng)
        return self.s.copy(), self.c.copy()

    def update(self, s, c, success, t, rng):
        super().update(s, c, success, t, rng)
        failed = ~np.asarray(success, dtype=bool)
        k = int(failed.sum())
        if k:
            fs, fc = self._fresh(k, rng)
            self.s[failed] = fs
            self.c[failed] = fc


class LevelSetControl(RetainOrResampleControl):
    """Pairs drawn from the fixed grids {0.4..0.9} x {0.1..0.9} (EPSDE-style)."""

    kind = "p-eps"
    _Q_S = np.array([0.4, 0.5, 0.6, 0.7, 0.8, 0.9])
    _Q_C = np.array([0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9])

    def _fresh(self, k, rng):
        s = self._Q_S[(rng.uniforms(k) * len(self._Q_S)).astype(np.intp)]
        c = self._Q_C[(rng.uniforms(k) * len(self._Q_C)).astype(np.intp)]
        return s.copy(), c.copy()


class BimodalControl(RetainOrResampleControl):
    """Pairs from two-component Cauchy mixtures (CoBiDE-style).

    Raw draws can leave the valid ranges; scale factors are redrawn while
    nonpositive (fresh mixture pick each time) and capped at 1, crossover
    rates are clipped to [0, 1].
    """

    kind = "p-cobi"

    def _fresh(self, k, rng):
        s = np.empty(k)
        pending = np.arange(k)
        while pending.size:
            locs = np.where(rng.uniforms(pending.size) < 0.5, 0.65, 1.0)
            draws = rng.cauchy(locs, 0.1, pending.size)
            good = draws > 0.0
            s[pending[good]] = draws[good]
            pending = pending[~good]
        s = np.minimum(s, 1.0)
        locs_c = np.where(rng.uniforms(k) < 0.5, 0.1, 0.95)
        c = np.clip(rng.cauchy(locs_c, 0.1, k), 0.0, 1.0)
        return s, c


class SuccessCountControl(ParameterControl):
    """Nine fixed pairs picked with success-count-proportional probability.

    Counters reset to zero whenever any pair's selection probability falls
    to the floor delta, which restores the uniform 1/9 distribution.
    """

    kind = "p-c"
    epsilon = 2.0
    delta = 1.0 / 45.0
    _PAIRS = np.array([[0.5, 0.0], [0.5, 0.5], [0.5, 1.0],
                       [0.8, 0.0], [0.8, 0.5], [0.8, 1.0],
                       [1.0, 0.0], [1.0, 0.5], [1.0, 1.0]])

    def __init__(self, mu):
        super().__init__(mu)
        self.counts = np.zeros(9)

    def probabilities(self):
        w = self.counts + self.epsilon
        return w / w.sum()

    def generate(self, t, rng):
        tau = self.probabilities()
        if np.any(tau <= self.delta):
            self.counts[:] = 0.0
            tau = self.probabilities()
        cum = np.cumsum(tau)
        idx = np.searchsorted(cum, rng.uniforms(self.mu), side="right")
        idx = np.minimum(idx, 8)
        return self._PAIRS[idx, 0].copy(), self._PAIRS[idx, 1].copy()

    def update(self, s, c, success, t, rng):
        super().update(s, c, success, t, rng)
        if not np.any(success):
            return
        si = s[success]
        ci = c[success]
        s_code = np.where(si == 0.5, 0, np.where(si == 0.8, 1, 2))
        c_code = np.where(ci == 0.0, 0, np.where(ci == 0.5, 1, 2))
        np.add.at(self.counts, 3 * s_code + c_code, 1.0)


_DETERMINISTIC = {"nopcm", "p-co", "p-sin", "p-cars"}


def is_deterministic(kind):
    """True for methods whose trajectory ignores all feedback."""
    return kind in _DETERMINISTIC


def make_pcm(kind, mu, t_max=1):
    """Initialized control state for one run of population size mu.

    t_max (the iteration budget) only matters for the sinusoidal method.
    """
    if mu < 1:
        raise ValueError(f"population size must be >= 1, got {mu}")
    if kind == "p-sin":
        return SinusoidControl(mu, t_max)
    classes = {
        "nopcm": NoControl, "p-co": ThreePairControl, "p-cars": NarrowRandomControl,
        "p-j": PerIndividualResetControl, "p-ja": MeanTrackingControl,
        "p-sha": HistoryMemoryControl, "p-eps": LevelSetControl,
        "p-cobi": BimodalControl, "p-c": SuccessCountControl,
    }
    if kind not in classes:
        raise ValueError(f"unknown pcm {kind!r}; valid: {', '.join(PCM_IDS)}")
    return classes[kind](mu)
