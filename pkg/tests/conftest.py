import numpy as np
import pytest

from mixde.core import RunLog
from mixde.stream import RunStream


class ScriptedStream:
    """Stand-in stream serving pre-decided draws, for tracing rules by hand.

    ``randints`` feeds randint() directly; when exhausted, randint falls
    back to the uniform queue like the real stream does.
    """

    def __init__(self, uniforms=(), randints=()):
        self._u = [float(v) for v in uniforms]
        self._r = [int(v) for v in randints]

    def u01(self):
        return self._u.pop(0)

    def uniforms(self, k):
        return np.array([self._u.pop(0) for _ in range(k)])

    def randint(self, m):
        if self._r:
            return self._r.pop(0)
        return int(self.u01() * m)


@pytest.fixture
def rng():
    return RunStream([1234])


def synthetic_log(trace, n=10, budget=1000):
    return RunLog(function="sphere", n=n, instance=1, strategy="rand1",
                  pcm="nopcm", repair="baldwin", mu=10, seed=1, budget=budget,
                  trace=list(trace))


def brute_force_ecdf(logs, deltas, grid):
    """Independent ECDF oracle: literal double loop over (log, target) pairs."""
    out = []
    for e in grid:
        count = 0
        for log in logs:
            for d in deltas:
                if any(ei <= e and fd <= d for ei, fd in log.trace):
                    count += 1
        out.append(count / (len(logs) * len(deltas)))
    return np.array(out)


def random_log_set(rng, max_logs=5, budget=500):
    n_logs = 1 + rng.integers(max_logs)
    logs = []
    for _ in range(n_logs):
        k = 1 + rng.integers(8)
        evals = np.sort(rng.choice(np.arange(1, budget + 1), size=k, replace=False))
        fds = np.sort(10.0 ** rng.uniform(-9, 3, size=k))[::-1]
        logs.append(synthetic_log(zip(evals.tolist(), fds.tolist()), budget=budget))
    return logs
