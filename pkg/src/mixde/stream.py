"""Per-run random stream with a buffered uniform source.

Every stochastic choice of a run (initialization, index draws, crossover,
parameter sampling, archive truncation) consumes this single stream, so a
run is a pure function of its seed material.  Scalar draws are served from
an internal float buffer because the optimizer makes hundreds of small
draws per iteration and ``Generator`` call overhead would dominate.
"""

import hashlib

import numpy as np

_BUFFER_SIZE = 8192


class RunStream:
    """Single random stream owned by one run.

    ``u01``/``uniforms``/``randint`` consume a shared buffer of uniform
    floats in order; distribution draws (``normal``, ``cauchy``) go to the
    underlying generator directly.  The consumption sequence is fixed by
    the calling code, which makes runs bit-reproducible.
    """

    def __init__(self, seed_material):
        self._gen = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed_material)))
        self._buf = self._gen.random(_BUFFER_SIZE)
        self._pos = 0

    def u01(self):
        """One uniform float in [0, 1)."""
        pos = self._pos
        if pos == len(self._buf):
            self._buf = self._gen.random(_BUFFER_SIZE)
            pos = 0
        self._pos = pos + 1
        return self._buf[pos]

    def uniforms(self, k):
        """Array of k uniform floats in [0, 1), consumed in order."""
        pos = self._pos
        avail = len(self._buf) - pos
        if k <= avail:
            self._pos = pos + k
            return self._buf[pos:pos + k]
        head = self._buf[pos:]
        tail = self._gen.random(k - avail)
        self._buf = self._gen.random(_BUFFER_SIZE)
        self._pos = 0
        return np.concatenate([head, tail])

    def randint(self, m):
        """Uniform integer in {0, ..., m-1}; consumes one uniform."""
        return int(self.u01() * m)

    def normal(self, loc, scale, size):
        return self._gen.normal(loc=loc, scale=scale, size=size)

    def cauchy(self, loc, scale, size):
        return loc + scale * self._gen.standard_cauchy(size)


def seed_material(*parts):
    """Derive SeedSequence entropy words from arbitrary labelled parts.

    Hash-based so that nearby seeds or configs never share a stream.
    """
    key = "|".join(repr(p) for p in parts)
    digest = hashlib.sha256(key.encode("utf-8")).digest()
    return [int.from_bytes(digest[i:i + 4], "little") for i in range(0, 32, 4)]
