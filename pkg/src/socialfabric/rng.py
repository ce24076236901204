"""Deterministic, splittable random streams.

Every random draw in the package comes from a stream addressed by an integer
path such as ``(master_seed, scenario, replication)``. Streams are Philox
counter-based generators keyed through :class:`numpy.random.SeedSequence`, so
the draws for a given path never depend on how many other streams exist or on
the order in which worker threads consume them.
"""

import numpy as np


def stream(master_seed, *path):
    """Return an independent generator for ``(master_seed, *path)``."""
    seq = np.random.SeedSequence(entropy=int(master_seed), spawn_key=tuple(int(p) for p in path))
    return np.random.Generator(np.random.Philox(seq))


def as_generator(rng):
    """Accept a Generator, an int seed, or None."""
    if isinstance(rng, np.random.Generator):
        return rng
    return stream(0 if rng is None else rng)
