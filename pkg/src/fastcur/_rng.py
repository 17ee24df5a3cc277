import numbers

import numpy as np


def check_random_state(seed):
    """Turn `seed` into a ``numpy.random.Generator``.

    ``None`` draws fresh OS entropy, an int (or ``SeedSequence``) seeds a new
    PCG64 generator, and an existing ``Generator`` is returned untouched so
    callers can thread one stream through several calls.
    """
    if isinstance(seed, np.random.Generator):
        return seed
    if seed is None or isinstance(seed, (numbers.Integral, np.random.SeedSequence)):
        return np.random.default_rng(seed)
    raise TypeError(f"cannot build a random generator from {type(seed).__name__}")
