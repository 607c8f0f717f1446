import numpy as np

_MASK64 = (1 << 64) - 1


def make_rng(seed, *stream):
    """PCG64 generator for ``seed`` and an optional stream path.

    Streams are keyed through ``SeedSequence`` so that, e.g., the RNG used for
    review 17 / copy 3 does not depend on how many draws other reviews made.
    """
    entropy = [int(seed) & _MASK64] + [int(s) & _MASK64 for s in stream]
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))
