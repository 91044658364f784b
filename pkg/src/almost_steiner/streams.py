"""Named random streams derived from a single master seed.

Every consumer of randomness asks for a stream by a tuple key, so results do
not depend on the order in which streams are created or on how work is split
across threads.
"""
from __future__ import annotations

import numpy as np

MASK64 = 2**64 - 1

# first element of every spawn key, one per consumer
PACK_PERMUTATION = 0
PACK_NIBBLE = 1
PACK_REFINE = 2
AUGMENT_SAMPLE = 3
AUGMENT_REPAIR = 4


def stream(seed: int, *key: int) -> np.random.Generator:
    if not 0 <= seed <= MASK64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=key))
