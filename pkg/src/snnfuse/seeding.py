"""Deterministic sub-stream derivation.

Every consumer of randomness derives its own generator from
(master seed, module tag, index...), so adding or reordering draws in
one module never perturbs another module's stream.
"""

from __future__ import annotations

import numpy as np

TAG_BUILD = 1
TAG_TRAJECTORY = 2
TAG_RADAR1 = 3
TAG_RADAR2 = 4
TAG_WINDOW = 5
TAG_CALIBRATION = 6

_U64 = (1 << 64) - 1


def derive_rng(master_seed: int, *key: int) -> np.random.Generator:
    """Generator for the sub-stream identified by (master_seed, *key)."""
    entropy = (int(master_seed) & _U64,) + tuple(int(k) & _U64 for k in key)
    return np.random.default_rng(np.random.SeedSequence(entropy))
