"""
Deterministic seed splitting.

Sample i of any randomized batch uses

    SeedSequence(master).spawn(count)[i].generate_state(1, uint64)[0]

Spawned children are keyed by their index, so the seed of sample i does not
depend on how many samples are requested or on the order they are run in.
"""

from typing import List

import numpy as np


def derive_seeds(master_seed: int, count: int) -> List[int]:
    """
    Derive `count` independent integer seeds from a master seed.

    Args:
        master_seed: Non-negative master seed
        count: Number of seeds to derive

    Returns:
        List of 64-bit integer seeds, index-stable
    """
    children = np.random.SeedSequence(int(master_seed)).spawn(count)
    return [int(child.generate_state(1, dtype=np.uint64)[0]) for child in children]


def make_rng(seed: int) -> np.random.Generator:
    """Numpy generator for an integer seed."""
    return np.random.default_rng(int(seed))
