"""
rng.py - Per-shot random streams keyed by (seed, shot index)
"""
import numpy as np

_MASK64 = (1 << 64) - 1


def shot_rng(seed: int, shot_index: int) -> np.random.Generator:
    """
    Counter-based generator for one shot.

    The seed and shot index are mixed through a SeedSequence into a Philox key,
    so every shot owns an independent stream no matter which worker runs it.

    Args:
        seed: Run seed (reduced to 64 bits)
        shot_index: Non-negative shot number within the run

    Returns:
        A fresh numpy Generator
    """
    if shot_index < 0:
        raise ValueError(f"Shot index must be non-negative, got {shot_index}")
    sequence = np.random.SeedSequence(entropy=seed & _MASK64, spawn_key=(shot_index,))
    return np.random.Generator(np.random.Philox(sequence))
