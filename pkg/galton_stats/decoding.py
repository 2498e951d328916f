"""
decoding.py - One-hot decoding of board readouts, block rescaling and moment summaries

Bitstrings render the classical register highest index first, so bit c_k is
character len-1-k. A board of n levels measures c1..c_{2n+1}; the ball lands
on an odd bit c_{2k+1}, read as value k. Bit c0 (the coin) is never measured
and is ignored.
"""
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)

_MASK64 = (1 << 64) - 1


class DecodeError(ValueError):
    """Raised for readouts that are not a valid one-hot ball position."""


@dataclass(frozen=True)
class DecodedSamples:
    """
    Decoded ball positions in shot order.

    Attributes:
        values: Positions in 0..levels
        levels: Board depth n
    """

    values: Tuple[int, ...]
    levels: int

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        for v in self.values:
            if not 0 <= v <= self.levels:
                raise ValueError(f"Decoded value {v} outside 0..{self.levels}")

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class SummaryStats:
    """Population moments of a sample or distribution."""

    mean: float
    stddev: float
    variance: float


def levels_from_width(nc: int) -> int:
    """Board depth implied by a classical register of 2n+2 bits."""
    if nc < 4 or nc % 2:
        raise ValueError(f"Register width {nc} is not 2n+2 for any n >= 1")
    return (nc - 2) // 2


def decode_one_hot(bits: str, levels: int) -> int:
    """
    Decode one board readout.

    Args:
        bits: Bitstring of width 2n+2, highest classical index first
        levels: Board depth n

    Returns:
        Ball position k for a single hot bit at c_{2k+1}

    Raises:
        DecodeError: On a wrong width, no or several hot bits, or a hot even bit
    """
    width = 2 * levels + 2
    if len(bits) != width:
        raise DecodeError(f"Expected {width} bits for {levels} levels, got {len(bits)}")
    if set(bits) - {"0", "1"}:
        raise DecodeError(f"Not a bitstring: {bits!r}")

    hot = [k for k in range(1, width) if bits[width - 1 - k] == "1"]
    if len(hot) != 1:
        raise DecodeError(f"{bits} has {len(hot)} hot working bits, expected exactly one")
    k = hot[0]
    if k % 2 == 0:
        raise DecodeError(f"{bits} is hot on even bit c{k}")
    return (k - 1) // 2


def decode_memory(memory: Iterable[str], levels: int) -> Tuple[DecodedSamples, Counter]:
    """
    Decode per-shot readouts, keeping order.

    Returns:
        (decoded samples, Counter of readouts that failed to decode)
    """
    values: List[int] = []
    invalid: Counter = Counter()
    for bits in memory:
        try:
            values.append(decode_one_hot(bits, levels))
        except DecodeError:
            invalid[bits] += 1
    if invalid:
        logger.warning(f"Excluded {sum(invalid.values())} non-one-hot readouts")
    return DecodedSamples(tuple(values), levels), invalid


def decode_histogram(counts: Mapping[str, int], levels: int) -> Tuple[Counter, Counter]:
    """Decode a bitstring -> count map into (value -> count, invalid bitstring -> count)."""
    values: Counter = Counter()
    invalid: Counter = Counter()
    for bits, n in counts.items():
        try:
            values[decode_one_hot(bits, levels)] += n
        except DecodeError:
            invalid[bits] += n
    if invalid:
        logger.warning(f"Excluded {sum(invalid.values())} non-one-hot shots")
    return values, invalid


def decode_distribution(probabilities: Mapping[str, float], levels: int) -> Tuple[Dict[int, float], float]:
    """
    Decode an exact bitstring -> probability map.

    Returns:
        (value -> probability over 0..n, total probability of invalid readouts)
    """
    values = {k: 0.0 for k in range(levels + 1)}
    invalid = 0.0
    for bits, p in probabilities.items():
        try:
            values[decode_one_hot(bits, levels)] += p
        except DecodeError:
            invalid += p
    if invalid > 1e-12:
        logger.warning(f"Exact distribution puts {invalid:.3e} on non-one-hot readouts")
    return values, invalid


def expand_histogram(counts: Mapping[str, int], seed: int) -> List[str]:
    """
    Turn a histogram back into a shot sequence by a seeded uniform shuffle.

    Shots are exchangeable, so block sums over the shuffled sequence have the
    same law as over the recorded order.
    """
    ordered = [bits for bits in sorted(counts) for _ in range(counts[bits])]
    rng = np.random.Generator(np.random.Philox(seed & _MASK64))
    return [ordered[i] for i in rng.permutation(len(ordered))]


def rescale_blocks(values: Sequence[int], block_size: int) -> List[int]:
    """
    Sum consecutive disjoint blocks; a trailing partial block is dropped.

    Args:
        values: Decoded positions in shot order
        block_size: Values per block (>= 1)

    Returns:
        One sum per complete block
    """
    if block_size < 1:
        raise ValueError(f"Block size must be positive, got {block_size}")
    if isinstance(values, DecodedSamples):
        values = values.values
    full = len(values) // block_size
    if full == 0:
        return []
    blocks = np.asarray(values[: full * block_size], dtype=np.int64).reshape(full, block_size)
    return blocks.sum(axis=1).tolist()


def summary_stats(values: Sequence[float]) -> SummaryStats:
    """Population mean, standard deviation and variance."""
    if isinstance(values, DecodedSamples):
        values = values.values
    if len(values) == 0:
        raise ValueError("Cannot summarise an empty sample")
    data = np.asarray(values, dtype=float)
    variance = float(np.var(data))
    return SummaryStats(mean=float(np.mean(data)), stddev=float(np.sqrt(variance)), variance=variance)


def summary_from_counts(counts: Mapping[int, int]) -> SummaryStats:
    """Population moments of a value -> count tally."""
    total = sum(counts.values())
    if total == 0:
        raise ValueError("Cannot summarise an empty histogram")
    return summary_from_distribution({k: n / total for k, n in counts.items()})


def summary_from_distribution(pmf: Mapping[int, float]) -> SummaryStats:
    """Exact moments of a value -> probability map (renormalised)."""
    total = sum(pmf.values())
    if total <= 0:
        raise ValueError("Distribution has no mass")
    support = np.array(list(pmf.keys()), dtype=float)
    weights = np.array(list(pmf.values()), dtype=float) / total
    mean = float(np.dot(support, weights))
    variance = float(np.dot((support - mean) ** 2, weights))
    return SummaryStats(mean=mean, stddev=float(np.sqrt(variance)), variance=variance)
