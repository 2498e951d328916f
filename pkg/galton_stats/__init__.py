"""
Post-processing of board readouts: decoding, rescaling, moments and reference laws.
"""

from galton_stats.decoding import (
    DecodedSamples,
    DecodeError,
    SummaryStats,
    decode_distribution,
    decode_histogram,
    decode_memory,
    decode_one_hot,
    expand_histogram,
    levels_from_width,
    rescale_blocks,
    summary_from_counts,
    summary_from_distribution,
    summary_stats,
)
from galton_stats.references import (
    ComparisonResult,
    ReferenceDistribution,
    binomial_reference,
    block_sum_reference,
    compare,
    distribution_reference,
    normal_reference,
)

__all__ = [
    "ComparisonResult",
    "DecodeError",
    "DecodedSamples",
    "ReferenceDistribution",
    "SummaryStats",
    "binomial_reference",
    "block_sum_reference",
    "compare",
    "decode_distribution",
    "decode_histogram",
    "decode_memory",
    "decode_one_hot",
    "distribution_reference",
    "expand_histogram",
    "levels_from_width",
    "normal_reference",
    "rescale_blocks",
    "summary_from_counts",
    "summary_from_distribution",
    "summary_stats",
]
