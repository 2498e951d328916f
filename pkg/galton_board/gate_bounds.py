"""
gate_bounds.py - Closed-form gate-count upper limits per board variant
"""
from enum import Enum
from typing import Union


class BoundVariant(Enum):
    UNBIASED = "unbiased"
    BIASED = "biased"
    FINE = "fine"


def gate_bound(levels: int, variant: Union[BoundVariant, str]) -> int:
    """
    Published gate-count formula for an n-level board.

    Args:
        levels: Number of peg rows (n >= 1)
        variant: unbiased (2n^2+5n+2), biased (3(n^2+n)+n+2) or fine (3n^2+3n+1)

    Returns:
        The formula value
    """
    if levels < 1:
        raise ValueError(f"Board needs at least one level, got {levels}")
    variant = BoundVariant(variant)
    n = levels
    if variant is BoundVariant.UNBIASED:
        return 2 * n * n + 5 * n + 2
    if variant is BoundVariant.BIASED:
        return 3 * (n * n + n) + n + 2
    return 3 * n * n + 3 * n + 1
