"""
Quantum Galton board circuit generators.
"""

from galton_board.builders import (
    BiasMode,
    PegBias,
    QgbSpec,
    build_biased_peg,
    build_biased_qgb,
    build_fine_grained_qgb,
    build_peg,
    build_qgb,
    peg_centres,
    peg_count,
)
from galton_board.gate_bounds import BoundVariant, gate_bound

__all__ = [
    "BiasMode",
    "BoundVariant",
    "PegBias",
    "QgbSpec",
    "build_biased_peg",
    "build_biased_qgb",
    "build_fine_grained_qgb",
    "build_peg",
    "build_qgb",
    "gate_bound",
    "peg_centres",
    "peg_count",
]
