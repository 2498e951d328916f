"""
Circuit intermediate representation and structural analyses.
"""

from circuits.analysis import GateCounts, depth, gate_count, is_valid, validate
from circuits.decompose import cswap_ops, decompose_cswap, toffoli_ops
from circuits.ir import (
    AngleValue,
    Circuit,
    CircuitBuilder,
    CircuitValidationError,
    GateKind,
    GateOp,
)

__all__ = [
    "AngleValue",
    "Circuit",
    "CircuitBuilder",
    "CircuitValidationError",
    "GateCounts",
    "GateKind",
    "GateOp",
    "cswap_ops",
    "decompose_cswap",
    "depth",
    "gate_count",
    "is_valid",
    "toffoli_ops",
    "validate",
]
