"""
analysis.py - Structural checks and metrics over circuits (validation, gate counts, depth)
"""
import logging
from dataclasses import dataclass
from typing import Dict

from circuits.ir import Circuit, CircuitValidationError, GateKind

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GateCounts:
    """
    Multiset tally of a circuit's instructions.

    Attributes:
        counts: Number of ops per kind (every kind present, zero-filled)
        total: Active ops, i.e. everything except BARRIER (MEASURE included)
        barriers: Number of BARRIER ops
    """

    counts: Dict[GateKind, int]
    total: int
    barriers: int

    def __getitem__(self, kind: GateKind) -> int:
        return self.counts[kind]

    def as_dict(self, include_zero: bool = False) -> Dict[str, int]:
        """Counts keyed by upper-case kind name."""
        return {
            kind.name: n for kind, n in self.counts.items() if n or include_zero
        }


def validate(circuit: Circuit) -> None:
    """
    Check every structural rule of a circuit.

    Args:
        circuit: Circuit to check

    Raises:
        CircuitValidationError: On the first offending op, carrying its index and rule
    """
    if circuit.nq < 1:
        raise CircuitValidationError("circuit needs at least one qubit", rule="register-size")
    if circuit.nc < 0:
        raise CircuitValidationError("classical register size is negative", rule="register-size")

    for i, op in enumerate(circuit.ops):
        arity = op.kind.arity
        if arity is not None and len(op.qubits) != arity:
            raise CircuitValidationError(
                f"{op.kind.name} takes {arity} qubit(s), got {len(op.qubits)}", i, "arity"
            )
        if op.kind is GateKind.BARRIER and not 1 <= len(op.qubits) <= circuit.nq:
            raise CircuitValidationError(
                f"BARRIER spans 1..{circuit.nq} qubits, got {len(op.qubits)}", i, "arity"
            )
        for q in op.qubits:
            if not 0 <= q < circuit.nq:
                raise CircuitValidationError(
                    f"qubit index {q} out of range for {circuit.nq} qubits", i, "qubit-range"
                )
        if len(set(op.qubits)) != len(op.qubits):
            raise CircuitValidationError(
                f"duplicate qubit in {op.kind.name}{list(op.qubits)}", i, "duplicate-qubit"
            )

        if op.kind is GateKind.MEASURE:
            if op.clbit is None:
                raise CircuitValidationError("MEASURE without classical bit", i, "measure-clbit")
            if not 0 <= op.clbit < circuit.nc:
                raise CircuitValidationError(
                    f"classical index {op.clbit} out of range for {circuit.nc} bits",
                    i,
                    "clbit-range",
                )
        elif op.clbit is not None:
            raise CircuitValidationError(
                f"{op.kind.name} must not target a classical bit", i, "unexpected-clbit"
            )

        if op.kind.takes_angle and op.angle is None:
            raise CircuitValidationError(f"{op.kind.name} without angle", i, "angle")
        if not op.kind.takes_angle and op.angle is not None:
            raise CircuitValidationError(f"{op.kind.name} carries no angle", i, "angle")


def is_valid(circuit: Circuit) -> bool:
    try:
        validate(circuit)
    except CircuitValidationError:
        return False
    return True


def gate_count(circuit: Circuit) -> GateCounts:
    """
    Tally instructions per kind.

    Args:
        circuit: A valid circuit

    Returns:
        GateCounts with BARRIER reported separately and excluded from the total
    """
    counts = {kind: 0 for kind in GateKind}
    for op in circuit.ops:
        counts[op.kind] += 1
    barriers = counts[GateKind.BARRIER]
    return GateCounts(counts=counts, total=len(circuit.ops) - barriers, barriers=barriers)


def depth(circuit: Circuit) -> int:
    """
    Greedy left-to-right layering depth.

    Each op lands one layer after the latest layer touching any of its qubits
    (and, for MEASURE, its classical bit). A BARRIER lifts all its qubits to the
    latest layer among them and adds no layer of its own.
    """
    qubit_level = [0] * circuit.nq
    clbit_level = [0] * max(circuit.nc, 0)
    deepest = 0

    for op in circuit.ops:
        if op.kind is GateKind.BARRIER:
            fence = max(qubit_level[q] for q in op.qubits)
            for q in op.qubits:
                qubit_level[q] = fence
            continue

        level = max(qubit_level[q] for q in op.qubits)
        if op.clbit is not None:
            level = max(level, clbit_level[op.clbit])
        level += 1

        for q in op.qubits:
            qubit_level[q] = level
        if op.clbit is not None:
            clbit_level[op.clbit] = level
        deepest = max(deepest, level)

    return deepest
