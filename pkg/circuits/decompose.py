"""
decompose.py - Rewrites controlled-SWAPs into CX and single-qubit gates
"""
import logging
from typing import List

from circuits.ir import Circuit, GateKind, GateOp

logger = logging.getLogger(__name__)

# ops emitted per CSWAP: CX + (6 CX, 2 H, 7 T/TDG) + CX
OPS_PER_CSWAP = 17


def toffoli_ops(control1: int, control2: int, target: int) -> List[GateOp]:
    """
    Exact Toffoli (CCX) over H, T, TDG and CX.

    Args:
        control1, control2: Control qubits
        target: Target qubit

    Returns:
        15 ops: 6 CX and 9 single-qubit gates
    """
    h, t, tdg, cx = GateKind.H, GateKind.T, GateKind.TDG, GateKind.CX
    return [
        GateOp(h, (target,)),
        GateOp(cx, (control2, target)),
        GateOp(tdg, (target,)),
        GateOp(cx, (control1, target)),
        GateOp(t, (target,)),
        GateOp(cx, (control2, target)),
        GateOp(tdg, (target,)),
        GateOp(cx, (control1, target)),
        GateOp(t, (control2,)),
        GateOp(t, (target,)),
        GateOp(h, (target,)),
        GateOp(cx, (control1, control2)),
        GateOp(t, (control1,)),
        GateOp(tdg, (control2,)),
        GateOp(cx, (control1, control2)),
    ]


def cswap_ops(control: int, a: int, b: int) -> List[GateOp]:
    """CSWAP(control; a, b) as CX(b->a), CCX(control, a -> b), CX(b->a)."""
    return (
        [GateOp(GateKind.CX, (b, a))]
        + toffoli_ops(control, a, b)
        + [GateOp(GateKind.CX, (b, a))]
    )


def decompose_cswap(circuit: Circuit) -> Circuit:
    """
    Replace every CSWAP with its CX/Toffoli expansion; other ops pass through.

    Args:
        circuit: A valid circuit

    Returns:
        An equivalent circuit free of CSWAP (the same object when there is none)
    """
    if circuit.count(GateKind.CSWAP) == 0:
        return circuit

    ops = []
    for op in circuit.ops:
        if op.kind is GateKind.CSWAP:
            ops.extend(cswap_ops(*op.qubits))
        else:
            ops.append(op)

    logger.debug(f"Decomposed {circuit.count(GateKind.CSWAP)} CSWAPs: {len(circuit)} -> {len(ops)} ops")
    return circuit.with_ops(ops)
