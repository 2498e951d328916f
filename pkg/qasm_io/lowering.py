"""
lowering.py - Turns a parsed QasmProgram into a flat Circuit
"""
import logging
from pathlib import Path
from typing import List, Union

from circuits.analysis import validate
from circuits.ir import Circuit, GateKind, GateOp
from qasm_io.parser import parse
from qasm_io.program import Operand, QasmProgram

logger = logging.getLogger(__name__)


def _indices(operand: Operand, size: int) -> List[int]:
    return list(range(size)) if operand.index is None else [operand.index]


def lower(program: QasmProgram) -> Circuit:
    """
    Map register-indexed statements onto qubit/clbit indices.

    Args:
        program: Output of parse

    Returns:
        A validated Circuit over the program's registers

    Raises:
        ValueError: If the program declares no quantum register
    """
    if program.qreg is None:
        raise ValueError("program declares no quantum register")
    nq = program.qreg.size
    nc = program.creg.size if program.creg is not None else 0

    ops: List[GateOp] = []
    for stmt in program.statements:
        kind = GateKind(stmt.name)
        if kind is GateKind.BARRIER:
            qubits = [q for operand in stmt.operands for q in _indices(operand, nq)]
            ops.append(GateOp(kind, tuple(qubits)))
        elif kind is GateKind.MEASURE:
            ops.append(GateOp(kind, (stmt.operands[0].index,), clbit=stmt.target.index))
        else:
            ops.append(GateOp(kind, tuple(o.index for o in stmt.operands), angle=stmt.angle))

    circuit = Circuit(nq, nc, tuple(ops))
    validate(circuit)
    return circuit


def loads(text: str) -> Circuit:
    return lower(parse(text))


def load_circuit(path: Union[str, Path]) -> Circuit:
    """Read, parse and lower a .qasm file."""
    path = Path(path)
    circuit = loads(path.read_text(encoding="utf-8"))
    logger.info(f"Loaded {path.name}: {circuit.nq} qubits, {len(circuit)} ops")
    return circuit
