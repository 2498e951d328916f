"""
emitter.py - Writes circuits as OpenQASM 2.0 text
"""
from typing import List

from circuits.analysis import validate
from circuits.ir import AngleValue, Circuit, GateKind, GateOp


def format_angle(angle: AngleValue) -> str:
    """
    Render an angle as a QASM expression.

    Exact multiples of pi print in lowest terms (`pi/2`, `2*pi/3`, `-pi`);
    other angles print as decimals with 12 significant digits, so a decimal
    angle reads back within about 1e-12 of the original rather than bit-for-bit.
    """
    if angle.exact is None:
        return f"{angle.radians:.12g}"

    num, den = angle.numerator, angle.denominator
    if num == 0:
        return "0"
    sign = "-" if num < 0 else ""
    num = abs(num)
    head = "pi" if num == 1 else f"{num}*pi"
    tail = "" if den == 1 else f"/{den}"
    return f"{sign}{head}{tail}"


def _format_op(op: GateOp, qreg: str, creg: str) -> str:
    args = ",".join(f"{qreg}[{q}]" for q in op.qubits)
    if op.kind is GateKind.MEASURE:
        return f"measure {args} -> {creg}[{op.clbit}];"
    if op.angle is not None:
        return f"{op.kind.value}({format_angle(op.angle)}) {args};"
    return f"{op.kind.value} {args};"


def emit(circuit: Circuit, qreg_name: str = "q", creg_name: str = "c") -> str:
    """
    Serialise a circuit, one statement per line.

    Args:
        circuit: A valid circuit
        qreg_name: Quantum register name
        creg_name: Classical register name

    Returns:
        Program text ending with a newline. Exact angles survive a parse and
        lower unchanged; decimal angles come back to 12 significant digits.
    """
    validate(circuit)
    lines: List[str] = ["OPENQASM 2.0;", 'include "qelib1.inc";', "", f"qreg {qreg_name}[{circuit.nq}];"]
    if circuit.nc > 0:
        lines.append(f"creg {creg_name}[{circuit.nc}];")
    lines.append("")
    lines.extend(_format_op(op, qreg_name, creg_name) for op in circuit.ops)
    return "\n".join(lines) + "\n"
