"""
program.py - Parsed OpenQASM program model
"""
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from circuits.ir import AngleValue


@dataclass(frozen=True)
class SourceSpan:
    """1-based position of a construct in its source file."""

    line: int
    column: int


@dataclass(frozen=True)
class RegisterDecl:
    name: str
    size: int
    span: SourceSpan


@dataclass(frozen=True)
class Operand:
    """
    Register reference such as q[3].

    Attributes:
        register: Register name
        index: Element index, or None for the whole register
        span: Where the operand starts
    """

    register: str
    index: Optional[int]
    span: SourceSpan


@dataclass(frozen=True)
class Statement:
    """
    One gate, reset, barrier or measure statement.

    Attributes:
        name: Instruction name as written (h, rx, measure, ...)
        operands: Quantum operands
        angle: Parameter of rx, otherwise None
        target: Classical operand of measure, otherwise None
        span: Position of the instruction name
    """

    name: str
    operands: Tuple[Operand, ...]
    span: SourceSpan
    angle: Optional[AngleValue] = None
    target: Optional[Operand] = None


@dataclass
class QasmProgram:
    version: str = "2.0"
    includes: List[str] = field(default_factory=list)
    qreg: Optional[RegisterDecl] = None
    creg: Optional[RegisterDecl] = None
    statements: List[Statement] = field(default_factory=list)
