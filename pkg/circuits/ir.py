"""
ir.py - Circuit intermediate representation shared by builders, simulators and QASM I/O
"""
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterator, Optional, Sequence, Tuple

logger = logging.getLogger(__name__)


class CircuitValidationError(ValueError):
    """Raised when a circuit breaks a structural rule."""

    def __init__(self, message: str, op_index: Optional[int] = None, rule: str = ""):
        self.op_index = op_index
        self.rule = rule
        where = f"op {op_index}: " if op_index is not None else ""
        super().__init__(f"{where}{message}")


class GateKind(Enum):
    """Instruction kinds understood by every layer of the toolkit."""

    H = "h"
    X = "x"
    RX = "rx"
    T = "t"
    TDG = "tdg"
    CX = "cx"
    CSWAP = "cswap"
    SWAP = "swap"
    RESET = "reset"
    MEASURE = "measure"
    BARRIER = "barrier"

    @property
    def arity(self) -> Optional[int]:
        """Fixed qubit arity, or None for BARRIER (1..nq qubits)."""
        return _ARITY.get(self)

    @property
    def is_unitary(self) -> bool:
        return self not in (GateKind.RESET, GateKind.MEASURE, GateKind.BARRIER)

    @property
    def takes_angle(self) -> bool:
        return self is GateKind.RX


_ARITY = {
    GateKind.H: 1,
    GateKind.X: 1,
    GateKind.RX: 1,
    GateKind.T: 1,
    GateKind.TDG: 1,
    GateKind.RESET: 1,
    GateKind.MEASURE: 1,
    GateKind.CX: 2,
    GateKind.SWAP: 2,
    GateKind.CSWAP: 3,
}


@dataclass(frozen=True)
class AngleValue:
    """
    Rotation angle held both as radians and, when known, as an exact multiple of pi.

    Attributes:
        radians: Angle in radians (used by the simulator)
        exact: Rational multiple of pi in lowest terms, or None for plain decimals
    """

    radians: float
    exact: Optional[Fraction] = None

    def __post_init__(self):
        if not math.isfinite(self.radians):
            raise ValueError(f"Angle must be finite, got {self.radians}")
        if self.exact is not None:
            if not isinstance(self.exact, Fraction):
                raise ValueError("Exact angle must be a Fraction multiple of pi")
            if abs(math.pi * float(self.exact) - self.radians) > 1e-12:
                raise ValueError(
                    f"Exact form {self.exact}*pi does not match {self.radians} radians"
                )

    @classmethod
    def from_pi_fraction(cls, numerator: int, denominator: int = 1) -> "AngleValue":
        """Build pi*numerator/denominator; Fraction normalises to lowest terms."""
        if denominator == 0:
            raise ValueError("Angle denominator must be non-zero")
        ratio = Fraction(numerator, denominator)
        return cls(radians=math.pi * ratio.numerator / ratio.denominator, exact=ratio)

    @classmethod
    def from_radians(cls, radians: float) -> "AngleValue":
        return cls(radians=float(radians))

    @property
    def numerator(self) -> Optional[int]:
        return None if self.exact is None else self.exact.numerator

    @property
    def denominator(self) -> Optional[int]:
        return None if self.exact is None else self.exact.denominator

    def __str__(self) -> str:
        if self.exact is None:
            return f"{self.radians:.12g}"
        return f"{self.exact}*pi"


@dataclass(frozen=True)
class GateOp:
    """
    One circuit instruction.

    For CSWAP the first qubit is the control and the other two are swapped.
    For CX the first qubit is the control.
    """

    kind: GateKind
    qubits: Tuple[int, ...]
    angle: Optional[AngleValue] = None
    clbit: Optional[int] = None

    def __post_init__(self):
        # accept lists from callers but store a hashable tuple
        object.__setattr__(self, "qubits", tuple(self.qubits))

    def __str__(self) -> str:
        args = ",".join(f"q{q}" for q in self.qubits)
        angle = f"({self.angle})" if self.angle is not None else ""
        target = f" -> c{self.clbit}" if self.clbit is not None else ""
        return f"{self.kind.value}{angle} {args}{target}"


@dataclass(frozen=True)
class Circuit:
    """Immutable ordered instruction list over nq qubits and nc classical bits."""

    nq: int
    nc: int
    ops: Tuple[GateOp, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(self.ops))

    def __len__(self) -> int:
        return len(self.ops)

    def __iter__(self) -> Iterator[GateOp]:
        return iter(self.ops)

    def count(self, kind: GateKind) -> int:
        return sum(1 for op in self.ops if op.kind is kind)

    def with_ops(self, ops: Sequence[GateOp]) -> "Circuit":
        """Return a circuit over the same registers with a new instruction list."""
        return Circuit(self.nq, self.nc, tuple(ops))


class CircuitBuilder:
    """Append-only helper producing an immutable Circuit."""

    def __init__(self, nq: int, nc: int = 0):
        """
        Initialize the builder.

        Args:
            nq: Number of qubits
            nc: Number of classical bits
        """
        self.nq = nq
        self.nc = nc
        self._ops = []

    def append(self, op: GateOp) -> "CircuitBuilder":
        self._ops.append(op)
        return self

    def extend(self, ops: Sequence[GateOp]) -> "CircuitBuilder":
        self._ops.extend(ops)
        return self

    def h(self, q: int) -> "CircuitBuilder":
        return self.append(GateOp(GateKind.H, (q,)))

    def x(self, q: int) -> "CircuitBuilder":
        return self.append(GateOp(GateKind.X, (q,)))

    def rx(self, q: int, angle: AngleValue) -> "CircuitBuilder":
        return self.append(GateOp(GateKind.RX, (q,), angle=angle))

    def t(self, q: int) -> "CircuitBuilder":
        return self.append(GateOp(GateKind.T, (q,)))

    def tdg(self, q: int) -> "CircuitBuilder":
        return self.append(GateOp(GateKind.TDG, (q,)))

    def cx(self, control: int, target: int) -> "CircuitBuilder":
        return self.append(GateOp(GateKind.CX, (control, target)))

    def cswap(self, control: int, a: int, b: int) -> "CircuitBuilder":
        return self.append(GateOp(GateKind.CSWAP, (control, a, b)))

    def swap(self, a: int, b: int) -> "CircuitBuilder":
        return self.append(GateOp(GateKind.SWAP, (a, b)))

    def reset(self, q: int) -> "CircuitBuilder":
        return self.append(GateOp(GateKind.RESET, (q,)))

    def measure(self, q: int, c: int) -> "CircuitBuilder":
        return self.append(GateOp(GateKind.MEASURE, (q,), clbit=c))

    def barrier(self, *qubits: int) -> "CircuitBuilder":
        return self.append(GateOp(GateKind.BARRIER, tuple(qubits)))

    def build(self) -> Circuit:
        circuit = Circuit(self.nq, self.nc, tuple(self._ops))
        logger.debug(f"Built circuit with {len(circuit)} ops on {self.nq} qubits")
        return circuit
