"""
builders.py - Circuit generators for quantum pegs and n-level Galton boards

Register layout for an n-level board: q0 is the coin (control) qubit and
q1..q_{2n+1} are the working qubits. The ball starts on q_{n+1}; the pegs of
row r sit on the working qubits

    centre_j = (n + 1) - (r - 1) + 2j,   j = 0..r-1

and a ball leaving the board ends on an odd working qubit q_{2k+1}, read as
value k. Per-peg angles are listed row by row from the top, left to right
within a row (increasing centre), which is also their emission order.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence

from circuits.ir import AngleValue, Circuit, CircuitBuilder
from galton_board.gate_bounds import BoundVariant

logger = logging.getLogger(__name__)

COIN = 0


class BiasMode(Enum):
    UNBIASED = "unbiased"
    UNIFORM = "uniform"
    PER_PEG = "per_peg"


@dataclass(frozen=True)
class PegBias:
    """
    Coin rotation of a biased peg.

    Attributes:
        theta: RX angle applied to the coin qubit
    """

    theta: AngleValue

    @property
    def p_left(self) -> float:
        """Probability of the coin reading 1 (ball to the lower-index output)."""
        return math.sin(self.theta.radians / 2) ** 2

    @property
    def p_right(self) -> float:
        return math.cos(self.theta.radians / 2) ** 2


def peg_count(levels: int) -> int:
    return levels * (levels + 1) // 2


def peg_centres(row: int, levels: int) -> List[int]:
    """Working-qubit index of each peg on `row` (1-based), left to right."""
    if not 1 <= row <= levels:
        raise ValueError(f"Row {row} outside 1..{levels}")
    first = (levels + 1) - (row - 1)
    return [first + 2 * j for j in range(row)]


def _check_levels(levels: int) -> None:
    if not isinstance(levels, int) or levels < 1:
        raise ValueError(f"Board needs at least one level, got {levels!r}")


def _peg_ops(builder: CircuitBuilder, a: int, b: int, c: int) -> None:
    # ball on b moves to a or c depending on the coin; the CX re-arms the coin
    builder.cswap(COIN, a, b)
    builder.cx(b, COIN)
    builder.cswap(COIN, b, c)


def build_peg() -> Circuit:
    """
    Single quantum peg on 4 qubits.

    The ball enters on q2 and leaves on q1 or q3 with probability 1/2 each.
    """
    builder = CircuitBuilder(4, 2)
    builder.h(COIN).x(2)
    _peg_ops(builder, 1, 2, 3)
    builder.measure(1, 0).measure(3, 1)
    return builder.build()


def build_biased_peg(theta: AngleValue) -> Circuit:
    """
    Single peg whose coin is RX(theta) instead of H.

    Args:
        theta: Coin angle; the ball reaches q1 with probability sin^2(theta/2)

    Returns:
        4-qubit circuit measuring q1 -> c0 and q3 -> c1
    """
    builder = CircuitBuilder(4, 2)
    builder.reset(COIN).rx(COIN, theta).x(2)
    _peg_ops(builder, 1, 2, 3)
    builder.measure(1, 0).measure(3, 1)
    return builder.build()


def _traverse_level(builder: CircuitBuilder, row: int, levels: int) -> None:
    centres = peg_centres(row, levels)
    first, last = centres[0], centres[-1]

    if row == levels:
        # final level: one ascending chain across every peg
        for t in range(first - 1, last + 1):
            builder.cswap(COIN, t, t + 1)
            if t != last:
                builder.cx(t + 1, COIN)
        return

    _peg_ops(builder, first - 1, first, first + 1)
    if row == 1:
        return
    builder.cx(first + 1, COIN)
    stop = centres[1] - 1
    for t in range(last, stop - 1, -1):
        builder.cswap(COIN, t, t + 1)
        if t != stop:
            builder.cx(t, COIN)


def _build_board(levels: int, theta: Optional[AngleValue]) -> Circuit:
    _check_levels(levels)
    width = 2 * levels + 2
    builder = CircuitBuilder(width, width)

    for row in range(1, levels + 1):
        builder.reset(COIN)
        if row == 1:
            builder.x(levels + 1)
        if theta is None:
            builder.h(COIN)
        else:
            builder.rx(COIN, theta)
        _traverse_level(builder, row, levels)

    for q in range(1, width):
        builder.measure(q, q)
    return builder.build()


def build_qgb(levels: int) -> Circuit:
    """
    Unbiased n-level board with Hadamard coins.

    Each level resets and re-flips the coin, then sweeps it across the row.
    Ball paths never share a control value, so the readout follows
    Binomial(n, 1/2).

    Args:
        levels: Number of peg rows (n >= 1)

    Returns:
        Circuit on 2n+2 qubits and 2n+2 classical bits
    """
    circuit = _build_board(levels, None)
    logger.debug(f"Unbiased board: {levels} levels, {len(circuit)} ops")
    return circuit


def build_biased_qgb(levels: int, theta: AngleValue) -> Circuit:
    """Same layout as build_qgb with every H coin replaced by RX(theta)."""
    circuit = _build_board(levels, theta)
    logger.debug(f"Biased board: {levels} levels, theta={theta}, {len(circuit)} ops")
    return circuit


def build_fine_grained_qgb(levels: int, angles: Sequence[AngleValue]) -> Circuit:
    """
    Board with an independent coin angle for every peg.

    Every peg resets its coin and applies its own RX. After each row from the
    second on, the row is fenced by two barriers and the duplicate ball images
    left right of the leftmost peg are removed by a CX onto the neighbour and a
    RESET; those corrections ride along with the first peg of the next row, or
    run just before readout after the last row.

    Args:
        levels: Number of peg rows (n >= 1)
        angles: n(n+1)/2 coin angles, row-major from the top row

    Returns:
        Circuit on 2n+2 qubits and 2n+2 classical bits

    Raises:
        ValueError: If the angle list length is not the peg count
    """
    _check_levels(levels)
    angles = list(angles)
    if len(angles) != peg_count(levels):
        raise ValueError(
            f"{levels}-level board has {peg_count(levels)} pegs, got {len(angles)} angles"
        )

    width = 2 * levels + 2
    builder = CircuitBuilder(width, width)
    pending: List[int] = []
    angle_iter = iter(angles)

    for row in range(1, levels + 1):
        for j, centre in enumerate(peg_centres(row, levels)):
            builder.reset(COIN)
            if row == 1:
                builder.x(levels + 1)
            if j == 0 and pending:
                for c in pending:
                    builder.cx(c, c - 1)
                builder.rx(COIN, next(angle_iter))
                for c in pending:
                    builder.reset(c)
                pending = []
            else:
                builder.rx(COIN, next(angle_iter))
            _peg_ops(builder, centre - 1, centre, centre + 1)

        if row >= 2:
            builder.barrier(*range(0, levels + 1))
            builder.barrier(*range(levels + 1, width))
            pending = peg_centres(row, levels)[1:]

    for c in pending:
        builder.cx(c, c - 1)
    for c in pending:
        builder.reset(c)

    for q in range(1, width):
        builder.measure(q, q)
    circuit = builder.build()
    logger.debug(f"Fine-grained board: {levels} levels, {len(circuit)} ops")
    return circuit


@dataclass(frozen=True)
class QgbSpec:
    """
    Description of a board to build.

    Attributes:
        levels: Number of peg rows
        theta: Uniform coin angle (biased board), or None
        angles: Per-peg coin angles (fine-grained board), or None
    """

    levels: int
    theta: Optional[AngleValue] = None
    angles: Optional[Sequence[AngleValue]] = None

    def __post_init__(self):
        _check_levels(self.levels)
        if self.theta is not None and self.angles is not None:
            raise ValueError("Give either a uniform angle or per-peg angles, not both")
        if self.angles is not None:
            object.__setattr__(self, "angles", tuple(self.angles))
            if len(self.angles) != peg_count(self.levels):
                raise ValueError(
                    f"{self.levels}-level board has {peg_count(self.levels)} pegs, "
                    f"got {len(self.angles)} angles"
                )

    @property
    def mode(self) -> BiasMode:
        if self.angles is not None:
            return BiasMode.PER_PEG
        if self.theta is not None:
            return BiasMode.UNIFORM
        return BiasMode.UNBIASED

    @property
    def variant(self) -> BoundVariant:
        return {
            BiasMode.UNBIASED: BoundVariant.UNBIASED,
            BiasMode.UNIFORM: BoundVariant.BIASED,
            BiasMode.PER_PEG: BoundVariant.FINE,
        }[self.mode]

    def build(self) -> Circuit:
        if self.mode is BiasMode.PER_PEG:
            return build_fine_grained_qgb(self.levels, self.angles)
        if self.mode is BiasMode.UNIFORM:
            return build_biased_qgb(self.levels, self.theta)
        return build_qgb(self.levels)
