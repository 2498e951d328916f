"""
statevector.py - Dense statevector kernels with measurement and reset

Basis index bit k holds qubit k, so qubit 0 is the least-significant bit and
a ket |q3 q2 q1 q0> reads as the binary index of its amplitude.
"""
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

import numpy as np

from circuits.ir import Circuit, GateKind, GateOp
from simulators.rng import shot_rng

logger = logging.getLogger(__name__)

# probabilities closer than this to 0 or 1 are treated as exact
PROBABILITY_SNAP = 1e-14

_SQRT1_2 = 1 / math.sqrt(2)
_FIXED_MATRICES = {
    GateKind.H: np.array([[_SQRT1_2, _SQRT1_2], [_SQRT1_2, -_SQRT1_2]], dtype=complex),
    GateKind.T: np.array([[1, 0], [0, np.exp(1j * math.pi / 4)]], dtype=complex),
    GateKind.TDG: np.array([[1, 0], [0, np.exp(-1j * math.pi / 4)]], dtype=complex),
}
_PERMUTATION_KINDS = (GateKind.X, GateKind.CX, GateKind.SWAP, GateKind.CSWAP)


@dataclass(frozen=True, eq=False)
class StateVector:
    """
    Pure state of nq qubits.

    Attributes:
        nq: Qubit count
        amps: 2**nq complex amplitudes
    """

    nq: int
    amps: np.ndarray

    def __post_init__(self):
        if self.amps.shape != (1 << self.nq,):
            raise ValueError(f"Expected {1 << self.nq} amplitudes, got {self.amps.shape}")

    @classmethod
    def zero(cls, nq: int) -> "StateVector":
        return cls.basis(nq, 0)

    @classmethod
    def basis(cls, nq: int, index: int) -> "StateVector":
        amps = np.zeros(1 << nq, dtype=complex)
        amps[index] = 1.0
        return cls(nq, amps)

    def norm(self) -> float:
        return float(np.vdot(self.amps, self.amps).real)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2

    def probability_of_one(self, q: int) -> float:
        """Born probability that qubit q reads 1 (snapped to 0/1 near the ends)."""
        idx0, idx1 = _pair_indices(self.nq, q)
        p0 = float(np.sum(np.abs(self.amps[idx0]) ** 2))
        p1 = float(np.sum(np.abs(self.amps[idx1]) ** 2))
        total = p0 + p1
        p1 = p1 / total if total > 0 else 0.0
        if p1 < PROBABILITY_SNAP:
            return 0.0
        if p1 > 1 - PROBABILITY_SNAP:
            return 1.0
        return p1


@lru_cache(maxsize=None)
def _pair_indices(nq: int, q: int) -> Tuple[np.ndarray, np.ndarray]:
    """Indices with bit q clear and their partners with bit q set."""
    idx = np.arange(1 << nq)
    idx0 = idx[((idx >> q) & 1) == 0]
    return idx0, idx0 | (1 << q)


@lru_cache(maxsize=None)
def _permutation(nq: int, kind: GateKind, qubits: Tuple[int, ...]) -> np.ndarray:
    """Basis permutation for X/CX/SWAP/CSWAP; each is an involution."""
    idx = np.arange(1 << nq)
    if kind is GateKind.X:
        return idx ^ (1 << qubits[0])
    if kind is GateKind.CX:
        control, target = qubits
        return idx ^ (((idx >> control) & 1) << target)

    if kind is GateKind.SWAP:
        a, b = qubits
        fire = ((idx >> a) ^ (idx >> b)) & 1
    else:
        control, a, b = qubits
        fire = ((idx >> a) ^ (idx >> b)) & (idx >> control) & 1
    return idx ^ (fire * ((1 << a) | (1 << b)))


def gate_matrix(op: GateOp) -> np.ndarray:
    """2x2 matrix of a non-permutation single-qubit gate."""
    if op.kind is GateKind.RX:
        half = op.angle.radians / 2
        c, s = math.cos(half), math.sin(half)
        return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)
    return _FIXED_MATRICES[op.kind]


def _apply_matrix(amps: np.ndarray, nq: int, q: int, matrix: np.ndarray) -> np.ndarray:
    idx0, idx1 = _pair_indices(nq, q)
    a, b = amps[idx0], amps[idx1]
    out = np.empty_like(amps)
    out[idx0] = matrix[0, 0] * a + matrix[0, 1] * b
    out[idx1] = matrix[1, 0] * a + matrix[1, 1] * b
    return out


def apply_gate(state: StateVector, op: GateOp) -> StateVector:
    """
    Apply a unitary instruction.

    Args:
        state: Input state (left untouched)
        op: H, X, RX, T, TDG, CX, SWAP or CSWAP

    Returns:
        The transformed state

    Raises:
        ValueError: For RESET/MEASURE/BARRIER or operands outside the register
    """
    if not op.kind.is_unitary:
        raise ValueError(f"{op.kind.name} is not a unitary gate")
    for q in op.qubits:
        if not 0 <= q < state.nq:
            raise ValueError(f"Qubit {q} outside {state.nq}-qubit state")

    if op.kind in _PERMUTATION_KINDS:
        amps = state.amps[_permutation(state.nq, op.kind, op.qubits)]
    else:
        amps = _apply_matrix(state.amps, state.nq, op.qubits[0], gate_matrix(op))
    return StateVector(state.nq, amps)


def project(state: StateVector, q: int, bit: int) -> StateVector:
    """
    Collapse qubit q onto `bit` and renormalise.

    Raises:
        RuntimeError: If the requested branch has (numerically) zero weight
    """
    idx0, idx1 = _pair_indices(state.nq, q)
    keep, drop = (idx1, idx0) if bit else (idx0, idx1)
    weight = float(np.sum(np.abs(state.amps[keep]) ** 2))
    if weight <= PROBABILITY_SNAP:
        raise RuntimeError(f"Degenerate projection of qubit {q} onto {bit} (weight {weight:.3e})")
    amps = state.amps.copy()
    amps[drop] = 0.0
    amps /= math.sqrt(weight)
    return StateVector(state.nq, amps)


def measure_qubit(state: StateVector, q: int, randomness: float) -> Tuple[int, StateVector]:
    """
    Born-rule measurement of one qubit.

    Args:
        state: State to measure
        q: Qubit index
        randomness: Uniform draw in [0, 1); the outcome is 1 exactly when it is
            below the probability of reading 1

    Returns:
        (bit, collapsed state)
    """
    bit = 1 if randomness < state.probability_of_one(q) else 0
    return bit, project(state, q, bit)


def reset_qubit(state: StateVector, q: int, randomness: float) -> StateVector:
    """Measure qubit q and flip it back to |0> when it read 1."""
    bit, collapsed = measure_qubit(state, q, randomness)
    if bit:
        collapsed = apply_gate(collapsed, GateOp(GateKind.X, (q,)))
    return collapsed


def canonical_form(state: StateVector, decimals: int = 12) -> Tuple[bytes, StateVector]:
    """
    Remove the global phase and round, giving a hashable key for the state.

    The phase reference is the first amplitude of non-negligible magnitude, so
    states equal up to global phase share a key.

    Returns:
        (key, rounded phase-normalised state)
    """
    magnitudes = np.abs(state.amps)
    lead = int(np.flatnonzero(magnitudes > 1e-6)[0])
    phase = state.amps[lead] / magnitudes[lead]
    # + 0.0 folds negative zeros so equal states hash equal
    amps = np.round(state.amps * np.conj(phase), decimals) + 0.0
    return amps.tobytes(), StateVector(state.nq, amps)


def prepare_state(circuit: Circuit, seed: int = 0) -> StateVector:
    """
    Run a circuit up to its first MEASURE and return the state at that point.

    RESETs draw from the shot-0 stream of `seed`.
    """
    rng = shot_rng(seed, 0)
    state = StateVector.zero(circuit.nq)
    for op in circuit.ops:
        if op.kind is GateKind.MEASURE:
            break
        if op.kind is GateKind.BARRIER:
            continue
        if op.kind is GateKind.RESET:
            state = reset_qubit(state, op.qubits[0], rng.random())
        else:
            state = apply_gate(state, op)
    return state
