"""
exact.py - Exact outcome distribution by enumerating measurement branches
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

from circuits.analysis import validate
from circuits.ir import Circuit, GateKind, GateOp
from simulators.shots import render_bits
from simulators.statevector import StateVector, apply_gate, canonical_form, project

logger = logging.getLogger(__name__)

DEFAULT_BRANCH_BUDGET = 1 << 20
# branch weights below this are dropped
PRUNE_WEIGHT = 1e-14


class BranchBudgetExceeded(RuntimeError):
    """Raised when the live branch count outgrows the budget."""

    def __init__(self, branches: int, budget: int, op_index: int):
        super().__init__(f"{branches} live branches after op {op_index} exceed budget {budget}")
        self.branches = branches
        self.budget = budget
        self.op_index = op_index


@dataclass(frozen=True)
class OutcomeDistribution:
    """
    Exact probabilities of classical-register outcomes.

    Attributes:
        probabilities: Bitstring (highest index first) -> probability
        nc: Classical register width
    """

    probabilities: Dict[str, float]
    nc: int

    def probability(self, bits: str) -> float:
        return self.probabilities.get(bits, 0.0)

    def items(self) -> List[Tuple[str, float]]:
        return sorted(self.probabilities.items())

    def total(self) -> float:
        return sum(self.probabilities.values())


def exact_distribution(circuit: Circuit, branch_budget: int = DEFAULT_BRANCH_BUDGET) -> OutcomeDistribution:
    """
    Enumerate every RESET/MEASURE branch with its Born weight.

    Branches that share classical bits and a canonical state are merged, which
    keeps traversal circuits (where paths never interfere) at one branch per
    reachable peg configuration.

    Args:
        circuit: Valid circuit
        branch_budget: Maximum number of live branches

    Returns:
        OutcomeDistribution whose probabilities sum to 1

    Raises:
        BranchBudgetExceeded: If the branch set grows past the budget
    """
    validate(circuit)
    # each branch: [weight, classical bits, state]
    branches: List[list] = [[1.0, (0,) * circuit.nc, StateVector.zero(circuit.nq)]]
    peak = 1

    for i, op in enumerate(circuit.ops):
        if op.kind is GateKind.BARRIER:
            continue
        if op.kind.is_unitary:
            for branch in branches:
                branch[2] = apply_gate(branch[2], op)
            continue

        q = op.qubits[0]
        merged: Dict[Tuple[Tuple[int, ...], bytes], list] = {}
        for weight, bits, state in branches:
            p1 = state.probability_of_one(q)
            for outcome, p in ((0, 1.0 - p1), (1, p1)):
                if weight * p <= PRUNE_WEIGHT:
                    continue
                post = project(state, q, outcome)
                if op.kind is GateKind.RESET and outcome:
                    post = apply_gate(post, GateOp(GateKind.X, (q,)))
                new_bits = bits
                if op.kind is GateKind.MEASURE:
                    new_bits = bits[: op.clbit] + (outcome,) + bits[op.clbit + 1:]
                key, _ = canonical_form(post)
                entry = merged.get((new_bits, key))
                if entry is None:
                    merged[(new_bits, key)] = [weight * p, new_bits, post]
                else:
                    entry[0] += weight * p

        if len(merged) > branch_budget:
            raise BranchBudgetExceeded(len(merged), branch_budget, i)
        branches = list(merged.values())
        peak = max(peak, len(branches))

    probabilities: Dict[str, float] = {}
    for weight, bits, _ in branches:
        label = render_bits(bits)
        probabilities[label] = probabilities.get(label, 0.0) + weight

    logger.debug(f"Exact run kept at most {peak} branches, {len(probabilities)} outcomes")
    return OutcomeDistribution(probabilities, circuit.nc)
