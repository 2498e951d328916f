"""
Statevector simulation: kernels, seeded shot sampling and the exact oracle.
"""

from simulators.exact import BranchBudgetExceeded, OutcomeDistribution, exact_distribution
from simulators.rng import shot_rng
from simulators.shots import Histogram, ShotResult, ShotSampler, run_memory, run_shot, run_shots
from simulators.statevector import (
    StateVector,
    apply_gate,
    canonical_form,
    measure_qubit,
    prepare_state,
    project,
    reset_qubit,
)

__all__ = [
    "BranchBudgetExceeded",
    "Histogram",
    "OutcomeDistribution",
    "ShotResult",
    "ShotSampler",
    "StateVector",
    "apply_gate",
    "canonical_form",
    "exact_distribution",
    "measure_qubit",
    "prepare_state",
    "project",
    "reset_qubit",
    "run_memory",
    "run_shot",
    "run_shots",
    "shot_rng",
]
