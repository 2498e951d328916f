"""
Tests for the circuit IR, validation, gate counts, depth and CSWAP decomposition
"""
import math
from fractions import Fraction

import pytest

from circuits import (
    AngleValue,
    Circuit,
    CircuitBuilder,
    CircuitValidationError,
    GateKind,
    GateOp,
    decompose_cswap,
    depth,
    gate_count,
    is_valid,
    validate,
)
from circuits.decompose import OPS_PER_CSWAP
from galton_board import build_biased_peg, build_biased_qgb, build_fine_grained_qgb, build_peg, build_qgb, peg_count


def test_angle_from_pi_fraction_reduces():
    angle = AngleValue.from_pi_fraction(4, 6)
    assert angle.exact == Fraction(2, 3)
    assert angle.numerator == 2 and angle.denominator == 3
    assert angle.radians == pytest.approx(2 * math.pi / 3)


def test_angle_rejects_non_finite():
    with pytest.raises(ValueError):
        AngleValue.from_radians(float("inf"))


def test_builder_produces_immutable_circuit():
    circuit = CircuitBuilder(2, 1).h(0).cx(0, 1).measure(1, 0).build()
    assert len(circuit) == 3
    assert [op.kind for op in circuit] == [GateKind.H, GateKind.CX, GateKind.MEASURE]
    assert circuit.count(GateKind.CX) == 1
    with pytest.raises(AttributeError):
        circuit.nq = 3


@pytest.mark.parametrize(
    "op, rule",
    [
        (GateOp(GateKind.CX, (0,)), "arity"),
        (GateOp(GateKind.X, (5,)), "qubit-range"),
        (GateOp(GateKind.CSWAP, (0, 1, 1)), "duplicate-qubit"),
        (GateOp(GateKind.MEASURE, (0,)), "measure-clbit"),
        (GateOp(GateKind.MEASURE, (0,), clbit=3), "clbit-range"),
        (GateOp(GateKind.H, (0,), clbit=0), "unexpected-clbit"),
        (GateOp(GateKind.RX, (0,)), "angle"),
        (GateOp(GateKind.H, (0,), angle=AngleValue.from_radians(1.0)), "angle"),
    ],
)
def test_validate_reports_rule_and_index(op, rule):
    circuit = Circuit(3, 1, (GateOp(GateKind.H, (0,)), op))
    with pytest.raises(CircuitValidationError) as e:
        validate(circuit)
    assert e.value.rule == rule
    assert e.value.op_index == 1
    assert not is_valid(circuit)


def test_validate_rejects_empty_register():
    with pytest.raises(CircuitValidationError):
        validate(Circuit(0, 0, ()))


def test_gate_count_of_peg():
    counts = gate_count(build_peg())
    assert counts.as_dict() == {"H": 1, "X": 1, "CSWAP": 2, "CX": 1, "MEASURE": 2}
    assert counts.total == 7
    assert counts.barriers == 0


def test_barriers_excluded_from_total():
    circuit = CircuitBuilder(2, 0).h(0).barrier(0, 1).x(1).build()
    counts = gate_count(circuit)
    assert counts.total == 2
    assert counts.barriers == 1
    assert counts[GateKind.BARRIER] == 1


def test_depth_of_peg():
    assert depth(build_peg()) == 5


def test_depth_empty_and_parallel():
    assert depth(Circuit(3, 0, ())) == 0
    assert depth(CircuitBuilder(3, 0).h(0).h(1).h(2).build()) == 1


def test_barrier_fences_layers():
    # without the barrier x q1 would share layer 1 with h q0
    fenced = CircuitBuilder(2, 0).h(0).h(0).barrier(0, 1).x(1).build()
    assert depth(fenced) == 3


def test_decompose_removes_every_cswap():
    peg = build_peg()
    decomposed = decompose_cswap(peg)
    counts = gate_count(decomposed)
    assert counts[GateKind.CSWAP] == 0
    assert counts[GateKind.CX] == 1 + 2 * 8
    assert counts[GateKind.T] == 8
    assert counts[GateKind.TDG] == 6
    assert counts.total == peg.count(GateKind.CSWAP) * (OPS_PER_CSWAP - 1) + len(peg)
    assert counts.total - counts[GateKind.MEASURE] == 37


def test_decompose_without_cswap_returns_same_circuit():
    circuit = CircuitBuilder(1, 1).h(0).measure(0, 0).build()
    assert decompose_cswap(circuit) is circuit


def test_decomposed_biased_peg_is_valid():
    validate(decompose_cswap(build_biased_peg(AngleValue.from_pi_fraction(2, 3))))


@pytest.mark.parametrize("levels", range(1, 5))
def test_decomposition_never_reduces_depth(levels):
    theta = AngleValue.from_pi_fraction(2, 3)
    circuits = [
        build_peg(),
        build_biased_peg(theta),
        build_qgb(levels),
        build_biased_qgb(levels, theta),
        build_fine_grained_qgb(levels, [theta] * peg_count(levels)),
    ]
    for circuit in circuits:
        assert depth(decompose_cswap(circuit)) >= depth(circuit)
