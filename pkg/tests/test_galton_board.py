"""
Tests for peg and board builders, bias laws and gate-count bounds
"""
import math

import pytest

from circuits import AngleValue, GateKind, gate_count, validate
from galton_board import (
    BiasMode,
    BoundVariant,
    PegBias,
    QgbSpec,
    build_biased_peg,
    build_biased_qgb,
    build_fine_grained_qgb,
    build_peg,
    build_qgb,
    gate_bound,
    peg_centres,
    peg_count,
)
from galton_stats import binomial_reference, decode_distribution
from simulators import exact_distribution

TWO_PI_3 = AngleValue.from_pi_fraction(2, 3)
HALF_PI = AngleValue.from_pi_fraction(1, 2)


def decoded(circuit, levels):
    values, invalid = decode_distribution(exact_distribution(circuit).probabilities, levels)
    assert invalid == pytest.approx(0.0, abs=1e-12)
    return values


def test_peg_layout():
    ops = build_peg().ops
    assert [op.kind for op in ops] == [
        GateKind.H,
        GateKind.X,
        GateKind.CSWAP,
        GateKind.CX,
        GateKind.CSWAP,
        GateKind.MEASURE,
        GateKind.MEASURE,
    ]
    assert ops[2].qubits == (0, 1, 2)
    assert ops[3].qubits == (2, 0)
    assert ops[4].qubits == (0, 2, 3)
    assert (ops[5].qubits, ops[5].clbit) == ((1,), 0)
    assert (ops[6].qubits, ops[6].clbit) == ((3,), 1)


def test_biased_peg_layout():
    kinds = [op.kind for op in build_biased_peg(TWO_PI_3).ops]
    assert kinds[:3] == [GateKind.RESET, GateKind.RX, GateKind.X]


@pytest.mark.parametrize(
    "num, den",
    [(0, 1), (1, 3), (1, 2), (2, 3), (1, 1)],
)
def test_biased_peg_follows_sin_squared(num, den):
    theta = AngleValue.from_pi_fraction(num, den)
    distribution = exact_distribution(build_biased_peg(theta))
    upper = math.sin(theta.radians / 2) ** 2
    assert distribution.probability("01") == pytest.approx(upper, abs=1e-10)
    assert distribution.probability("10") == pytest.approx(1 - upper, abs=1e-10)
    assert PegBias(theta).p_left == pytest.approx(upper)


def test_biased_peg_two_pi_thirds_and_flip():
    assert exact_distribution(build_biased_peg(TWO_PI_3)).probability("01") == pytest.approx(0.75, abs=1e-10)
    flipped = exact_distribution(build_biased_peg(AngleValue.from_pi_fraction(1, 3)))
    assert flipped.probability("01") == pytest.approx(0.25, abs=1e-10)


def test_zero_angle_sends_ball_to_lower_output():
    distribution = exact_distribution(build_biased_peg(AngleValue.from_pi_fraction(0)))
    assert distribution.probabilities == {"10": pytest.approx(1.0)}


def test_peg_bias_half_pi():
    bias = PegBias(HALF_PI)
    assert bias.p_left == pytest.approx(0.5)
    assert bias.p_left + bias.p_right == pytest.approx(1.0)


def test_peg_centres():
    assert peg_centres(1, 4) == [5]
    assert peg_centres(2, 4) == [4, 6]
    assert peg_centres(4, 4) == [2, 4, 6, 8]
    with pytest.raises(ValueError):
        peg_centres(5, 4)
    assert peg_count(4) == 10


@pytest.mark.parametrize("levels", range(1, 9))
def test_unbiased_count_identity(levels):
    circuit = build_qgb(levels)
    counts = gate_count(circuit)
    n = levels
    assert counts.as_dict() == {
        "H": n,
        "RESET": n,
        "X": 1,
        "CSWAP": n * (n + 1),
        "CX": n * n,
        "MEASURE": 2 * n + 1,
    }
    assert counts.total == gate_bound(n, BoundVariant.UNBIASED) == 2 * n * n + 5 * n + 2
    assert circuit.nq == circuit.nc == 2 * n + 2


@pytest.mark.parametrize("levels", range(1, 9))
def test_biased_count_within_bound(levels):
    circuit = build_biased_qgb(levels, TWO_PI_3)
    assert gate_count(circuit).total <= gate_bound(levels, "biased")
    assert circuit.count(GateKind.H) == 0
    assert circuit.count(GateKind.RX) == levels


@pytest.mark.parametrize("levels", range(1, 6))
def test_unbiased_board_is_binomial(levels):
    values = decoded(build_qgb(levels), levels)
    reference = binomial_reference(levels, 0.5).table
    for k in range(levels + 1):
        assert values[k] == pytest.approx(reference[k], abs=1e-10)


@pytest.mark.parametrize("levels", range(1, 5))
def test_half_pi_rotation_matches_hadamard_board(levels):
    assert decoded(build_biased_qgb(levels, HALF_PI), levels) == pytest.approx(
        decoded(build_qgb(levels), levels), abs=1e-10
    )


def test_single_level_biased_board():
    values = decoded(build_biased_qgb(1, TWO_PI_3), 1)
    assert values[0] == pytest.approx(0.75, abs=1e-10)
    assert values[1] == pytest.approx(0.25, abs=1e-10)


def test_biased_four_level_law():
    values = decoded(build_biased_qgb(4, TWO_PI_3), 4)
    expected = {0: 81 / 256, 1: 66 / 256, 2: 58 / 256, 3: 42 / 256, 4: 9 / 256}
    for k, p in expected.items():
        assert values[k] == pytest.approx(p, abs=1e-10)


def test_fine_grained_counts_at_four_levels():
    circuit = build_fine_grained_qgb(4, [TWO_PI_3] * 10)
    counts = gate_count(circuit)
    assert counts.as_dict() == {
        "CSWAP": 20,
        "CX": 16,
        "RX": 10,
        "RESET": 16,
        "X": 1,
        "MEASURE": 9,
        "BARRIER": 6,
    }
    assert counts.total == 72
    assert gate_bound(4, "fine") == 61


def test_fine_grained_barriers_split_register():
    circuit = build_fine_grained_qgb(4, [TWO_PI_3] * 10)
    barriers = [op.qubits for op in circuit.ops if op.kind is GateKind.BARRIER]
    assert barriers[:2] == [(0, 1, 2, 3, 4), (5, 6, 7, 8, 9)]


@pytest.mark.parametrize("levels", range(2, 5))
def test_fine_grained_half_pi_reproduces_unbiased(levels):
    fine = decoded(build_fine_grained_qgb(levels, [HALF_PI] * peg_count(levels)), levels)
    assert fine == pytest.approx(decoded(build_qgb(levels), levels), abs=1e-10)


def test_fine_grained_uniform_angle_is_binomial():
    values = decoded(build_fine_grained_qgb(4, [TWO_PI_3] * 10), 4)
    reference = binomial_reference(4, 0.25).table
    for k in range(5):
        assert values[k] == pytest.approx(reference[k], abs=1e-10)


def test_fine_grained_per_peg_angles():
    # top peg always sends the ball right; the rest are fair
    angles = [AngleValue.from_pi_fraction(0)] + [HALF_PI] * 2
    values = decoded(build_fine_grained_qgb(2, angles), 2)
    assert values == pytest.approx({0: 0.0, 1: 0.5, 2: 0.5}, abs=1e-10)


def test_fine_grained_rejects_wrong_length():
    with pytest.raises(ValueError):
        build_fine_grained_qgb(3, [HALF_PI] * 5)


def test_levels_must_be_positive():
    with pytest.raises(ValueError):
        build_qgb(0)
    with pytest.raises(ValueError):
        build_biased_qgb(0, TWO_PI_3)


@pytest.mark.parametrize("levels", range(1, 5))
def test_every_outcome_is_one_hot(levels):
    for circuit in (build_qgb(levels), build_biased_qgb(levels, TWO_PI_3)):
        validate(circuit)
        decoded(circuit, levels)


def test_gate_bounds():
    assert gate_bound(4, BoundVariant.UNBIASED) == 54
    assert gate_bound(4, BoundVariant.BIASED) == 66
    assert gate_bound(4, BoundVariant.FINE) == 61
    with pytest.raises(ValueError):
        gate_bound(0, "unbiased")


def test_board_description_dispatch():
    assert QgbSpec(3).mode is BiasMode.UNBIASED
    assert QgbSpec(3).build() == build_qgb(3)
    uniform = QgbSpec(3, theta=TWO_PI_3)
    assert uniform.variant is BoundVariant.BIASED
    assert uniform.build() == build_biased_qgb(3, TWO_PI_3)
    per_peg = QgbSpec(2, angles=[HALF_PI] * 3)
    assert per_peg.variant is BoundVariant.FINE
    assert per_peg.build() == build_fine_grained_qgb(2, [HALF_PI] * 3)
    with pytest.raises(ValueError):
        QgbSpec(2, angles=[HALF_PI] * 2)
    with pytest.raises(ValueError):
        QgbSpec(2, theta=HALF_PI, angles=[HALF_PI] * 3)
