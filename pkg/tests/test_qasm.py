"""
Tests for the OpenQASM lexer, parser, lowering and emitter against the reference listings
"""
import pytest

from circuits import AngleValue, Circuit, GateKind, decompose_cswap, gate_count
from galton_board import build_biased_qgb, build_fine_grained_qgb, build_peg, build_qgb
from qasm_io import (
    QasmSyntaxError,
    emit,
    format_angle,
    load_circuit,
    loads,
    lower,
    parse,
    parse_angle,
    tokens,
)
from simulators import exact_distribution

TWO_PI_3 = AngleValue.from_pi_fraction(2, 3)
HEADER = 'OPENQASM 2.0;\ninclude "qelib1.inc";\n'


def test_emit_matches_unbiased_listing(unbiased_text):
    assert tokens(emit(build_qgb(4))) == tokens(unbiased_text)


def test_emit_matches_biased_listing(biased_text):
    assert tokens(emit(build_biased_qgb(4, TWO_PI_3))) == tokens(biased_text)


def test_emit_matches_fine_grained_listing(fine_text):
    assert tokens(emit(build_fine_grained_qgb(4, [TWO_PI_3] * 10))) == tokens(fine_text)


def test_listings_lower_to_builder_output(unbiased_text, biased_text, fine_text):
    assert loads(unbiased_text) == build_qgb(4)
    assert loads(biased_text) == build_biased_qgb(4, TWO_PI_3)
    assert loads(fine_text) == build_fine_grained_qgb(4, [TWO_PI_3] * 10)


def test_unbiased_listing_structure(unbiased_text):
    program = parse(unbiased_text)
    assert program.version == "2.0"
    assert program.includes == ["qelib1.inc"]
    assert (program.qreg.name, program.qreg.size) == ("q", 10)
    assert (program.creg.name, program.creg.size) == ("c", 10)
    assert len(program.statements) == 54

    counts = gate_count(lower(program))
    assert counts.as_dict() == {"CSWAP": 20, "CX": 16, "H": 4, "RESET": 4, "X": 1, "MEASURE": 9}


def test_statement_spans_are_ordered(unbiased_text):
    spans = [(s.span.line, s.span.column) for s in parse(unbiased_text).statements]
    assert spans == sorted(spans)
    assert spans[0] == (7, 1)


def test_rx_angle_is_exact():
    program = parse(HEADER + "qreg q[1];\nrx(2*pi/3) q[0];\n")
    angle = program.statements[0].angle
    assert angle.exact is not None
    assert (angle.numerator, angle.denominator) == (2, 3)
    assert angle == TWO_PI_3


@pytest.mark.parametrize(
    "circuit",
    [
        build_peg(),
        build_qgb(3),
        build_biased_qgb(3, AngleValue.from_pi_fraction(1, 3)),
        build_fine_grained_qgb(4, [TWO_PI_3] * 10),
        decompose_cswap(build_peg()),
    ],
)
def test_emit_then_lower_is_identity(circuit):
    assert loads(emit(circuit)) == circuit


def test_listings_are_fixed_points(unbiased_text, biased_text, fine_text):
    for text in (unbiased_text, biased_text, fine_text):
        assert tokens(emit(loads(text))) == tokens(text)


def test_decimal_angle_round_trip():
    circuit = loads(HEADER + "qreg q[1];\nrx(1.0472) q[0];\n")
    angle = circuit.ops[0].angle
    assert angle.exact is None
    assert angle.radians == pytest.approx(1.0472)
    assert loads(emit(circuit)) == circuit


@pytest.mark.parametrize(
    "circuit",
    [
        build_biased_qgb(2, AngleValue.from_radians(1 / 3)),
        build_fine_grained_qgb(2, [AngleValue.from_radians(r) for r in (0.1, 1 / 7, 2.5)]),
    ],
)
def test_decimal_angles_round_trip_within_tolerance(circuit):
    reread = loads(emit(circuit))
    assert (reread.nq, reread.nc) == (circuit.nq, circuit.nc)
    assert len(reread.ops) == len(circuit.ops)
    for got, want in zip(reread.ops, circuit.ops):
        assert (got.kind, got.qubits, got.clbit) == (want.kind, want.qubits, want.clbit)
        if want.angle is None:
            assert got.angle is None
        else:
            assert got.angle.radians == pytest.approx(want.angle.radians, rel=1e-11, abs=1e-12)


def test_fine_grained_listing_matches_builder_law(fine_text):
    from_listing = exact_distribution(loads(fine_text)).probabilities
    from_builder = exact_distribution(build_fine_grained_qgb(4, [TWO_PI_3] * 10)).probabilities
    assert set(from_listing) == set(from_builder)
    for key, p in from_builder.items():
        assert from_listing[key] == pytest.approx(p, abs=1e-12)


def test_empty_program():
    assert loads(HEADER + "qreg q[1];\ncreg c[1];\n") == Circuit(1, 1, ())


def test_no_quantum_register():
    with pytest.raises(ValueError):
        loads(HEADER)


def test_comments_and_whitespace_ignored():
    text = HEADER + "qreg q[2];   // two qubits\n\n  cx   q[0] ,q[1] ;\n"
    circuit = loads(text)
    assert circuit.ops[0].kind is GateKind.CX
    assert circuit.ops[0].qubits == (0, 1)


def test_whole_register_barrier():
    circuit = loads(HEADER + "qreg q[3];\nbarrier q;\n")
    assert circuit.ops[0].qubits == (0, 1, 2)


def test_swap_kept_as_its_own_kind():
    circuit = loads(HEADER + "qreg q[2];\nswap q[0],q[1];\n")
    assert circuit.ops[0].kind is GateKind.SWAP


def test_unknown_gate():
    with pytest.raises(QasmSyntaxError) as e:
        parse(HEADER + "qreg q[3];\nccx q[0],q[1],q[2];\n")
    assert "unknown gate 'ccx'" in str(e.value)
    assert (e.value.line, e.value.column) == (4, 1)


def test_error_reports_injection_line(unbiased_text):
    lines = unbiased_text.splitlines()
    lines[19] = "ccx q[0],q[1],q[2];"
    with pytest.raises(QasmSyntaxError) as e:
        parse("\n".join(lines))
    assert e.value.line == 20


def test_missing_semicolon():
    with pytest.raises(QasmSyntaxError) as e:
        parse(HEADER + "qreg q[2];\nh q[0]\n\n\nx q[1];\n")
    assert (e.value.line, e.value.column) == (4, 7)
    assert "';'" in e.value.reason


@pytest.mark.parametrize(
    "body, fragment",
    [
        ("qreg q[2];\nh q[2];\n", "out of range"),
        ("qreg q[2];\nqreg r[2];\n", "unsupported"),
        ("qreg q[2];\ngate foo a;\n", "unsupported"),
        ("qreg q[2];\nopaque foo a;\n", "unsupported"),
        ("qreg q[2];\ncreg c[2];\nif (c) x q[0];\n", "unsupported"),
        ("qreg q[2];\ncreg c[2];\nmeasure q -> c;\n", "unsupported"),
        ("qreg q[1];\nrx(2*) q[0];\n", "malformed expression"),
        ("qreg q[1];\nrx(theta) q[0];\n", "unknown identifier"),
        ("qreg q[1];\nrx(pi/0) q[0];\n", "division by zero"),
        ("qreg q[1];\nh(pi) q[0];\n", "takes no parameters"),
        ("qreg q[1];\nrx q[0];\n", "needs a parameter"),
        ("qreg q[2];\ncx q[0];\n", "operand"),
        ("qreg q[1];\nh r[0];\n", "unknown quantum register"),
        ("qreg q[1];\nh q[0]; $\n", "unexpected character"),
        ("qreg q[1];\nrx(1e30000000) q[0];\n", "out of range"),
        ("qreg q[1];\nrx(1e-30000000) q[0];\n", "out of range"),
        ("qreg q[1];\nrx(1e401) q[0];\n", "out of range"),
    ],
)
def test_parse_errors(body, fragment):
    with pytest.raises(QasmSyntaxError) as e:
        parse(HEADER + body)
    assert fragment in str(e.value)


def test_rejects_other_versions():
    with pytest.raises(QasmSyntaxError) as e:
        parse("OPENQASM 3.0;\nqreg q[1];\n")
    assert "version" in str(e.value)
    with pytest.raises(QasmSyntaxError):
        parse("qreg q[1];\n")


def test_syntax_error_is_value_error():
    with pytest.raises(ValueError):
        parse(HEADER + "qreg q[1];\nfoo q[0];\n")


@pytest.mark.parametrize(
    "text, ratio",
    [
        ("2pi/3", (2, 3)),
        ("2*pi/3", (2, 3)),
        ("0.5pi", (1, 2)),
        ("pi/2", (1, 2)),
        ("-pi", (-1, 1)),
        ("(pi + pi)/4", (1, 2)),
        ("0", (0, 1)),
    ],
)
def test_parse_angle_exact(text, ratio):
    angle = parse_angle(text)
    assert (angle.numerator, angle.denominator) == ratio


def test_parse_angle_decimal():
    angle = parse_angle("1.0472")
    assert angle.exact is None
    assert angle.radians == pytest.approx(1.0472)
    assert parse_angle("1e-3").radians == pytest.approx(0.001)


@pytest.mark.parametrize("text", ["", "2*pi/3 )", "pi/0", "two"])
def test_parse_angle_errors(text):
    with pytest.raises(QasmSyntaxError):
        parse_angle(text)


@pytest.mark.parametrize(
    "angle, text",
    [
        (AngleValue.from_pi_fraction(0), "0"),
        (AngleValue.from_pi_fraction(1), "pi"),
        (AngleValue.from_pi_fraction(-1), "-pi"),
        (AngleValue.from_pi_fraction(3), "3*pi"),
        (AngleValue.from_pi_fraction(1, 2), "pi/2"),
        (AngleValue.from_pi_fraction(4, 6), "2*pi/3"),
        (AngleValue.from_pi_fraction(-3, 4), "-3*pi/4"),
        (AngleValue.from_radians(1.0472), "1.0472"),
    ],
)
def test_format_angle(angle, text):
    assert format_angle(angle) == text


def test_emit_layout():
    text = emit(build_peg())
    lines = text.splitlines()
    assert lines[:5] == ["OPENQASM 2.0;", 'include "qelib1.inc";', "", "qreg q[4];", "creg c[2];"]
    assert lines[-1] == "measure q[3] -> c[1];"
    assert text.endswith("\n")


def test_emit_custom_register_names():
    text = emit(build_peg(), "qr", "cr")
    assert "measure qr[1] -> cr[0];" in text
    assert loads(text) == build_peg()


def test_load_circuit(qasm_dir):
    assert load_circuit(qasm_dir / "qgb4_unbiased.qasm") == build_qgb(4)
