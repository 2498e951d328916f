"""
parser.py - Recursive-descent parser for the OpenQASM 2.0 gate subset

Grammar:

    program    := 'OPENQASM' NUMBER ';' item* EOF
    item       := 'include' STRING ';'
                | ('qreg' | 'creg') IDENT '[' INT ']' ';'
                | 'measure' operand '->' operand ';'
                | 'barrier' operand (',' operand)* ';'
                | NAME ['(' expr ')'] operand (',' operand)* ';'
    operand    := IDENT ['[' INT ']']
    expr       := term (('+' | '-') term)*
    term       := unary (('*' | '/') unary)*
    unary      := ('-' | '+') unary | primary
    primary    := NUMBER | 'pi' | '(' expr ')'

Angle expressions are evaluated exactly as rational multiples of powers of pi
whenever possible, so `2*pi/3` keeps its exact form through a round trip.
"""
import logging
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from circuits.ir import AngleValue
from qasm_io.lexer import QasmSyntaxError, Token, TokenKind, tokenize
from qasm_io.program import Operand, QasmProgram, RegisterDecl, SourceSpan, Statement

logger = logging.getLogger(__name__)

SUPPORTED_VERSION = "2.0"

# literals beyond this decimal exponent cannot be a float angle
MAX_LITERAL_EXPONENT = 400
_EXPONENT_RE = re.compile(r"[eE]([-+]?\d+)$")

# name -> (qubit operands, takes an angle)
GATE_SIGNATURES: Dict[str, Tuple[int, bool]] = {
    "h": (1, False),
    "x": (1, False),
    "t": (1, False),
    "tdg": (1, False),
    "rx": (1, True),
    "cx": (2, False),
    "swap": (2, False),
    "cswap": (3, False),
    "reset": (1, False),
}

UNSUPPORTED = {
    "gate": "gate definitions",
    "opaque": "opaque gate declarations",
    "if": "classically controlled statements",
}


@dataclass(frozen=True)
class _Value:
    """Expression value: ratio * pi**power when exact, plus its float."""

    number: float
    ratio: Optional[Fraction] = None
    power: int = 0

    @classmethod
    def exact(cls, ratio: Fraction, power: int = 0) -> "_Value":
        return cls(float(ratio) * math.pi ** power, ratio, power)

    def __neg__(self) -> "_Value":
        return _Value(-self.number, None if self.ratio is None else -self.ratio, self.power)

    def __add__(self, other: "_Value") -> "_Value":
        if self.ratio is not None and other.ratio is not None:
            if self.ratio == 0:
                return other
            if other.ratio == 0:
                return self
            if self.power == other.power:
                return _Value.exact(self.ratio + other.ratio, self.power)
        return _Value(self.number + other.number)

    def __sub__(self, other: "_Value") -> "_Value":
        return self + (-other)

    def __mul__(self, other: "_Value") -> "_Value":
        if self.ratio is not None and other.ratio is not None:
            return _Value.exact(self.ratio * other.ratio, self.power + other.power)
        return _Value(self.number * other.number)

    def __truediv__(self, other: "_Value") -> "_Value":
        if self.ratio is not None and other.ratio is not None:
            return _Value.exact(self.ratio / other.ratio, self.power - other.power)
        return _Value(self.number / other.number)

    def to_angle(self) -> AngleValue:
        if self.ratio is not None and (self.power == 1 or self.ratio == 0):
            return AngleValue.from_pi_fraction(self.ratio.numerator, self.ratio.denominator)
        return AngleValue.from_radians(self.number)


class Parser:
    """Single-use parser over one token list."""

    def __init__(self, toks: List[Token], implicit_multiplication: bool = False):
        """
        Initialize the parser.

        Args:
            toks: Output of tokenize (EOF-terminated)
            implicit_multiplication: Read juxtaposition such as `2pi` as a product
        """
        self.toks = toks
        self.pos = 0
        self.implicit_multiplication = implicit_multiplication

    @property
    def current(self) -> Token:
        return self.toks[self.pos]

    def advance(self) -> Token:
        tok = self.toks[self.pos]
        if tok.kind is not TokenKind.EOF:
            self.pos += 1
        return tok

    def error(self, reason: str, tok: Optional[Token] = None) -> QasmSyntaxError:
        tok = tok or self.current
        return QasmSyntaxError(reason, tok.line, tok.column)

    def expect_symbol(self, text: str, context: str) -> Token:
        if not self.current.is_symbol(text):
            reason = f"expected '{text}' {context}, found {self._describe(self.current)}"
            if text == ";" and self.pos > 0:
                # a missing terminator belongs to the statement it should close
                prev = self.toks[self.pos - 1]
                raise QasmSyntaxError(reason, prev.line, prev.column + len(prev.text))
            raise self.error(reason)
        return self.advance()

    def expect_kind(self, kind: TokenKind, context: str) -> Token:
        if self.current.kind is not kind:
            raise self.error(f"expected {kind.value} {context}, found {self._describe(self.current)}")
        return self.advance()

    @staticmethod
    def _describe(tok: Token) -> str:
        return "end of input" if tok.kind is TokenKind.EOF else repr(tok.text)

    @staticmethod
    def span(tok: Token) -> SourceSpan:
        return SourceSpan(tok.line, tok.column)

    # program level

    def parse_program(self) -> QasmProgram:
        program = QasmProgram()
        head = self.current
        if not head.is_ident("OPENQASM"):
            raise self.error("program must start with 'OPENQASM 2.0;'")
        self.advance()
        version = self.expect_kind(TokenKind.NUMBER, "after OPENQASM")
        if version.text != SUPPORTED_VERSION:
            raise self.error(f"unsupported OpenQASM version {version.text}", version)
        program.version = version.text
        self.expect_symbol(";", "after version")

        while self.current.kind is not TokenKind.EOF:
            self.parse_item(program)
        logger.debug(f"Parsed {len(program.statements)} statements")
        return program

    def parse_item(self, program: QasmProgram) -> None:
        tok = self.current
        if tok.kind is not TokenKind.IDENT:
            raise self.error(f"expected a statement, found {self._describe(tok)}")
        name = tok.text

        if name in UNSUPPORTED:
            raise self.error(f"unsupported: {UNSUPPORTED[name]}")
        if name == "include":
            self.advance()
            path = self.expect_kind(TokenKind.STRING, "after include")
            program.includes.append(path.text.strip('"'))
            self.expect_symbol(";", "after include")
        elif name in ("qreg", "creg"):
            self.parse_register(program)
        elif name == "measure":
            program.statements.append(self.parse_measure(program))
        elif name == "barrier":
            program.statements.append(self.parse_barrier(program))
        elif name in GATE_SIGNATURES:
            program.statements.append(self.parse_gate(program))
        else:
            raise self.error(f"unknown gate '{name}'")

    def parse_register(self, program: QasmProgram) -> None:
        keyword = self.advance()
        name = self.expect_kind(TokenKind.IDENT, f"after {keyword.text}")
        self.expect_symbol("[", "before register size")
        size = self.parse_int("register size")
        self.expect_symbol("]", "after register size")
        self.expect_symbol(";", "after register declaration")

        decl = RegisterDecl(name.text, size, self.span(name))
        if size < 1:
            raise self.error(f"register {name.text} must have at least one element", name)
        for other in (program.qreg, program.creg):
            if other is not None and other.name == name.text:
                raise self.error(f"register '{name.text}' already declared", name)
        if keyword.text == "qreg":
            if program.qreg is not None:
                raise self.error("unsupported: more than one quantum register", keyword)
            program.qreg = decl
        else:
            if program.creg is not None:
                raise self.error("unsupported: more than one classical register", keyword)
            program.creg = decl

    def parse_int(self, context: str) -> int:
        tok = self.expect_kind(TokenKind.NUMBER, f"for {context}")
        if not tok.text.isdigit():
            raise self.error(f"{context} must be a non-negative integer", tok)
        return int(tok.text)

    def parse_operand(self, register: Optional[RegisterDecl], kind: str, allow_whole: bool = False) -> Operand:
        name = self.expect_kind(TokenKind.IDENT, f"for {kind} operand")
        if register is None or name.text != register.name:
            raise self.error(f"unknown {kind} register '{name.text}'", name)

        if not self.current.is_symbol("["):
            if not allow_whole:
                raise self.error(f"unsupported: whole-register operand '{name.text}'", name)
            return Operand(name.text, None, self.span(name))

        self.advance()
        index_tok = self.current
        index = self.parse_int("register index")
        if index >= register.size:
            raise self.error(
                f"index {index} out of range for {register.name}[{register.size}]", index_tok
            )
        self.expect_symbol("]", "after register index")
        return Operand(name.text, index, self.span(name))

    def parse_operand_list(self, program: QasmProgram, allow_whole: bool = False) -> List[Operand]:
        operands = [self.parse_operand(program.qreg, "quantum", allow_whole)]
        while self.current.is_symbol(","):
            self.advance()
            operands.append(self.parse_operand(program.qreg, "quantum", allow_whole))
        return operands

    def parse_gate(self, program: QasmProgram) -> Statement:
        name_tok = self.advance()
        arity, takes_angle = GATE_SIGNATURES[name_tok.text]

        angle = None
        if self.current.is_symbol("("):
            if not takes_angle:
                raise self.error(f"gate '{name_tok.text}' takes no parameters")
            start = self.advance()
            angle = self.parse_angle_value(start)
            self.expect_symbol(")", "after gate parameter")
        elif takes_angle:
            raise self.error(f"gate '{name_tok.text}' needs a parameter")

        operands = self.parse_operand_list(program)
        if len(operands) != arity:
            raise self.error(
                f"gate '{name_tok.text}' takes {arity} operand(s), got {len(operands)}", name_tok
            )
        self.expect_symbol(";", "after statement")
        return Statement(name_tok.text, tuple(operands), self.span(name_tok), angle=angle)

    def parse_barrier(self, program: QasmProgram) -> Statement:
        name_tok = self.advance()
        operands = self.parse_operand_list(program, allow_whole=True)
        self.expect_symbol(";", "after statement")
        return Statement(name_tok.text, tuple(operands), self.span(name_tok))

    def parse_measure(self, program: QasmProgram) -> Statement:
        name_tok = self.advance()
        source = self.parse_operand(program.qreg, "quantum")
        if self.current.kind is not TokenKind.ARROW:
            raise self.error(f"expected '->' in measure, found {self._describe(self.current)}")
        self.advance()
        target = self.parse_operand(program.creg, "classical")
        self.expect_symbol(";", "after statement")
        return Statement(name_tok.text, (source,), self.span(name_tok), target=target)

    # expressions

    def parse_angle_value(self, start: Token) -> AngleValue:
        try:
            return self.parse_expr().to_angle()
        except QasmSyntaxError:
            raise
        except (ValueError, OverflowError) as e:
            raise self.error(f"invalid angle: {e}", start)

    def parse_expr(self) -> _Value:
        value = self.parse_term()
        while self.current.is_symbol("+") or self.current.is_symbol("-"):
            op = self.advance().text
            rhs = self.parse_term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def _starts_primary(self) -> bool:
        tok = self.current
        return tok.kind in (TokenKind.NUMBER, TokenKind.IDENT) or tok.is_symbol("(")

    def parse_term(self) -> _Value:
        value = self.parse_unary()
        while True:
            if self.current.is_symbol("*"):
                self.advance()
                value = value * self.parse_unary()
            elif self.current.is_symbol("/"):
                slash = self.advance()
                rhs = self.parse_unary()
                if rhs.number == 0:
                    raise self.error("division by zero in expression", slash)
                value = value / rhs
            elif self.implicit_multiplication and self._starts_primary():
                value = value * self.parse_unary()
            else:
                return value

    def parse_unary(self) -> _Value:
        if self.current.is_symbol("-"):
            self.advance()
            return -self.parse_unary()
        if self.current.is_symbol("+"):
            self.advance()
            return self.parse_unary()
        return self.parse_primary()

    def check_literal(self, tok: Token) -> None:
        """Reject number literals whose exact value would be enormous to build."""
        match = _EXPONENT_RE.search(tok.text)
        if match:
            digits = match.group(1).lstrip("+-").lstrip("0")
            if len(digits) > 3 or int(digits or "0") > MAX_LITERAL_EXPONENT:
                raise self.error(f"number literal {tok.text!r} out of range", tok)
        if not math.isfinite(float(tok.text)):
            raise self.error(f"number literal {tok.text!r} out of range", tok)

    def parse_primary(self) -> _Value:
        tok = self.current
        if tok.kind is TokenKind.NUMBER:
            self.check_literal(tok)
            self.advance()
            return _Value.exact(Fraction(tok.text))
        if tok.is_ident("pi"):
            self.advance()
            return _Value.exact(Fraction(1), 1)
        if tok.is_symbol("("):
            self.advance()
            value = self.parse_expr()
            self.expect_symbol(")", "to close expression")
            return value
        if tok.kind is TokenKind.IDENT:
            raise self.error(f"unknown identifier '{tok.text}' in expression")
        raise self.error(f"malformed expression at {self._describe(tok)}")


def parse(text: str) -> QasmProgram:
    """
    Parse OpenQASM 2.0 source.

    Args:
        text: Program text

    Returns:
        QasmProgram with positions attached to every statement

    Raises:
        QasmSyntaxError: With the line and column of the first problem
    """
    return Parser(tokenize(text)).parse_program()


def parse_angle(text: str, implicit_multiplication: bool = True) -> AngleValue:
    """
    Parse a standalone angle expression such as `2*pi/3`, `2pi/3` or `1.0472`.

    Raises:
        QasmSyntaxError: If the text is not a single well-formed expression
    """
    parser = Parser(tokenize(text), implicit_multiplication=implicit_multiplication)
    start = parser.current
    if start.kind is TokenKind.EOF:
        raise parser.error("empty angle expression")
    angle = parser.parse_angle_value(start)
    if parser.current.kind is not TokenKind.EOF:
        raise parser.error(f"unexpected {parser._describe(parser.current)} after angle expression")
    return angle
