"""
OpenQASM 2.0 subset: lexer, parser, lowering to circuits and emission.
"""

from qasm_io.emitter import emit, format_angle
from qasm_io.lexer import QasmSyntaxError, Token, TokenKind, tokenize, tokens
from qasm_io.lowering import load_circuit, loads, lower
from qasm_io.parser import Parser, parse, parse_angle
from qasm_io.program import Operand, QasmProgram, RegisterDecl, SourceSpan, Statement

__all__ = [
    "Operand",
    "Parser",
    "QasmProgram",
    "QasmSyntaxError",
    "RegisterDecl",
    "SourceSpan",
    "Statement",
    "Token",
    "TokenKind",
    "emit",
    "format_angle",
    "load_circuit",
    "loads",
    "lower",
    "parse",
    "parse_angle",
    "tokenize",
    "tokens",
]
