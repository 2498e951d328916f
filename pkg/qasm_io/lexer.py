"""
lexer.py - Tokenizer for the OpenQASM 2.0 subset with line/column tracking
"""
import re
from dataclasses import dataclass
from enum import Enum
from typing import List, Tuple


class QasmSyntaxError(ValueError):
    """Lexing or parsing failure at a 1-based source position."""

    def __init__(self, reason: str, line: int, column: int):
        self.reason = reason
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {reason}")


class TokenKind(Enum):
    IDENT = "ident"
    NUMBER = "number"
    STRING = "string"
    ARROW = "arrow"
    SYMBOL = "symbol"
    EOF = "eof"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    line: int
    column: int

    def is_symbol(self, text: str) -> bool:
        return self.kind is TokenKind.SYMBOL and self.text == text

    def is_ident(self, text: str) -> bool:
        return self.kind is TokenKind.IDENT and self.text == text


_TOKEN_RE = re.compile(
    r"""
    (?P<newline>\n)
  | (?P<space>[ \t\r\f]+)
  | (?P<comment>//[^\n]*)
  | (?P<number>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][-+]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<string>"[^"\n]*")
  | (?P<arrow>->)
  | (?P<symbol>[;,\[\]()*/+\-])
  | (?P<mismatch>.)
    """,
    re.VERBOSE,
)

_KINDS = {
    "number": TokenKind.NUMBER,
    "ident": TokenKind.IDENT,
    "string": TokenKind.STRING,
    "arrow": TokenKind.ARROW,
    "symbol": TokenKind.SYMBOL,
}


def tokenize(text: str) -> List[Token]:
    """
    Split source text into tokens, dropping whitespace and // comments.

    Args:
        text: QASM source

    Returns:
        Tokens in source order, terminated by an EOF token

    Raises:
        QasmSyntaxError: On a character no token can start with
    """
    result: List[Token] = []
    line, line_start = 1, 0

    for match in _TOKEN_RE.finditer(text):
        group = match.lastgroup
        column = match.start() - line_start + 1
        if group == "newline":
            line += 1
            line_start = match.end()
        elif group == "mismatch":
            raise QasmSyntaxError(f"unexpected character {match.group()!r}", line, column)
        elif group in _KINDS:
            result.append(Token(_KINDS[group], match.group(), line, column))

    result.append(Token(TokenKind.EOF, "", line, len(text) - line_start + 1))
    return result


def tokens(text: str) -> List[Tuple[str, str]]:
    """Token stream as (kind, text) pairs, positions dropped; equal lists mean equivalent sources."""
    return [(tok.kind.value, tok.text) for tok in tokenize(text) if tok.kind is not TokenKind.EOF]
