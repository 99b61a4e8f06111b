# mil/lexer.py

import re
from dataclasses import dataclass
from enum import Enum
from typing import List, Set, Tuple

from core.errors import CodeSyntaxError


class TokenType(Enum):
    NAME = 'name'
    KEYWORD = 'keyword'
    NUMBER = 'number'
    STRING = 'string'
    CHAR = 'char'
    SYMBOL = 'symbol'
    EOF = 'eof'


@dataclass(frozen=True)
class Token:
    type: TokenType
    text: str
    line: int
    first_on_line: bool = False


KEYWORDS = frozenset({
    'procedure', 'function', 'is', 'begin', 'end', 'if', 'then', 'elsif', 'else',
    'while', 'for', 'loop', 'in', 'out', 'reverse', 'case', 'when', 'others',
    'return', 'goto', 'exit', 'null', 'and', 'or', 'xor', 'not', 'mod', 'rem',
    'abs', 'constant',
})

_TOKEN_RE = re.compile(r"""
    (?P<space>[ \t\f\r]+)
  | (?P<comment>--[^\n]*)
  | (?P<name>[A-Za-z][A-Za-z0-9_]*)
  | (?P<number>\d[\d_]*(?:\.\d[\d_]*)?(?:[eE][+-]?\d+)?)
  | (?P<string>"(?:[^"\n]|"")*")
  | (?P<char>'[^'\n]'(?![A-Za-z0-9_]))
  | (?P<symbol>:=|=>|\.\.|<<|>>|/=|<=|>=|\*\*|[=<>+\-*/&(),;:.'|])
""", re.VERBOSE)


def tokenize(source: str) -> Tuple[List[Token], Set[int]]:
    """Tokens with 1-based line numbers, plus the set of lines holding a comment."""
    tokens: List[Token] = []
    comment_lines: Set[int] = set()
    for line_number, text in enumerate(source.splitlines(), start=1):
        position = 0
        first = True
        while position < len(text):
            match = _TOKEN_RE.match(text, position)
            if match is None:
                raise CodeSyntaxError(line_number, f"unexpected character {text[position]!r}")
            kind = match.lastgroup
            position = match.end()
            if kind == 'space':
                continue
            if kind == 'comment':
                comment_lines.add(line_number)
                break
            value = match.group()
            if kind == 'name' and value.lower() in KEYWORDS:
                tokens.append(Token(TokenType.KEYWORD, value.lower(), line_number, first))
            else:
                tokens.append(Token(TokenType(kind), value, line_number, first))
            first = False
    last_line = len(source.splitlines())
    tokens.append(Token(TokenType.EOF, '', last_line + 1, True))
    return tokens, comment_lines
