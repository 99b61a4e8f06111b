# zspec/lexer.py

import re
from dataclasses import dataclass
from enum import Enum
from typing import List

from core.errors import SpecSyntaxError


class TokenType(Enum):
    NAME = 'name'
    NUMBER = 'number'
    SYMBOL = 'symbol'
    END = 'end-of-line'


@dataclass(frozen=True)
class Token:
    type: TokenType
    text: str
    line: int
    column: int  # 1-based


STRUCTURE_KEYWORDS = frozenset({'given', 'schema', 'delta', 'xi', 'includes', 'decl', 'pred', 'end'})
CONNECTIVES = frozenset({'and', 'or', 'implies', 'not'})
RELATIONS = frozenset({'=', '/=', '<', '<=', '>', '>=', 'in', 'notin', 'subseteq'})
ADDITIVE = frozenset({'+', '-', 'union', 'cat'})
MULTIPLICATIVE = frozenset({'*', '/', 'div', 'mod', 'inter'})
PREFIX = frozenset({'-', '#'})
CONSTANTS = frozenset({'true', 'false'})
RESERVED = (STRUCTURE_KEYWORDS | CONNECTIVES | CONSTANTS
            | {'in', 'notin', 'subseteq', 'union', 'cat', 'div', 'mod', 'inter'})

_TOKEN_RE = re.compile(r"""
    (?P<space>\s+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*['?!]?)
  | (?P<number>\d+(?:\.\d+)?)
  | (?P<symbol>/=|<=|>=|[=<>+\-*/\#(){}\[\],:])
""", re.VERBOSE)


def strip_comment(text: str) -> str:
    """Drop a `--` comment running to end of line."""
    index = text.find('--')
    return text if index < 0 else text[:index]


def tokenize(text: str, line: int, offset: int = 0) -> List[Token]:
    """Tokenize one logical line; `offset` is the column of text[0] minus one."""
    tokens = []
    position = 0
    while position < len(text):
        match = _TOKEN_RE.match(text, position)
        if match is None:
            raise SpecSyntaxError(line, 'a name, number or operator', text[position])
        kind = match.lastgroup
        if kind != 'space':
            tokens.append(Token(TokenType(kind), match.group(), line, offset + position + 1))
        position = match.end()
    tokens.append(Token(TokenType.END, '', line, offset + len(text) + 1))
    return tokens
