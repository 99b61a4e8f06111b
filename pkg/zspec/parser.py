# zspec/parser.py

"""
Parser for the specification notation.

    spec    := { "given" NAME {"," NAME} | schema }
    schema  := "schema" NAME { "delta" NAME | "xi" NAME | "includes" NAME }
               { "decl" NAME{","NAME} ":" TYPETEXT }
               { "pred" PREDEXPR }
               "end"

One construct per line; a schema header line may also carry inclusion
clauses and the closing `end`.
"""

import logging
from typing import Dict, List, Optional, Tuple

from core.errors import (DuplicateDeclaration, DuplicateSchema, ParseError, SpecSyntaxError,
                         UnknownInclusion)
from .lexer import (ADDITIVE, CONSTANTS, MULTIPLICATIVE, PREFIX, RELATIONS, RESERVED,
                    Token, TokenType, strip_comment, tokenize)
from .model import (PREDICATE_NODES, Apply, Collection, Connective, Declaration, Decoration,
                    Ident, Inclusion, InclusionKind, Literal, Node, Not, Operator, Predicate,
                    Relation, SchemaDef, Specification)

logger = logging.getLogger(__name__)

# Sections of a schema body, in grammar order
_INCLUSIONS, _DECLARATIONS, _PREDICATES = range(3)


class PredicateParser:
    """
    Recursive descent over the tokens of one `pred` line.

    implies  := or_expr [ "implies" implies ]
    or_expr  := and_expr { "or" and_expr }
    and_expr := not_expr { "and" not_expr }
    not_expr := "not" not_expr | relation
    relation := term [ RELOP term ]
    term     := factor { ("+"|"-"|"union"|"cat") factor }
    factor   := unary { ("*"|"/"|"div"|"mod"|"inter") unary }
    unary    := ("-"|"#") unary | primary
    """
    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _advance(self) -> Token:
        token = self.tokens[self.index]
        if token.type is not TokenType.END:
            self.index += 1
        return token

    def _at(self, *texts: str) -> bool:
        token = self.current
        return token.type in (TokenType.NAME, TokenType.SYMBOL) and token.text in texts

    def _expect(self, text: str) -> Token:
        if not self._at(text):
            raise SpecSyntaxError(self.current.line, repr(text), self.current.text)
        return self._advance()

    def parse(self) -> Node:
        if self.current.type is TokenType.END:
            raise SpecSyntaxError(self.current.line, 'a predicate')
        node = self.parse_implies()
        if self.current.type is not TokenType.END:
            raise SpecSyntaxError(self.current.line, 'end of predicate', self.current.text)
        return node

    def parse_implies(self) -> Node:
        left = self.parse_or()
        if self._at('implies'):
            self._advance()
            return Connective('implies', (left, self.parse_implies()))
        return left

    def parse_or(self) -> Node:
        operands = [self.parse_and()]
        while self._at('or'):
            self._advance()
            operands.append(self.parse_and())
        return operands[0] if len(operands) == 1 else Connective('or', tuple(operands))

    def parse_and(self) -> Node:
        operands = [self.parse_not()]
        while self._at('and'):
            self._advance()
            operands.append(self.parse_not())
        return operands[0] if len(operands) == 1 else Connective('and', tuple(operands))

    def parse_not(self) -> Node:
        if self._at('not'):
            self._advance()
            return Not(self.parse_not())
        return self.parse_relation()

    def parse_relation(self) -> Node:
        left = self.parse_term()
        if self._at(*RELATIONS):
            op = self._advance().text
            return Relation(op, left, self.parse_term())
        if isinstance(left, PREDICATE_NODES):
            return left
        return Relation(None, left)

    def parse_term(self) -> Node:
        node = self.parse_factor()
        while self._at(*ADDITIVE):
            op = self._advance().text
            node = Operator(op, (node, self.parse_factor()))
        return node

    def parse_factor(self) -> Node:
        node = self.parse_unary()
        while self._at(*MULTIPLICATIVE):
            op = self._advance().text
            node = Operator(op, (node, self.parse_unary()))
        return node

    def parse_unary(self) -> Node:
        if self._at(*PREFIX):
            op = self._advance().text
            return Operator(op, (self.parse_unary(),))
        return self.parse_primary()

    def parse_primary(self) -> Node:
        token = self.current
        if token.type is TokenType.NUMBER:
            self._advance()
            return Literal(token.text)
        if token.type is TokenType.NAME:
            if token.text in CONSTANTS:
                self._advance()
                return Literal(token.text)
            if token.text in RESERVED:
                raise SpecSyntaxError(token.line, 'an operand', token.text)
            self._advance()
            if self._at('('):
                return Apply(token.text, self._parse_items('(', ')'))
            base, decoration = Decoration.split(token.text)
            return Ident(base, decoration, (token.line, token.column))
        if self._at('('):
            self._advance()
            inner = self.parse_implies()
            self._expect(')')
            return _unwrap(inner)
        if self._at('{'):
            return Collection('{', self._parse_items('{', '}'))
        if self._at('['):
            return Collection('[', self._parse_items('[', ']'))
        raise SpecSyntaxError(token.line, 'an operand', token.text)

    def _parse_items(self, opener: str, closer: str) -> Tuple[Node, ...]:
        self._expect(opener)
        items = []
        if not self._at(closer):
            items.append(_unwrap(self.parse_implies()))
            while self._at(','):
                self._advance()
                items.append(_unwrap(self.parse_implies()))
        self._expect(closer)
        return tuple(items)


def _unwrap(node: Node) -> Node:
    """A bare term in term position is the term itself."""
    if isinstance(node, Relation) and node.op is None:
        return node.left
    return node


def parse_predicate(text: str, line: int = 1, offset: int = 0) -> Node:
    """Parse the text of a single predicate."""
    return PredicateParser(tokenize(text, line, offset)).parse()


class _SchemaBuilder:
    def __init__(self, name: str, line: int):
        self.name = name
        self.line = line
        self.section = _INCLUSIONS
        self.inclusions: List[Inclusion] = []
        self.declarations: List[Declaration] = []
        self.predicates: List[Predicate] = []
        self._declared: Dict[Tuple[str, Decoration], int] = {}

    def enter(self, section: int, line: int, keyword: str) -> None:
        if section < self.section:
            expected = {_DECLARATIONS: "'decl', 'pred' or 'end'", _PREDICATES: "'pred' or 'end'"}
            raise SpecSyntaxError(line, expected[self.section], keyword)
        self.section = section

    def declare(self, declaration: Declaration) -> None:
        if declaration.key in self._declared:
            raise DuplicateDeclaration(self.name, declaration.name + declaration.decoration.value,
                                       declaration.line)
        self._declared[declaration.key] = declaration.line
        self.declarations.append(declaration)

    def build(self) -> SchemaDef:
        return SchemaDef(self.name, tuple(self.inclusions), tuple(self.declarations),
                         tuple(self.predicates), self.line)


class SpecificationParser:
    """
    Line-oriented parser producing a Specification with source positions.
    """
    def __init__(self, source: str, filename: Optional[str] = None):
        self.source = source
        self.filename = filename
        self.given: List[str] = []
        self.schemas: List[SchemaDef] = []
        self.schema_lines: Dict[str, int] = {}
        self.current: Optional[_SchemaBuilder] = None

    def parse(self) -> Specification:
        last_line = 0
        for line_number, raw in enumerate(self.source.splitlines(), start=1):
            last_line = line_number
            text = strip_comment(raw)
            if not text.strip():
                continue
            self._parse_line(text, line_number)
        if self.current is not None:
            raise SpecSyntaxError(last_line + 1, "'end'", 'end of file')
        self._check_inclusions()
        specification = Specification(tuple(self.given), tuple(self.schemas), self.filename)
        logger.debug("parsed %d schemas from %s", len(self.schemas), self.filename or '<input>')
        return specification

    def _parse_line(self, text: str, line: int) -> None:
        stripped = text.lstrip()
        keyword = stripped.split(None, 1)[0]
        offset = len(text) - len(stripped)
        rest = stripped[len(keyword):]
        offset += len(keyword)

        if keyword == 'given':
            self._require_outside(line, keyword)
            self.given.extend(self._parse_names(rest, line, offset))
        elif keyword == 'schema':
            self._require_outside(line, keyword)
            self._parse_header(rest, line, offset)
        elif keyword in ('delta', 'xi', 'includes'):
            schema = self._require_inside(line, keyword)
            schema.enter(_INCLUSIONS, line, keyword)
            tokens = tokenize(rest, line, offset)
            self._parse_clauses(keyword, tokens, 0, schema)
        elif keyword == 'decl':
            schema = self._require_inside(line, keyword)
            schema.enter(_DECLARATIONS, line, keyword)
            self._parse_declaration(rest, line, offset, schema)
        elif keyword == 'pred':
            schema = self._require_inside(line, keyword)
            schema.enter(_PREDICATES, line, keyword)
            schema.predicates.append(Predicate(parse_predicate(rest, line, offset), line))
        elif keyword == 'end':
            self._require_inside(line, keyword)
            if rest.strip():
                raise SpecSyntaxError(line, 'end of line', rest.strip())
            self._close()
        else:
            expected = "'delta', 'xi', 'includes', 'decl', 'pred' or 'end'" if self.current \
                else "'given' or 'schema'"
            raise SpecSyntaxError(line, expected, keyword)

    def _require_outside(self, line: int, keyword: str) -> None:
        if self.current is not None:
            raise SpecSyntaxError(line, "'end'", keyword)

    def _require_inside(self, line: int, keyword: str) -> _SchemaBuilder:
        if self.current is None:
            raise SpecSyntaxError(line, "'given' or 'schema'", keyword)
        return self.current

    def _parse_names(self, text: str, line: int, offset: int) -> List[str]:
        tokens = tokenize(text, line, offset)
        names = []
        index = 0
        while True:
            token = tokens[index]
            if token.type is not TokenType.NAME or token.text in RESERVED:
                raise SpecSyntaxError(line, 'a name', token.text)
            names.append(token.text)
            index += 1
            if tokens[index].type is TokenType.END:
                return names
            if tokens[index].text != ',':
                raise SpecSyntaxError(line, "',' or end of line", tokens[index].text)
            index += 1

    def _parse_header(self, text: str, line: int, offset: int) -> None:
        tokens = tokenize(text, line, offset)
        name = tokens[0]
        if name.type is not TokenType.NAME or name.text in RESERVED or name.text[-1] in "'?!":
            raise SpecSyntaxError(line, 'a schema name', name.text)
        if name.text in self.schema_lines:
            raise DuplicateSchema(name.text, line)
        self.schema_lines[name.text] = line
        self.current = _SchemaBuilder(name.text, line)
        index = 1
        while tokens[index].type is not TokenType.END:
            keyword = tokens[index].text
            if keyword == 'end':
                if tokens[index + 1].type is not TokenType.END:
                    raise SpecSyntaxError(line, 'end of line', tokens[index + 1].text)
                self._close()
                return
            if keyword not in ('delta', 'xi', 'includes'):
                raise SpecSyntaxError(line, "'delta', 'xi', 'includes' or 'end'", keyword)
            index = self._parse_clauses(keyword, tokens, index + 1, self.current, inline=True)

    def _parse_clauses(self, keyword: str, tokens: List[Token], index: int,
                       schema: _SchemaBuilder, inline: bool = False) -> int:
        target = tokens[index]
        if target.type is not TokenType.NAME or target.text in RESERVED:
            raise SpecSyntaxError(target.line, 'a schema name', target.text)
        schema.inclusions.append(Inclusion(InclusionKind(keyword), target.text, target.line))
        index += 1
        if not inline and tokens[index].type is not TokenType.END:
            raise SpecSyntaxError(target.line, 'end of line', tokens[index].text)
        return index

    def _parse_declaration(self, text: str, line: int, offset: int, schema: _SchemaBuilder) -> None:
        if ':' not in text:
            raise SpecSyntaxError(line, "':'", text.strip())
        names_text, type_text = text.split(':', 1)
        type_text = type_text.strip()
        if not type_text:
            raise SpecSyntaxError(line, 'a type', '')
        for name in self._parse_names(names_text, line, offset):
            base, decoration = Decoration.split(name)
            schema.declare(Declaration(base, decoration, type_text, line))

    def _close(self) -> None:
        self.schemas.append(self.current.build())
        self.current = None

    def _check_inclusions(self) -> None:
        for schema in self.schemas:
            for inclusion in schema.inclusions:
                if inclusion.target not in self.schema_lines:
                    raise UnknownInclusion(inclusion.target, inclusion.line)


def parse_specification(source: str, filename: Optional[str] = None) -> Specification:
    """Parse specification text into its abstract syntax."""
    try:
        return SpecificationParser(source, filename).parse()
    except ParseError as error:
        error.source = filename
        raise
