# zspec/model.py

"""
Abstract syntax of the line-oriented specification notation.

All nodes are frozen dataclasses so that parsed specifications compare
structurally; source positions are excluded from comparison.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterator, Optional, Tuple, Union


class Decoration(Enum):
    PLAIN = ''
    PRIMED = "'"
    INPUT = '?'
    OUTPUT = '!'

    @property
    def is_def(self) -> bool:
        """Primed and output occurrences refer to the after state."""
        return self in (Decoration.PRIMED, Decoration.OUTPUT)

    @classmethod
    def split(cls, text: str) -> Tuple[str, 'Decoration']:
        """Split `ctr'` into ('ctr', PRIMED)."""
        if text and text[-1] in "'?!":
            return text[:-1], cls(text[-1])
        return text, cls.PLAIN


class InclusionKind(Enum):
    DELTA = 'delta'
    XI = 'xi'
    INCLUDES = 'includes'


# Term and predicate nodes

@dataclass(frozen=True)
class Ident:
    name: str
    decoration: Decoration = Decoration.PLAIN
    position: Tuple[int, int] = field(default=(0, 0), compare=False)

    def __post_init__(self):
        if not self.name:
            raise ValueError("identifier base name must be non-empty")


# An identifier occurrence is an Ident leaf of the term tree.
IdentOccurrence = Ident


@dataclass(frozen=True)
class Literal:
    text: str


@dataclass(frozen=True)
class Apply:
    head: str
    args: Tuple['Node', ...] = ()


@dataclass(frozen=True)
class Collection:
    """Set display `{...}` or sequence display `[...]`, kept opaque."""
    kind: str
    items: Tuple['Node', ...] = ()


@dataclass(frozen=True)
class Operator:
    """Arithmetic or set operator; one operand for prefix operators."""
    op: str
    operands: Tuple['Node', ...]


@dataclass(frozen=True)
class Relation:
    """Relation atom; `op` is None for a bare boolean term."""
    op: Optional[str]
    left: 'Node'
    right: Optional['Node'] = None


@dataclass(frozen=True)
class Not:
    operand: 'Node'


@dataclass(frozen=True)
class Connective:
    """n-ary `and` / `or`; binary, right-nested `implies`."""
    op: str
    operands: Tuple['Node', ...]


Node = Union[Ident, Literal, Apply, Collection, Operator, Relation, Not, Connective]
PredExpr = Node

PREDICATE_NODES = (Relation, Not, Connective)


def children(node: Node) -> Tuple[Node, ...]:
    if isinstance(node, Apply):
        return node.args
    if isinstance(node, Collection):
        return node.items
    if isinstance(node, Operator):
        return node.operands
    if isinstance(node, Relation):
        return (node.left,) if node.right is None else (node.left, node.right)
    if isinstance(node, Not):
        return (node.operand,)
    if isinstance(node, Connective):
        return node.operands
    return ()


def occurrences(node: Node) -> Iterator[Ident]:
    """Yield identifier occurrences in source order."""
    if isinstance(node, Ident):
        yield node
        return
    for child in children(node):
        yield from occurrences(child)


def count_connectives(node: Node, op: str) -> int:
    """Number of `op` connective tokens anywhere in the tree."""
    total = 0
    if isinstance(node, Connective) and node.op == op:
        total += len(node.operands) - 1
    for child in children(node):
        total += count_connectives(child, op)
    return total


def conjuncts(node: Node) -> Tuple[Node, ...]:
    """Flatten top-level `and` chains, parenthesised groups included."""
    if isinstance(node, Connective) and node.op == 'and':
        parts: Tuple[Node, ...] = ()
        for operand in node.operands:
            parts += conjuncts(operand)
        return parts
    return (node,)


# Schema level

@dataclass(frozen=True)
class Inclusion:
    kind: InclusionKind
    target: str
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Declaration:
    name: str
    decoration: Decoration
    type_text: str
    line: int = field(default=0, compare=False)
    origin: Optional[str] = None

    @property
    def key(self) -> Tuple[str, Decoration]:
        return self.name, self.decoration


@dataclass(frozen=True)
class Predicate:
    expr: Node
    line: int = field(default=0, compare=False)
    origin: Optional[str] = None
    synthetic: bool = False


@dataclass(frozen=True)
class SchemaDef:
    name: str
    inclusions: Tuple[Inclusion, ...] = ()
    declarations: Tuple[Declaration, ...] = ()
    predicates: Tuple[Predicate, ...] = ()
    line: int = field(default=0, compare=False)

    def own(self) -> 'SchemaDef':
        """The schema restricted to elements written in its own body."""
        return SchemaDef(
            name=self.name,
            inclusions=self.inclusions,
            declarations=tuple(d for d in self.declarations if d.origin is None),
            predicates=tuple(p for p in self.predicates if p.origin is None and not p.synthetic),
            line=self.line,
        )


@dataclass(frozen=True)
class Specification:
    given_sets: Tuple[str, ...] = ()
    schemas: Tuple[SchemaDef, ...] = ()
    filename: Optional[str] = field(default=None, compare=False)

    def schema(self, name: str) -> SchemaDef:
        for schema in self.schemas:
            if schema.name == name:
                return schema
        raise KeyError(name)

    @property
    def schema_names(self) -> Tuple[str, ...]:
        return tuple(schema.name for schema in self.schemas)

    def source_map(self) -> Dict[Tuple[str, int], Tuple[Optional[str], int]]:
        """(schema, element index) -> (file, line) for declarations then predicates."""
        mapping = {}
        for schema in self.schemas:
            elements = schema.declarations + schema.predicates
            for index, element in enumerate(elements):
                mapping[(schema.name, index)] = (self.filename, element.line)
        return mapping
