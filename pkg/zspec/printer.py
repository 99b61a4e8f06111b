# zspec/printer.py

"""
Renders the abstract syntax back into the notation. Re-parsing the output
gives an equal tree.
"""

from typing import List

from .lexer import ADDITIVE, MULTIPLICATIVE
from .model import (Apply, Collection, Connective, Ident, Literal, Node, Not, Operator,
                    Relation, SchemaDef, Specification)

_CLOSING = {'{': '}', '[': ']'}


def _precedence(node: Node) -> int:
    if isinstance(node, (Connective, Not, Relation)):
        return 0
    if isinstance(node, Operator):
        if len(node.operands) == 1:
            return 3
        return 1 if node.op in ADDITIVE else 2
    return 4


def render_expr(node: Node) -> str:
    """Render a predicate or term."""
    if isinstance(node, Ident):
        return node.name + node.decoration.value
    if isinstance(node, Literal):
        return node.text
    if isinstance(node, Apply):
        return f"{node.head}({', '.join(render_expr(arg) for arg in node.args)})"
    if isinstance(node, Collection):
        items = ', '.join(render_expr(item) for item in node.items)
        return f"{node.kind}{items}{_CLOSING[node.kind]}"
    if isinstance(node, Operator):
        return _render_operator(node)
    if isinstance(node, Relation):
        if node.op is None:
            return _render_term(node.left, 0)
        return f"{_render_term(node.left, 0)} {node.op} {_render_term(node.right, 0)}"
    if isinstance(node, Not):
        operand = node.operand
        text = render_expr(operand)
        if isinstance(operand, Connective):
            text = f"({text})"
        return f"not {text}"
    if isinstance(node, Connective):
        parts = []
        for operand in node.operands:
            text = render_expr(operand)
            parts.append(f"({text})" if isinstance(operand, Connective) else text)
        return f" {node.op} ".join(parts)
    raise TypeError(f"cannot render {type(node).__name__}")


def _render_term(node: Node, minimum: int) -> str:
    text = render_expr(node)
    if _precedence(node) < minimum or isinstance(node, (Connective, Not, Relation)):
        return f"({text})"
    return text


def _render_operator(node: Operator) -> str:
    if len(node.operands) == 1:
        operand = node.operands[0]
        text = render_expr(operand)
        if isinstance(operand, (Operator, Connective, Not, Relation)):
            text = f"({text})"
        return f"{node.op}{text}"
    level = _precedence(node)
    left, right = node.operands
    # left-associative: an equal-precedence right operand needs parentheses
    return f"{_render_term(left, level)} {node.op} {_render_term(right, level + 1)}"


def render_schema(schema: SchemaDef) -> List[str]:
    """Lines of one schema, own elements only."""
    own = schema.own()
    lines = [f"schema {own.name}"]
    for inclusion in own.inclusions:
        lines.append(f"  {inclusion.kind.value} {inclusion.target}")
    for declaration in own.declarations:
        lines.append(f"  decl {declaration.name}{declaration.decoration.value} : {declaration.type_text}")
    for predicate in own.predicates:
        lines.append(f"  pred {render_expr(predicate.expr)}")
    lines.append("end")
    return lines


def render_specification(spec: Specification) -> str:
    lines: List[str] = []
    if spec.given_sets:
        lines.append("given " + ", ".join(spec.given_sets))
    for schema in spec.schemas:
        lines.extend(render_schema(schema))
    return "\n".join(lines) + "\n"
