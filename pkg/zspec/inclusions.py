# zspec/inclusions.py

import logging
from dataclasses import replace
from typing import Dict, FrozenSet, List, Sequence, Set, Tuple

from core.errors import CyclicInclusion, UnknownInclusion
from .model import (Decoration, Declaration, Ident, InclusionKind, Predicate, Relation,
                    SchemaDef, Specification)

logger = logging.getLogger(__name__)


def xi_equality(name: str) -> Relation:
    """The synthetic `x' = x` predicate a xi inclusion adds per state variable."""
    return Relation('=', Ident(name, Decoration.PRIMED), Ident(name, Decoration.PLAIN))


class InclusionResolver:
    """
    Expands delta / xi / includes references. The expansion of every schema is
    rebuilt from its own elements, so resolving twice gives the same result.
    """
    def __init__(self, spec: Specification):
        self.spec = spec
        self.own: Dict[str, SchemaDef] = {schema.name: schema.own() for schema in spec.schemas}
        self.expanded: Dict[str, SchemaDef] = {}

    def resolve(self) -> Specification:
        schemas = tuple(self._expand(schema.name, ()) for schema in self.spec.schemas)
        return Specification(self.spec.given_sets, schemas, self.spec.filename)

    def _expand(self, name: str, path: Sequence[str]) -> SchemaDef:
        if name in path:
            cycle = list(path[list(path).index(name):]) + [name]
            raise CyclicInclusion(cycle)
        if name in self.expanded:
            return self.expanded[name]

        schema = self.own[name]
        declarations: List[Declaration] = []
        predicates: List[Predicate] = []
        for inclusion in schema.inclusions:
            if inclusion.target not in self.own:
                raise UnknownInclusion(inclusion.target, inclusion.line)
            target = self._expand(inclusion.target, tuple(path) + (name,))

            if inclusion.kind is InclusionKind.INCLUDES:
                for declaration in target.declarations:
                    declarations.append(replace(declaration, origin=declaration.origin or target.name))
                for predicate in target.predicates:
                    predicates.append(replace(predicate, origin=predicate.origin or target.name))
                continue

            for declaration in target.declarations:
                origin = declaration.origin or target.name
                declarations.append(replace(declaration, origin=origin))
                if declaration.decoration is not Decoration.PLAIN:
                    continue
                declarations.append(replace(declaration, decoration=Decoration.PRIMED, origin=origin))
                if inclusion.kind is InclusionKind.XI:
                    predicates.append(Predicate(xi_equality(declaration.name), inclusion.line,
                                                origin=origin, synthetic=True))

        declarations.extend(schema.declarations)
        predicates.extend(schema.predicates)
        result = replace(schema,
                         declarations=_merge_declarations(declarations),
                         predicates=_merge_synthetic(predicates))
        self.expanded[name] = result
        logger.debug("expanded %s: %d declarations, %d predicates",
                     name, len(result.declarations), len(result.predicates))
        return result


def _merge_declarations(declarations: List[Declaration]) -> Tuple[Declaration, ...]:
    seen: Set[Tuple[str, Decoration]] = set()
    merged = []
    for declaration in declarations:
        if declaration.key in seen:
            continue
        seen.add(declaration.key)
        merged.append(declaration)
    return tuple(merged)


def _merge_synthetic(predicates: List[Predicate]) -> Tuple[Predicate, ...]:
    seen = set()
    merged = []
    for predicate in predicates:
        if predicate.synthetic:
            if predicate.expr in seen:
                continue
            seen.add(predicate.expr)
        merged.append(predicate)
    return tuple(merged)


def resolve_inclusions(spec: Specification) -> Specification:
    """Expand all inclusion references; idempotent."""
    return InclusionResolver(spec).resolve()


def inclusion_closure(spec: Specification) -> Dict[str, FrozenSet[str]]:
    """Schema name -> every schema it includes, directly or transitively."""
    direct = {schema.name: [inclusion.target for inclusion in schema.inclusions]
              for schema in spec.schemas}
    closure: Dict[str, FrozenSet[str]] = {}

    def visit(name: str, path: Tuple[str, ...]) -> FrozenSet[str]:
        if name in path:
            raise CyclicInclusion(list(path[path.index(name):]) + [name])
        if name in closure:
            return closure[name]
        reached: Set[str] = set()
        for target in direct.get(name, ()):
            if target not in direct:
                raise UnknownInclusion(target)
            reached.add(target)
            reached |= visit(target, path + (name,))
        closure[name] = frozenset(reached)
        return closure[name]

    for name in direct:
        visit(name, ())
    return closure
