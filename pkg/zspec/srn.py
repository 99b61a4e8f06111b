# zspec/srn.py

"""
Specification Relationship Net: primes (one per declared name or predicate
conjunct) joined by reconstructed control and data dependency arcs.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

import networkx as nx

from core.utils import PathLike, atomic_write_text
from .inclusions import inclusion_closure, resolve_inclusions
from .model import Decoration, SchemaDef, Specification, conjuncts, occurrences
from .printer import render_expr

logger = logging.getLogger(__name__)

ControlArc = Tuple[str, str]
DataArc = Tuple[str, str, str]
InterschemaArc = Tuple[str, str, str, str, str]


class PrimeKind(Enum):
    DECLARATION = 'declaration'
    PREDICATE = 'predicate'
    SYNTHETIC = 'synthetic-xi-eq'


@dataclass(frozen=True)
class Prime:
    id: str
    schema: str
    kind: PrimeKind
    def_set: FrozenSet[Tuple[str, Decoration]]
    use_set: FrozenSet[str]
    is_guard: bool
    plain_uses: FrozenSet[str] = frozenset()
    text: str = field(default='', compare=False)
    line: int = field(default=0, compare=False)
    origin: Optional[str] = field(default=None, compare=False)

    @property
    def is_declaration(self) -> bool:
        return self.kind is PrimeKind.DECLARATION

    @property
    def defined_names(self) -> FrozenSet[str]:
        return frozenset(name for name, _ in self.def_set)

    @property
    def mentions(self) -> FrozenSet[str]:
        """Base names referenced in any role."""
        return self.defined_names | self.use_set

    def defines_after_state(self, name: str) -> bool:
        return any(base == name and decoration.is_def for base, decoration in self.def_set)


def split_primes(schema: SchemaDef) -> List[Prime]:
    """One prime per declared name, then one per top-level predicate conjunct."""
    primes = []
    for declaration in schema.declarations:
        primes.append(Prime(
            id=f"{schema.name}#{len(primes)}",
            schema=schema.name,
            kind=PrimeKind.DECLARATION,
            def_set=frozenset({declaration.key}),
            use_set=frozenset(),
            is_guard=False,
            text=f"{declaration.name}{declaration.decoration.value} : {declaration.type_text}",
            line=declaration.line,
            origin=declaration.origin,
        ))
    for predicate in schema.predicates:
        kind = PrimeKind.SYNTHETIC if predicate.synthetic else PrimeKind.PREDICATE
        for conjunct in conjuncts(predicate.expr):
            defs: Set[Tuple[str, Decoration]] = set()
            uses: Set[str] = set()
            plain: Set[str] = set()
            for occurrence in occurrences(conjunct):
                if occurrence.decoration.is_def:
                    defs.add((occurrence.name, occurrence.decoration))
                else:
                    uses.add(occurrence.name)
                    if occurrence.decoration is Decoration.PLAIN:
                        plain.add(occurrence.name)
            primes.append(Prime(
                id=f"{schema.name}#{len(primes)}",
                schema=schema.name,
                kind=kind,
                def_set=frozenset(defs),
                use_set=frozenset(uses),
                is_guard=not defs,
                plain_uses=frozenset(plain),
                text=render_expr(conjunct),
                line=predicate.line,
                origin=predicate.origin,
            ))
    return primes


@dataclass(frozen=True)
class SRN:
    primes: Tuple[Prime, ...]
    control_arcs: FrozenSet[ControlArc] = frozenset()
    data_arcs: FrozenSet[DataArc] = frozenset()
    interschema_arcs: FrozenSet[InterschemaArc] = frozenset()
    schema_names: Tuple[str, ...] = ()

    def prime(self, prime_id: str) -> Prime:
        for prime in self.primes:
            if prime.id == prime_id:
                return prime
        raise KeyError(prime_id)

    def primes_of(self, schema: str) -> List[Prime]:
        return [prime for prime in self.primes if prime.schema == schema]

    def control_arcs_of(self, schema: str) -> Set[ControlArc]:
        ids = {prime.id for prime in self.primes_of(schema)}
        return {arc for arc in self.control_arcs if arc[0] in ids}

    def data_arcs_of(self, schema: str) -> Set[DataArc]:
        ids = {prime.id for prime in self.primes_of(schema)}
        return {arc for arc in self.data_arcs if arc[0] in ids}

    def dependence_graph(self, schema: str) -> nx.DiGraph:
        """Intra-schema graph over control and data arcs."""
        graph = nx.DiGraph()
        graph.add_nodes_from(prime.id for prime in self.primes_of(schema))
        graph.add_edges_from(self.control_arcs_of(schema))
        graph.add_edges_from((src, dst) for src, dst, _ in self.data_arcs_of(schema))
        return graph

    def to_graph(self) -> nx.MultiDiGraph:
        """The whole net with typed arcs, for inspection."""
        graph = nx.MultiDiGraph()
        for prime in self.primes:
            graph.add_node(prime.id, schema=prime.schema, kind=prime.kind.value,
                           guard=prime.is_guard, text=prime.text)
        for src, dst in sorted(self.control_arcs):
            graph.add_edge(src, dst, type='control', variable='')
        for src, dst, variable in sorted(self.data_arcs):
            graph.add_edge(src, dst, type='data', variable=variable)
        for _, _, src, dst, variable in sorted(self.interschema_arcs):
            graph.add_edge(src, dst, type='interschema', variable=variable)
        return graph

    def dump(self, path: PathLike) -> None:
        """Write the net as GraphML."""
        atomic_write_text(path, '\n'.join(nx.generate_graphml(self.to_graph())) + '\n')


class SRNBuilder:
    """
    Reconstructs dependencies between primes.

    - control: guard prime -> every non-guard predicate prime of the schema
    - data: definer -> user of the same base name within a schema; a
      declaration reaches every predicate prime mentioning its name
    - inter-schema: after-state definer in A -> plain user in B, for names
      declared by a schema both A and B include
    """
    def __init__(self, spec: Specification):
        self.spec = resolve_inclusions(spec)
        self.closure = inclusion_closure(self.spec)
        self.primes: Dict[str, List[Prime]] = {
            schema.name: split_primes(schema) for schema in self.spec.schemas
        }

    def build(self) -> SRN:
        control: Set[ControlArc] = set()
        data: Set[DataArc] = set()
        for primes in self.primes.values():
            control |= self._control_arcs(primes)
            data |= self._data_arcs(primes)
        interschema = self._interschema_arcs()
        srn = SRN(
            primes=tuple(prime for primes in self.primes.values() for prime in primes),
            control_arcs=frozenset(control),
            data_arcs=frozenset(data),
            interschema_arcs=frozenset(interschema),
            schema_names=self.spec.schema_names,
        )
        logger.debug("built SRN: %d primes, %d control, %d data, %d inter-schema arcs",
                     len(srn.primes), len(control), len(data), len(interschema))
        return srn

    @staticmethod
    def _control_arcs(primes: Iterable[Prime]) -> Set[ControlArc]:
        predicates = [prime for prime in primes if not prime.is_declaration]
        return {(guard.id, target.id)
                for guard in predicates if guard.is_guard
                for target in predicates if not target.is_guard and target.id != guard.id}

    @staticmethod
    def _data_arcs(primes: List[Prime]) -> Set[DataArc]:
        arcs = set()
        for source in primes:
            for target in primes:
                if source.id == target.id or target.is_declaration:
                    continue
                reached = target.mentions if source.is_declaration else target.use_set
                for name in source.defined_names & reached:
                    arcs.add((source.id, target.id, name))
        return arcs

    def _state_names(self, schemas: Iterable[str]) -> Set[str]:
        names = set()
        for name in schemas:
            for declaration in self.spec.schema(name).declarations:
                if declaration.origin is None:
                    names.add(declaration.name)
        return names

    def _interschema_arcs(self) -> Set[InterschemaArc]:
        arcs = set()
        names = self.spec.schema_names
        for source_schema in names:
            for target_schema in names:
                if source_schema == target_schema:
                    continue
                shared = self.closure[source_schema] & self.closure[target_schema]
                if not shared:
                    continue
                state = self._state_names(shared)
                for source in self.primes[source_schema]:
                    if source.is_declaration:
                        continue
                    for name, decoration in source.def_set:
                        if not decoration.is_def or name not in state:
                            continue
                        for target in self.primes[target_schema]:
                            if not target.is_declaration and name in target.plain_uses:
                                arcs.add((source_schema, target_schema, source.id, target.id, name))
        return arcs


def build_srn(spec: Specification) -> SRN:
    """Split every schema into primes and reconstruct their dependencies."""
    return SRNBuilder(spec).build()
