# zspec/metrics.py

"""
The eleven specification measures, computed per schema over the SRN.

Size:       CC, AND, OR, USE, DEF
Structure:  VL, VU (logical complexity bounds), DU
Semantics:  COV (coverage), OVL (overlap) from backward slices, CHI (coupling)

The coupling weighting is a reconstruction: for schema i among k schemas,

    CHI = [ sum_{j != i} (f(i->j) + f(j->i)) / (|i| + |j|) ] / (k - 1)

with f counting inter-schema arcs and |.| the prime count.
"""

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Tuple, Union

import networkx as nx

from core.config import SPEC_METRICS
from core.errors import CriterionOutsideSchema
from .inclusions import resolve_inclusions
from .model import SchemaDef, Specification, count_connectives, occurrences
from .srn import SRN, Prime, build_srn

logger = logging.getLogger(__name__)

SchemaRef = Union[str, SchemaDef]


@dataclass(frozen=True)
class SpecMetrics:
    CC: int
    VL: int
    VU: int
    DU: int
    USE: int
    DEF: int
    AND: int
    OR: int
    COV: float
    OVL: float
    CHI: float
    degenerate: bool = False

    def as_row(self) -> Tuple:
        return tuple(getattr(self, name) for name in SPEC_METRICS)

    def as_dict(self) -> Dict[str, float]:
        return {name: getattr(self, name) for name in SPEC_METRICS}


@dataclass(frozen=True)
class SlicePrfl:
    schema: str
    size: int
    criteria: Tuple[Tuple[str, FrozenSet[str]], ...]
    slices: Tuple[FrozenSet[str], ...]


class SemanticMetrics(NamedTuple):
    coverage: float
    overlap: float
    degenerate: bool


def _name(schema: SchemaRef) -> str:
    return schema if isinstance(schema, str) else schema.name


def _identifier_sets(schema: SchemaDef) -> Tuple[set, set]:
    used, defined = set(), set()
    for predicate in schema.predicates:
        for occurrence in occurrences(predicate.expr):
            (defined if occurrence.decoration.is_def else used).add(occurrence.name)
    return used, defined


def basic_metrics(schema: SchemaDef, srn: SRN) -> Tuple[int, int, int, int, int]:
    """(CC, AND, OR, USE, DEF) for an inclusion-expanded schema."""
    cc = len(srn.primes_of(schema.name))
    and_count = sum(count_connectives(p.expr, 'and') for p in schema.predicates)
    or_count = sum(count_connectives(p.expr, 'or') for p in schema.predicates)
    used, defined = _identifier_sets(schema)
    return cc, and_count, or_count, len(used), len(defined)


def structure_metrics(schema: SchemaRef, srn: SRN) -> Tuple[int, int, int]:
    """(VL, VU, DU): logical complexity bounds and data dependency count."""
    name = _name(schema)
    control = srn.control_arcs_of(name)
    v_l = 1 + len({dst for _, dst in control})
    v_u = 1 + len(control)
    return v_l, v_u, len(srn.data_arcs_of(name))


def backward_slice(srn: SRN, schema: SchemaRef, criterion: Iterable[str]) -> FrozenSet[str]:
    """Criterion plus every prime reaching it over intra-schema arcs."""
    name = _name(schema)
    criterion = frozenset(criterion)
    graph = srn.dependence_graph(name)
    outside = criterion - set(graph.nodes)
    if outside:
        raise CriterionOutsideSchema(
            f"primes {sorted(outside)} are not part of schema {name!r}")
    reached = set(criterion)
    for prime_id in criterion:
        reached |= nx.ancestors(graph, prime_id)
    return frozenset(reached)


def _defined_variables(primes: List[Prime]) -> List[str]:
    names = set()
    for prime in primes:
        if prime.is_declaration:
            continue
        names |= {name for name, decoration in prime.def_set if decoration.is_def}
    return sorted(names)


def slice_profile(srn: SRN, schema: SchemaRef) -> SlicePrfl:
    """One slice per after-state variable, ordered by variable name."""
    name = _name(schema)
    primes = srn.primes_of(name)
    criteria = []
    slices = []
    for variable in _defined_variables(primes):
        criterion = frozenset(p.id for p in primes if p.defines_after_state(variable))
        criteria.append((variable, criterion))
        slices.append(backward_slice(srn, name, criterion))
    return SlicePrfl(name, len(primes), tuple(criteria), tuple(slices))


def semantic_metrics(profile: SlicePrfl) -> SemanticMetrics:
    """Coverage and overlap; both 0 and flagged degenerate without slices or primes."""
    m, n = len(profile.slices), profile.size
    if m == 0 or n == 0:
        return SemanticMetrics(0.0, 0.0, True)
    common = frozenset.intersection(*profile.slices)
    coverage = sum(len(s) / n for s in profile.slices) / m
    overlap = sum(len(common) / len(s) for s in profile.slices) / m
    return SemanticMetrics(coverage, overlap, False)


def coupling(srn: SRN, schema: SchemaRef) -> float:
    """Normalised inter-schema flow between one schema and all others."""
    name = _name(schema)
    others = [other for other in srn.schema_names if other != name]
    if not others:
        return 0.0
    flows: Dict[Tuple[str, str], int] = {}
    for source, target, _, _, _ in srn.interschema_arcs:
        flows[(source, target)] = flows.get((source, target), 0) + 1
    size = len(srn.primes_of(name))
    total = 0.0
    for other in others:
        combined = size + len(srn.primes_of(other))
        if combined == 0:
            continue
        total += (flows.get((name, other), 0) + flows.get((other, name), 0)) / combined
    return total / len(others)


def schema_metrics(schema: SchemaDef, srn: SRN) -> SpecMetrics:
    cc, and_count, or_count, use, define = basic_metrics(schema, srn)
    v_l, v_u, du = structure_metrics(schema, srn)
    semantics = semantic_metrics(slice_profile(srn, schema))
    return SpecMetrics(
        CC=cc, VL=v_l, VU=v_u, DU=du, USE=use, DEF=define, AND=and_count, OR=or_count,
        COV=semantics.coverage, OVL=semantics.overlap, CHI=coupling(srn, schema),
        degenerate=semantics.degenerate,
    )


def measure_specification(spec: Specification) -> Dict[str, SpecMetrics]:
    """Metrics for every schema, in specification order."""
    expanded = resolve_inclusions(spec)
    srn = build_srn(expanded)
    table = {schema.name: schema_metrics(schema, srn) for schema in expanded.schemas}
    degenerate = [name for name, metrics in table.items() if metrics.degenerate]
    if degenerate:
        logger.info("no slices for %d schema(s): %s", len(degenerate), ', '.join(degenerate))
    return table
