# mil/metrics.py

"""
The nine code measures per subprogram unit.

Lines:       CL (physical), CLC (with code), CLCD (declarative), CLCE (executable)
Control:     CYC (cyclomatic), KNOTS (interleaving jumps)
Information: FIN, FOUT and SI = (FIN * FOUT) ** 2
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Tuple, Type

from core.config import CODE_METRICS, DEFAULT_FLOW_POLICY
from core.errors import UsageError
from .call_graph import CallGraph, build_call_graph
from .model import CodeUnit, LineClass, UnitKind
from .parser import resolve_corpus_actuals

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CodeMetrics:
    CL: int
    CLC: int
    CLCD: int
    CLCE: int
    CYC: int
    KNOTS: int
    FIN: int
    FOUT: int
    SI: int

    def as_row(self) -> Tuple[int, ...]:
        return tuple(getattr(self, name) for name in CODE_METRICS)

    def as_dict(self) -> Dict[str, int]:
        return {name: getattr(self, name) for name in CODE_METRICS}


def line_counts(unit: CodeUnit) -> Tuple[int, int, int, int]:
    counts = unit.class_counts()
    code_lines = sum(count for line_class, count in counts.items() if line_class.is_code)
    return unit.length, code_lines, counts[LineClass.DECLARATIVE], counts[LineClass.EXECUTABLE]


def cyclomatic(unit: CodeUnit) -> int:
    return 1 + unit.decisions.total


def knots(unit: CodeUnit) -> int:
    """Unordered pairs of jumps whose line spans strictly interleave."""
    spans = [(min(source, target), max(source, target)) for source, target in unit.jumps]
    count = 0
    for (s1, t1), (s2, t2) in combinations(spans, 2):
        if s1 < s2 < t1 < t2 or s2 < s1 < t2 < t1:
            count += 1
    return count


class FlowPolicy(ABC):
    """How data flows into and out of a unit are counted."""

    @abstractmethod
    def fan_in(self, unit: CodeUnit, graph: CallGraph) -> int:
        pass

    @abstractmethod
    def fan_out(self, unit: CodeUnit, graph: CallGraph) -> int:
        pass


class ShepperdFlow(FlowPolicy):
    """Callers, flowing-in parameters and globals read; callees, flowing-out
    parameters, a function result and globals written."""

    def fan_in(self, unit: CodeUnit, graph: CallGraph) -> int:
        params = sum(1 for param in unit.params if param.mode.flows_in)
        return len(graph.callers_of(unit.name)) + params + len(unit.global_reads)

    def fan_out(self, unit: CodeUnit, graph: CallGraph) -> int:
        params = sum(1 for param in unit.params if param.mode.flows_out)
        result = 1 if unit.kind is UnitKind.FUNCTION else 0
        return len(graph.callees_of(unit.name)) + params + result + len(unit.global_writes)


class CallsOnlyFlow(FlowPolicy):
    def fan_in(self, unit: CodeUnit, graph: CallGraph) -> int:
        return len(graph.callers_of(unit.name))

    def fan_out(self, unit: CodeUnit, graph: CallGraph) -> int:
        return len(graph.callees_of(unit.name))


class FlowPolicyFactory:
    _policies: Dict[str, Type[FlowPolicy]] = {
        'shepperd': ShepperdFlow,
        'calls_only': CallsOnlyFlow,
    }

    @classmethod
    def create_policy(cls, name: str = DEFAULT_FLOW_POLICY) -> FlowPolicy:
        if name not in cls._policies:
            raise UsageError(f"Unknown flow policy: {name}")
        return cls._policies[name]()

    @classmethod
    def get_available_policies(cls) -> List[str]:
        return list(cls._policies.keys())

    @classmethod
    def register_policy(cls, name: str, policy_class: Type[FlowPolicy]) -> None:
        cls._policies[name] = policy_class


def information_flow(unit: CodeUnit, graph: CallGraph,
                     policy: Optional[FlowPolicy] = None) -> Tuple[int, int, int]:
    policy = policy or FlowPolicyFactory.create_policy()
    fan_in = policy.fan_in(unit, graph)
    fan_out = policy.fan_out(unit, graph)
    return fan_in, fan_out, (fan_in * fan_out) ** 2


def unit_metrics(unit: CodeUnit, graph: CallGraph,
                 policy: Optional[FlowPolicy] = None) -> CodeMetrics:
    cl, clc, clcd, clce = line_counts(unit)
    fan_in, fan_out, si = information_flow(unit, graph, policy)
    return CodeMetrics(CL=cl, CLC=clc, CLCD=clcd, CLCE=clce, CYC=cyclomatic(unit),
                       KNOTS=knots(unit), FIN=fan_in, FOUT=fan_out, SI=si)


def measure_code(units: Iterable[CodeUnit], policy_name: str = DEFAULT_FLOW_POLICY) -> Dict[str, CodeMetrics]:
    """Metrics for every unit, keyed by unit name in input order; a repeated name keeps its first unit."""
    units = resolve_corpus_actuals(list(units))
    graph = build_call_graph(units)
    policy = FlowPolicyFactory.create_policy(policy_name)
    table: Dict[str, CodeMetrics] = {}
    for unit in units:
        if unit.name in table:
            logger.warning("unit %s defined more than once; keeping the first (%s)",
                           unit.name, unit.source or '<input>')
            continue
        table[unit.name] = unit_metrics(unit, graph, policy)
    return table
