# mil/call_graph.py

import logging
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Set, Tuple

import networkx as nx

from .model import CodeUnit

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CallGraph:
    """Caller -> callee edges over unit names; callees outside the corpus are external."""
    vertices: FrozenSet[str]
    edges: FrozenSet[Tuple[str, str]]
    external: FrozenSet[str] = frozenset()

    def callers_of(self, name: str) -> Set[str]:
        return {caller for caller, callee in self.edges if callee == name}

    def callees_of(self, name: str) -> Set[str]:
        return {callee for caller, callee in self.edges if caller == name}

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        for vertex in sorted(self.vertices):
            graph.add_node(vertex, external=vertex in self.external)
        graph.add_edges_from(sorted(self.edges))
        return graph


def build_call_graph(units: Iterable[CodeUnit]) -> CallGraph:
    units = list(units)
    defined = {unit.name for unit in units}
    edges = {(unit.name, callee) for unit in units for callee in unit.callees}
    external = {callee for _, callee in edges if callee not in defined}
    if external:
        logger.debug("external callees: %s", ', '.join(sorted(external)))
    return CallGraph(frozenset(defined | external), frozenset(edges), frozenset(external))
