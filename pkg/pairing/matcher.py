# pairing/matcher.py

"""
Matches trace links to schema names.

Every schema ends up in exactly one of: pairs (one unit), conflicts (several
units) or unreferenced. Unknown names within the edit distance of exactly one
schema become suggestions, everything else unknown is dangling. Suggestions
are never paired.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, NamedTuple, Tuple, Union

from core.config import DEFAULT_EDIT_DISTANCE
from core.utils import levenshtein
from zspec.model import Specification
from .trace_units import TraceLink

logger = logging.getLogger(__name__)


class Suggestion(NamedTuple):
    name: str
    schema: str
    distance: int
    unit: str


@dataclass(frozen=True)
class PairingReport:
    pairs: Tuple[Tuple[str, str], ...] = ()
    dangling: Tuple[Tuple[str, str], ...] = ()
    unreferenced: Tuple[str, ...] = ()
    suggestions: Tuple[Suggestion, ...] = ()
    conflicts: Tuple[Tuple[str, Tuple[str, ...]], ...] = ()

    def as_dict(self) -> Dict[str, Any]:
        return {
            'pairs': [{'schema': schema, 'unit': unit} for schema, unit in self.pairs],
            'dangling': [{'unit': unit, 'name': name} for unit, name in self.dangling],
            'unreferenced': list(self.unreferenced),
            'suggestions': [s._asdict() for s in self.suggestions],
            'conflicts': [{'schema': schema, 'units': list(units)} for schema, units in self.conflicts],
        }

    def summary(self) -> str:
        return (f"{len(self.pairs)} pairs, {len(self.conflicts)} conflicts, "
                f"{len(self.dangling)} dangling, {len(self.suggestions)} suggestions, "
                f"{len(self.unreferenced)} unreferenced")


def match_pairs(spec: Union[Specification, Iterable[str]], traces: Iterable[TraceLink],
                max_edit_distance: int = DEFAULT_EDIT_DISTANCE) -> PairingReport:
    """Case-sensitive matching; the result does not depend on the order of traces."""
    schemas = list(spec.schema_names) if isinstance(spec, Specification) else list(spec)
    known = set(schemas)
    referencing: Dict[str, set] = {}
    dangling = set()
    suggestions = set()

    for link in traces:
        if link.schema in known:
            referencing.setdefault(link.schema, set()).add(link.unit)
            continue
        near = [(levenshtein(link.schema, schema), schema) for schema in schemas]
        near = [(distance, schema) for distance, schema in near if distance <= max_edit_distance]
        if len(near) == 1:
            distance, schema = near[0]
            suggestions.add(Suggestion(link.schema, schema, distance, link.unit))
        else:
            dangling.add((link.unit, link.schema))

    pairs: List[Tuple[str, str]] = []
    conflicts: List[Tuple[str, Tuple[str, ...]]] = []
    for schema in sorted(referencing):
        units = sorted(referencing[schema])
        if len(units) == 1:
            pairs.append((schema, units[0]))
        else:
            conflicts.append((schema, tuple(units)))
    unreferenced = sorted(known - set(referencing))

    report = PairingReport(
        pairs=tuple(pairs),
        dangling=tuple(sorted(dangling)),
        unreferenced=tuple(unreferenced),
        suggestions=tuple(sorted(suggestions)),
        conflicts=tuple(conflicts),
    )
    logger.info("pairing: %s", report.summary())
    for suggestion in report.suggestions:
        logger.warning("unit %s traces unknown %r; did you mean %r?",
                       suggestion.unit, suggestion.name, suggestion.schema)
    return report
