# pairing/trace_units.py

import logging
import re
from dataclasses import dataclass
from typing import Iterable, List, Optional

from core.config import TRACE_UNIT_PATTERN
from core.errors import OrphanTraceComment
from mil.model import CodeUnit

logger = logging.getLogger(__name__)

_TRACE_RE = re.compile(TRACE_UNIT_PATTERN)


@dataclass(frozen=True)
class TraceLink:
    unit: str
    schema: str
    line: int
    source: Optional[str] = None


def _bound_unit(units: List[CodeUnit], line: int) -> Optional[CodeUnit]:
    """A trace comment sits right above a header or on the first line after `is` or `begin`."""
    for unit in units:
        if unit.first_line == line + 1 or line in (unit.header_end + 1, unit.begin_line + 1):
            return unit
    return None


def extract_trace_units(units: Iterable[CodeUnit], source: str,
                        filename: Optional[str] = None) -> List[TraceLink]:
    """Links declared by `-- trace_unit: <Schema>` comments of one source file."""
    units = list(units)
    links = []
    for number, text in enumerate(source.splitlines(), start=1):
        match = _TRACE_RE.search(text)
        if match is None:
            continue
        unit = _bound_unit(units, number)
        if unit is None:
            error = OrphanTraceComment(number)
            error.source = filename
            raise error
        links.append(TraceLink(unit.name, match.group(1), number, filename))
    logger.debug("%d trace link(s) in %s", len(links), filename or '<input>')
    return links
