# mil/model.py

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Optional, Tuple


class UnitKind(Enum):
    PROCEDURE = 'procedure'
    FUNCTION = 'function'


class ParamMode(Enum):
    IN = 'in'
    OUT = 'out'
    IN_OUT = 'in out'

    @property
    def flows_in(self) -> bool:
        return self in (ParamMode.IN, ParamMode.IN_OUT)

    @property
    def flows_out(self) -> bool:
        return self in (ParamMode.OUT, ParamMode.IN_OUT)


class LineClass(Enum):
    BLANK = 'blank'
    COMMENT = 'comment'
    HEADER = 'header'
    DECLARATIVE = 'declarative'
    EXECUTABLE = 'executable'
    TERMINATOR = 'terminator'

    @property
    def is_code(self) -> bool:
        return self not in (LineClass.BLANK, LineClass.COMMENT)


@dataclass(frozen=True)
class Param:
    name: str
    mode: ParamMode
    type_text: str


@dataclass(frozen=True)
class Decisions:
    """Per-construct decision tallies of one unit."""
    if_count: int = 0
    elsif_count: int = 0
    while_count: int = 0
    for_count: int = 0
    exit_when_count: int = 0
    case_arms: Tuple[int, ...] = ()
    and_then_count: int = 0
    or_else_count: int = 0

    @property
    def total(self) -> int:
        return (self.if_count + self.elsif_count + self.while_count + self.for_count
                + self.exit_when_count + sum(max(0, arms - 1) for arms in self.case_arms)
                + self.and_then_count + self.or_else_count)


@dataclass(frozen=True)
class PendingActual:
    """A global passed to a callee whose signature lies outside the unit's source."""
    callee: str
    position: int
    formal: Optional[str]
    global_name: str


@dataclass(frozen=True)
class CodeUnit:
    name: str
    kind: UnitKind
    params: Tuple[Param, ...]
    span: Tuple[int, int]
    line_classes: Dict[int, LineClass] = field(compare=False)
    jumps: Tuple[Tuple[int, int], ...] = ()
    decisions: Decisions = Decisions()
    calls: Tuple[str, ...] = ()
    global_reads: FrozenSet[str] = frozenset()
    global_writes: FrozenSet[str] = frozenset()
    header_end: int = 0
    begin_line: int = 0
    source: Optional[str] = None
    pending_actuals: Tuple[PendingActual, ...] = ()
    # global_reads without those implied by pending_actuals
    settled_reads: FrozenSet[str] = frozenset()

    @property
    def first_line(self) -> int:
        return self.span[0]

    @property
    def last_line(self) -> int:
        return self.span[1]

    @property
    def length(self) -> int:
        return self.span[1] - self.span[0] + 1

    @property
    def callees(self) -> Tuple[str, ...]:
        """Distinct callees in first-call order."""
        return tuple(dict.fromkeys(self.calls))

    @property
    def call_counts(self) -> Dict[str, int]:
        return dict(Counter(self.calls))

    def class_counts(self) -> Dict[LineClass, int]:
        counts = {line_class: 0 for line_class in LineClass}
        for line_class in self.line_classes.values():
            counts[line_class] += 1
        return counts
