# mil/parser.py

"""
Recursive descent parser for MIL, the Ada-flavoured mini language.

Every physical line is classified by the region its first code token falls
in: header (the subprogram specification and `begin`), declarative,
executable or terminator (the closing `end`). Lines without code are blank
or comment. Keywords are case-insensitive, names are not.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, List, Optional, Sequence, Set, Tuple, Union

from core.errors import CodeSyntaxError, ParseError, UnresolvedExit, UnresolvedLabel
from .lexer import Token, TokenType, tokenize
from .model import CodeUnit, Decisions, LineClass, Param, ParamMode, PendingActual, UnitKind

logger = logging.getLogger(__name__)

_RELATIONAL = frozenset({'=', '/=', '<', '<=', '>', '>='})
_ADDING = frozenset({'+', '-', '&'})
_MULTIPLYING = frozenset({'*', '/', 'mod', 'rem'})
_SEQUENCE_END = frozenset({'end', 'elsif', 'else', 'when'})


@dataclass(frozen=True)
class _Actual:
    position: int
    formal: Optional[str]
    global_name: Optional[str]


@dataclass
class _LoopFrame:
    exits: List[int] = field(default_factory=list)


@dataclass
class _UnitState:
    name: str
    kind: UnitKind
    params: Tuple[Param, ...]
    first_line: int
    header_end: int
    objects: Set[str]
    last_line: int = 0
    begin_line: int = 0
    decisions: Counter = field(default_factory=Counter)
    case_arms: List[int] = field(default_factory=list)
    calls: List[str] = field(default_factory=list)
    call_sites: List[Tuple[str, List[_Actual]]] = field(default_factory=list)
    reads: Set[str] = field(default_factory=set)
    writes: Set[str] = field(default_factory=set)
    pending: List[PendingActual] = field(default_factory=list)
    settled_reads: Set[str] = field(default_factory=set)
    labels: Dict[str, int] = field(default_factory=dict)
    gotos: List[Tuple[int, str]] = field(default_factory=list)
    loops: List[_LoopFrame] = field(default_factory=list)
    jumps: List[Tuple[int, int]] = field(default_factory=list)

    def add_jump(self, source: int, target: int) -> None:
        if source != target:
            self.jumps.append((source, target))


class CodeParser:
    def __init__(self, source: str, filename: Optional[str] = None):
        self.filename = filename
        self.tokens, self.comment_lines = tokenize(source)
        self.pos = 0
        self.region = LineClass.DECLARATIVE
        self.line_classes: Dict[int, LineClass] = {}
        self.globals: Set[str] = set()
        self.unit: Optional[_UnitState] = None
        self._statement_parsers: Dict[str, Callable[[], None]] = {
            'if': self._if_statement,
            'while': self._while_statement,
            'for': self._for_statement,
            'loop': self._loop_body,
            'case': self._case_statement,
            'return': self._return_statement,
            'goto': self._goto_statement,
            'exit': self._exit_statement,
            'null': self._null_statement,
        }

    # Token handling

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def _peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    @staticmethod
    def _is(token: Token, text: str) -> bool:
        return token.type in (TokenType.KEYWORD, TokenType.SYMBOL) and token.text == text

    def _at(self, text: str) -> bool:
        return self._is(self.current, text)

    def _advance(self) -> Token:
        token = self.current
        if token.type is TokenType.EOF:
            raise CodeSyntaxError(token.line, "unexpected end of file")
        if token.first_on_line:
            self.line_classes.setdefault(token.line, self.region)
        self.pos += 1
        return token

    def _accept(self, text: str) -> bool:
        if self._at(text):
            self._advance()
            return True
        return False

    def _expect(self, text: str) -> Token:
        if not self._at(text):
            raise CodeSyntaxError(self.current.line,
                                  f"expected {text!r}, found {self.current.text or 'end of file'!r}")
        return self._advance()

    def _expect_name(self) -> Token:
        if self.current.type is not TokenType.NAME:
            raise CodeSyntaxError(self.current.line,
                                  f"expected a name, found {self.current.text or 'end of file'!r}")
        return self._advance()

    def _dotted_name(self) -> str:
        parts = [self._expect_name().text]
        while self._at('.') and self._peek().type is TokenType.NAME:
            self._advance()
            parts.append(self._advance().text)
        return '.'.join(parts)

    # Name bookkeeping

    def _is_object(self, name: str) -> bool:
        if self.unit is not None and name in self.unit.objects:
            return True
        return name in self.globals

    def _global(self, name: str) -> Optional[str]:
        """The name itself when it denotes an unshadowed global."""
        if self.unit is None or name in self.unit.objects or name not in self.globals:
            return None
        return name

    def _record_read(self, name: str) -> None:
        if self._global(name):
            self.unit.reads.add(name)

    def _record_write(self, name: str) -> None:
        if self._global(name):
            self.unit.writes.add(name)

    def _record_call(self, callee: str, actuals: List[_Actual]) -> None:
        if self.unit is not None:
            self.unit.calls.append(callee)
            self.unit.call_sites.append((callee, actuals))

    def _count(self, construct: str) -> None:
        if self.unit is not None:
            self.unit.decisions[construct] += 1

    # File level

    def parse(self) -> List[CodeUnit]:
        while self.current.type is TokenType.NAME:
            self.globals.update(self._object_declaration())
        states = []
        while self.current.type is not TokenType.EOF:
            if not (self._at('procedure') or self._at('function')):
                raise CodeSyntaxError(self.current.line,
                                      f"expected 'procedure' or 'function', found {self.current.text!r}")
            states.append(self._subprogram())
        self._resolve_actuals(states)
        units = [self._finish(state) for state in states]
        logger.debug("parsed %d unit(s) from %s", len(units), self.filename or '<input>')
        return units

    def _object_declaration(self) -> List[str]:
        names = [self._expect_name().text]
        while self._accept(','):
            names.append(self._expect_name().text)
        self._expect(':')
        self._accept('constant')
        while not (self._at(':=') or self._at(';')):
            self._advance()
        if self._accept(':='):
            self._expression()
        self._expect(';')
        return names

    def _subprogram(self) -> _UnitState:
        self.region = LineClass.HEADER
        start = self._advance()
        kind = UnitKind(start.text)
        name = self._expect_name().text
        params = self._parameters() if self._at('(') else ()
        if kind is UnitKind.FUNCTION:
            self._expect('return')
            self._dotted_name()
        header_end = self._expect('is').line

        self.unit = _UnitState(name, kind, params, start.line, header_end,
                               objects={param.name for param in params})
        self.region = LineClass.DECLARATIVE
        while not self._at('begin'):
            self.unit.objects.update(self._object_declaration())
        self.region = LineClass.HEADER
        self.unit.begin_line = self._expect('begin').line
        self.region = LineClass.EXECUTABLE
        self._statements()
        self.region = LineClass.TERMINATOR
        self._expect('end')
        if self.current.type is TokenType.NAME:
            closing = self._advance()
            if closing.text != name:
                raise CodeSyntaxError(closing.line, f"'end {closing.text}' does not close {name!r}")
        self.unit.last_line = self._expect(';').line

        state, self.unit = self.unit, None
        self.region = LineClass.DECLARATIVE
        for source, label in state.gotos:
            if label not in state.labels:
                raise UnresolvedLabel(label, source)
            state.add_jump(source, state.labels[label])
        return state

    def _parameters(self) -> Tuple[Param, ...]:
        self._expect('(')
        params: List[Param] = []
        if not self._at(')'):
            while True:
                names = [self._expect_name().text]
                while self._accept(','):
                    names.append(self._expect_name().text)
                self._expect(':')
                mode = ParamMode.IN
                if self._accept('in'):
                    mode = ParamMode.IN_OUT if self._accept('out') else ParamMode.IN
                elif self._accept('out'):
                    mode = ParamMode.OUT
                type_text = self._dotted_name()
                if self._accept(':='):
                    self._expression()
                params.extend(Param(name, mode, type_text) for name in names)
                if not self._accept(';'):
                    break
        self._expect(')')
        return tuple(params)

    # Statements

    def _statements(self) -> None:
        while self.current.type is not TokenType.EOF:
            token = self.current
            if token.type is TokenType.KEYWORD and token.text in _SEQUENCE_END:
                return
            self._statement()

    def _statement(self) -> None:
        token = self.current
        if self._is(token, '<<'):
            self._label()
        elif token.type is TokenType.KEYWORD and token.text in self._statement_parsers:
            self._statement_parsers[token.text]()
        elif token.type is TokenType.NAME:
            self._simple_statement()
        else:
            raise CodeSyntaxError(token.line, f"unexpected {token.text or 'end of file'!r}")

    def _label(self) -> None:
        self._expect('<<')
        name = self._expect_name()
        self._expect('>>')
        if name.text in self.unit.labels:
            raise CodeSyntaxError(name.line, f"label {name.text!r} defined twice")
        self.unit.labels[name.text] = name.line

    def _if_statement(self) -> None:
        self._expect('if')
        self._count('if')
        self._expression()
        self._expect('then')
        self._statements()
        while self._accept('elsif'):
            self._count('elsif')
            self._expression()
            self._expect('then')
            self._statements()
        if self._accept('else'):
            self._statements()
        self._expect('end')
        self._expect('if')
        self._expect(';')

    def _while_statement(self) -> None:
        self._expect('while')
        self._count('while')
        self._expression()
        self._loop_body()

    def _for_statement(self) -> None:
        self._expect('for')
        self._count('for')
        self.unit.objects.add(self._expect_name().text)
        self._expect('in')
        self._accept('reverse')
        self._expression()
        if self._accept('..'):
            self._expression()
        self._loop_body()

    def _loop_body(self) -> None:
        self._expect('loop')
        frame = _LoopFrame()
        self.unit.loops.append(frame)
        self._statements()
        end = self._expect('end')
        self._expect('loop')
        self._expect(';')
        self.unit.loops.pop()
        for source in frame.exits:
            self.unit.add_jump(source, end.line)

    def _case_statement(self) -> None:
        self._expect('case')
        self._expression()
        self._expect('is')
        arms = 0
        while self._accept('when'):
            arms += 1
            self._choices()
            self._expect('=>')
            self._statements()
        self._expect('end')
        self._expect('case')
        self._expect(';')
        self.unit.case_arms.append(arms)

    def _choices(self) -> None:
        while True:
            if not self._accept('others'):
                self._simple_expression()
                if self._accept('..'):
                    self._simple_expression()
            if not self._accept('|'):
                return

    def _return_statement(self) -> None:
        self._expect('return')
        if not self._at(';'):
            self._expression()
        self._expect(';')

    def _goto_statement(self) -> None:
        line = self._expect('goto').line
        label = self._expect_name().text
        self._expect(';')
        self.unit.gotos.append((line, label))

    def _exit_statement(self) -> None:
        line = self._expect('exit').line
        if not self.unit.loops:
            raise UnresolvedExit(line)
        if self._accept('when'):
            self._count('exit_when')
            self._expression()
        self._expect(';')
        self.unit.loops[-1].exits.append(line)

    def _null_statement(self) -> None:
        self._expect('null')
        self._expect(';')

    def _simple_statement(self) -> None:
        """Assignment or procedure call, both starting with a name."""
        line = self.current.line
        path = self._dotted_name()
        base = path.split('.')[0]
        if not self._is_object(base):
            actuals = self._call_arguments() if self._at('(') else []
            if self._accept(':='):
                # target declared outside this source
                self._expression()
                self._expect(';')
                return
            self._expect(';')
            self._record_call(path, actuals)
            return
        self._selectors()
        if not self._accept(':='):
            raise CodeSyntaxError(line, f"expected ':=' after {path!r}")
        self._record_write(base)
        self._expression()
        self._expect(';')

    def _call_arguments(self) -> List[_Actual]:
        self._expect('(')
        actuals: List[_Actual] = []
        if not self._at(')'):
            while True:
                formal = None
                if self.current.type is TokenType.NAME and self._is(self._peek(), '=>'):
                    formal = self._advance().text
                    self._advance()
                global_name = None
                following = self._peek()
                if (self.current.type is TokenType.NAME
                        and (self._is(following, ',') or self._is(following, ')'))):
                    name = self._advance().text
                    global_name = self._global(name)
                else:
                    self._expression()
                actuals.append(_Actual(len(actuals), formal, global_name))
                if not self._accept(','):
                    break
        self._expect(')')
        return actuals

    def _selectors(self) -> None:
        """Indexing, component selection and attributes after an object name."""
        while True:
            if self._accept('('):
                self._expression()
                if self._accept('..'):
                    self._expression()
                while self._accept(','):
                    self._expression()
                self._expect(')')
            elif self._accept('.'):
                self._expect_name()
            elif self._accept("'"):
                self._expect_name()
            else:
                return

    # Expressions

    def _expression(self) -> None:
        self._relation()
        while True:
            if self._accept('and'):
                if self._accept('then'):
                    self._count('and_then')
            elif self._accept('or'):
                if self._accept('else'):
                    self._count('or_else')
            elif not self._accept('xor'):
                return
            self._relation()

    def _relation(self) -> None:
        self._simple_expression()
        token = self.current
        if token.type is TokenType.SYMBOL and token.text in _RELATIONAL:
            self._advance()
            self._simple_expression()
        elif self._at('in') or (self._at('not') and self._is(self._peek(), 'in')):
            self._accept('not')
            self._expect('in')
            self._simple_expression()
            if self._accept('..'):
                self._simple_expression()

    def _simple_expression(self) -> None:
        if self._at('+') or self._at('-'):
            self._advance()
        self._term()
        while self.current.type is TokenType.SYMBOL and self.current.text in _ADDING:
            self._advance()
            self._term()

    def _term(self) -> None:
        self._factor()
        while (self.current.type in (TokenType.KEYWORD, TokenType.SYMBOL)
               and self.current.text in _MULTIPLYING):
            self._advance()
            self._factor()

    def _factor(self) -> None:
        if self._accept('abs') or self._accept('not'):
            self._primary()
            return
        self._primary()
        if self._accept('**'):
            self._primary()

    def _primary(self) -> None:
        token = self.current
        if token.type in (TokenType.NUMBER, TokenType.STRING, TokenType.CHAR) or self._is(token, 'null'):
            self._advance()
        elif self._accept('('):
            self._expression()
            while self._accept(','):
                self._expression()
            self._expect(')')
        elif token.type is TokenType.NAME:
            self._name_expression()
        else:
            raise CodeSyntaxError(token.line,
                                  f"unexpected {token.text or 'end of file'!r} in expression")

    def _name_expression(self) -> None:
        path = self._dotted_name()
        base = path.split('.')[0]
        if self._is_object(base):
            self._record_read(base)
            self._selectors()
        elif self._at('('):
            self._record_call(path, self._call_arguments())
        else:
            # type attributes and enumeration literals
            self._selectors()

    # Finishing

    def _resolve_actuals(self, states: List[_UnitState]) -> None:
        """Globals passed as actuals are reads or writes by the callee's parameter modes."""
        signatures = {}
        for state in states:
            signatures.setdefault(state.name, state.params)
        for state in states:
            for callee, actuals in state.call_sites:
                params = signatures.get(callee)
                for actual in actuals:
                    if actual.global_name is None:
                        continue
                    if params is None:
                        state.pending.append(PendingActual(callee, actual.position, actual.formal,
                                                           actual.global_name))
                        continue
                    _apply_mode(_formal_mode(params, actual), actual.global_name,
                                state.reads, state.writes)
            state.settled_reads = set(state.reads)
            # until the callee is found elsewhere the actual counts as a read
            state.reads.update(pending.global_name for pending in state.pending)

    def _finish(self, state: _UnitState) -> CodeUnit:
        classes: Dict[int, LineClass] = {}
        for line in range(state.first_line, state.last_line + 1):
            if line in self.line_classes:
                classes[line] = self.line_classes[line]
            elif line in self.comment_lines:
                classes[line] = LineClass.COMMENT
            else:
                classes[line] = LineClass.BLANK
        decisions = Decisions(
            if_count=state.decisions['if'],
            elsif_count=state.decisions['elsif'],
            while_count=state.decisions['while'],
            for_count=state.decisions['for'],
            exit_when_count=state.decisions['exit_when'],
            case_arms=tuple(state.case_arms),
            and_then_count=state.decisions['and_then'],
            or_else_count=state.decisions['or_else'],
        )
        return CodeUnit(
            name=state.name,
            kind=state.kind,
            params=state.params,
            span=(state.first_line, state.last_line),
            line_classes=classes,
            jumps=tuple(state.jumps),
            decisions=decisions,
            calls=tuple(state.calls),
            global_reads=frozenset(state.reads),
            global_writes=frozenset(state.writes),
            header_end=state.header_end,
            begin_line=state.begin_line,
            source=self.filename,
            pending_actuals=tuple(state.pending),
            settled_reads=frozenset(state.settled_reads),
        )


def _apply_mode(mode: Optional[ParamMode], name: str, reads: Set[str], writes: Set[str]) -> None:
    if mode is None or mode.flows_in:
        reads.add(name)
    if mode is not None and mode.flows_out:
        writes.add(name)


def _formal_mode(params: Optional[Tuple[Param, ...]],
                 actual: Union[_Actual, PendingActual]) -> Optional[ParamMode]:
    if params is None:
        return None
    if actual.formal is not None:
        for param in params:
            if param.name == actual.formal:
                return param.mode
        return None
    if actual.position < len(params):
        return params[actual.position].mode
    return None


def resolve_corpus_actuals(units: Sequence[CodeUnit]) -> List[CodeUnit]:
    """
    Settle globals passed to callees defined in another source of the corpus.
    A repeated unit name resolves to its first definition; callees found
    nowhere stay pending and keep counting as reads.
    """
    signatures: Dict[str, Tuple[Param, ...]] = {}
    for unit in units:
        signatures.setdefault(unit.name, unit.params)
    resolved = []
    for unit in units:
        if not any(pending.callee in signatures for pending in unit.pending_actuals):
            resolved.append(unit)
            continue
        reads, writes = set(unit.settled_reads), set(unit.global_writes)
        still_pending = []
        for pending in unit.pending_actuals:
            params = signatures.get(pending.callee)
            if params is None:
                still_pending.append(pending)
            else:
                _apply_mode(_formal_mode(params, pending), pending.global_name, reads, writes)
        settled = frozenset(reads)
        reads.update(pending.global_name for pending in still_pending)
        resolved.append(replace(unit, global_reads=frozenset(reads), global_writes=frozenset(writes),
                                pending_actuals=tuple(still_pending), settled_reads=settled))
    return resolved


def parse_code(source: str, filename: Optional[str] = None) -> List[CodeUnit]:
    """All subprogram units of one MIL source, in file order."""
    try:
        return CodeParser(source, filename).parse()
    except ParseError as error:
        error.source = filename
        raise
