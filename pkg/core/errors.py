# core/errors.py

"""
Exception hierarchy. Every error carries the process exit code the CLI maps it to.
"""

from typing import Optional, Sequence

from .config import EXIT_USAGE, EXIT_PARSE, EXIT_DATA, EXIT_NUMERIC


class SuiteError(Exception):
    """Base class for all expected failures."""
    exit_code = EXIT_DATA


class UsageError(SuiteError):
    exit_code = EXIT_USAGE


class ParseError(SuiteError):
    """An input file could not be parsed; carries file and line when known."""
    exit_code = EXIT_PARSE

    def __init__(self, message: str, line: Optional[int] = None, source: Optional[str] = None):
        self.line = line
        self.source = source
        super().__init__(message)

    def __str__(self) -> str:
        message = super().__str__()
        if self.line is None:
            return message
        where = f"{self.source or '<input>'}:{self.line}"
        return f"{where}: {message}"


class DataError(SuiteError):
    exit_code = EXIT_DATA


class NumericError(SuiteError):
    exit_code = EXIT_NUMERIC


# Specification front end

class SpecSyntaxError(ParseError):
    def __init__(self, line: int, expected: str, found: str = ''):
        self.expected = expected
        detail = f"expected {expected}"
        if found:
            detail += f", found {found!r}"
        super().__init__(detail, line)


class DuplicateSchema(ParseError):
    def __init__(self, name: str, line: Optional[int] = None):
        self.name = name
        super().__init__(f"duplicate schema {name!r}", line)


class DuplicateDeclaration(ParseError):
    def __init__(self, schema: str, name: str, line: Optional[int] = None):
        self.schema = schema
        self.name = name
        super().__init__(f"{name!r} declared twice in schema {schema!r}", line)


class UnknownInclusion(ParseError):
    def __init__(self, name: str, line: Optional[int] = None):
        self.name = name
        super().__init__(f"unknown included schema {name!r}", line)


class CyclicInclusion(ParseError):
    def __init__(self, path: Sequence[str]):
        self.path = tuple(path)
        super().__init__("cyclic inclusion: " + " -> ".join(self.path))


# Code front end

class CodeSyntaxError(ParseError):
    def __init__(self, line: int, message: str):
        super().__init__(message, line)


class UnresolvedLabel(ParseError):
    def __init__(self, name: str, line: int):
        self.name = name
        super().__init__(f"goto to undefined label {name!r}", line)


class UnresolvedExit(ParseError):
    def __init__(self, line: int):
        super().__init__("exit outside of any loop", line)


class OrphanTraceComment(ParseError):
    def __init__(self, line: int):
        super().__init__("trace_unit comment is not attached to a subprogram", line)


# Data problems

class CriterionOutsideSchema(DataError):
    pass


class MissingMetrics(DataError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"no metrics recorded for {name!r}")


class ConstantInput(DataError):
    pass


class LengthMismatch(DataError):
    pass


class TooFewSamples(DataError):
    pass


class OutOfRange(DataError):
    pass


class TooFewObservations(DataError):
    pass


class MissingPredictor(DataError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"record lacks predictor {name!r}")


class EmptyCorpus(DataError):
    pass


# Numeric problems

class NonConvergence(NumericError):
    def __init__(self, iterations: int):
        self.iterations = iterations
        super().__init__(f"continued fraction did not converge in {iterations} iterations")


class RankDeficient(NumericError):
    def __init__(self, column: str):
        self.column = column
        super().__init__(f"design matrix is rank deficient at column {column!r}")


class StageError(SuiteError):
    """Wraps a failure raised inside one pipeline stage."""

    def __init__(self, stage: str, cause: SuiteError):
        self.stage = stage
        self.cause = cause
        self.exit_code = cause.exit_code
        super().__init__(f"[{stage}] {cause}")
