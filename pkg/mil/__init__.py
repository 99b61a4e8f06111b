# mil/__init__.py

"""Front end and metrics for MIL, the Ada-flavoured mini implementation language."""

from .call_graph import CallGraph, build_call_graph
from .metrics import (CallsOnlyFlow, CodeMetrics, FlowPolicy, FlowPolicyFactory, ShepperdFlow,
                      cyclomatic, information_flow, knots, line_counts, measure_code, unit_metrics)
from .model import CodeUnit, Decisions, LineClass, Param, ParamMode, PendingActual, UnitKind
from .parser import parse_code, resolve_corpus_actuals
from .printer import render_unit

__all__ = [
    'CallGraph', 'build_call_graph',
    'CallsOnlyFlow', 'CodeMetrics', 'FlowPolicy', 'FlowPolicyFactory', 'ShepperdFlow',
    'cyclomatic', 'information_flow', 'knots', 'line_counts', 'measure_code', 'unit_metrics',
    'CodeUnit', 'Decisions', 'LineClass', 'Param', 'ParamMode', 'PendingActual', 'UnitKind',
    'parse_code', 'resolve_corpus_actuals', 'render_unit',
]
