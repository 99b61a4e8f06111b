# zspec/__init__.py

"""
Specification side: notation parser, inclusion expansion, the Specification
Relationship Net and the specification measures.
"""

from .parser import parse_specification, parse_predicate
from .printer import render_expr, render_specification
from .inclusions import resolve_inclusions, inclusion_closure
from .srn import SRN, Prime, PrimeKind, split_primes, build_srn
from .model import Specification
from .metrics import (SpecMetrics, SlicePrfl, basic_metrics, structure_metrics,
                      backward_slice, slice_profile, semantic_metrics, coupling,
                      measure_specification)

__all__ = [
    'Specification',
    'parse_specification',
    'parse_predicate',
    'render_expr',
    'render_specification',
    'resolve_inclusions',
    'inclusion_closure',
    'SRN',
    'Prime',
    'PrimeKind',
    'split_primes',
    'build_srn',
    'SpecMetrics',
    'SlicePrfl',
    'basic_metrics',
    'structure_metrics',
    'backward_slice',
    'slice_profile',
    'semantic_metrics',
    'coupling',
    'measure_specification',
]
