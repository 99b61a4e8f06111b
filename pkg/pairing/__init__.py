# pairing/__init__.py

"""Trace-unit links between code units and specification schemas."""

from .trace_units import TraceLink, extract_trace_units
from .matcher import PairingReport, Suggestion, match_pairs
from .observations import (PairedObservation, assemble_observations, metric_columns,
                           observations_from_records, sum_code_metrics)

__all__ = [
    'TraceLink', 'extract_trace_units',
    'PairingReport', 'Suggestion', 'match_pairs',
    'PairedObservation', 'assemble_observations', 'metric_columns',
    'observations_from_records', 'sum_code_metrics',
]
