# stats/matrix.py

"""Correlation table: every specification metric against every code metric under each test."""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, Sequence

from core.config import (CODE_METRICS, CORRELATION_TESTS, MIN_SAMPLES, SIGNIFICANCE_LEVEL,
                         SPEC_METRIC_GROUPS, SPEC_METRICS)
from core.errors import ConstantInput, LengthMismatch, TooFewSamples
from .correlation import (CORRELATION_FUNCTIONS, AssociationClass, CorrelationResult,
                          classify_association)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CorrelationCell:
    spec_metric: str
    code_metric: str
    result: CorrelationResult
    association: AssociationClass

    @property
    def test(self) -> str:
        return self.result.test

    def as_row(self):
        return (self.spec_metric, self.code_metric, self.test, self.result.r, self.result.p,
                self.association.value, self.result.n)


def correlation_matrix(columns: Mapping[str, Sequence[float]],
                       spec_metrics: Sequence[str] = SPEC_METRICS,
                       code_metrics: Sequence[str] = CODE_METRICS,
                       tests: Sequence[str] = CORRELATION_TESTS) -> List[CorrelationCell]:
    """Rows ordered spec metric, code metric, test."""
    lengths = {len(columns[name]) for name in list(spec_metrics) + list(code_metrics)}
    if len(lengths) > 1:
        raise LengthMismatch(f"metric columns have differing lengths {sorted(lengths)}")
    n = lengths.pop() if lengths else 0
    if n < MIN_SAMPLES:
        raise TooFewSamples(f"need at least {MIN_SAMPLES} observations, got {n}")
    for name in list(spec_metrics) + list(code_metrics):
        if len(set(columns[name])) == 1:
            raise ConstantInput(f"metric column {name} is constant")

    cells = []
    for spec_metric in spec_metrics:
        for code_metric in code_metrics:
            for test in tests:
                result = CORRELATION_FUNCTIONS[test](columns[spec_metric], columns[code_metric])
                cells.append(CorrelationCell(spec_metric, code_metric, result,
                                             classify_association(result.r)))
    logger.debug("computed %d correlation cells", len(cells))
    return cells


def summarize_table(cells: Sequence[CorrelationCell],
                    groups: Mapping[str, Sequence[str]] = SPEC_METRIC_GROUPS) -> List[Dict[str, Any]]:
    """Per metric group and test: the largest p and how many cells exceed the significance level."""
    summary = []
    for group, members in groups.items():
        for test in CORRELATION_TESTS:
            selected = [cell.result.p for cell in cells
                        if cell.spec_metric in members and cell.test == test]
            if not selected:
                continue
            entry = {
                'group': group,
                'test': test,
                'max_p': max(selected),
                'not_significant': sum(1 for p in selected if p > SIGNIFICANCE_LEVEL),
                'cells': len(selected),
            }
            summary.append(entry)
            logger.info("%s/%s: p <= %.3f, %d of %d cells above %.2f", group, test,
                        entry['max_p'], entry['not_significant'], entry['cells'], SIGNIFICANCE_LEVEL)
    return summary
