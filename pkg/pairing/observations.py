# pairing/observations.py

import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Mapping, Sequence, Tuple

from core.config import CODE_METRICS, SPEC_METRICS
from core.errors import DataError, MissingMetrics, UsageError
from mil.metrics import CodeMetrics
from zspec.metrics import SpecMetrics
from .matcher import PairingReport

logger = logging.getLogger(__name__)

_FLOAT_METRICS = ('COV', 'OVL', 'CHI')


@dataclass(frozen=True)
class PairedObservation:
    pair_id: int
    schema: str
    unit: str
    spec: SpecMetrics
    code: CodeMetrics

    def value(self, name: str) -> float:
        if name in SPEC_METRICS:
            return getattr(self.spec, name)
        if name in CODE_METRICS:
            return getattr(self.code, name)
        raise KeyError(name)

    def values(self) -> Dict[str, float]:
        return {**self.spec.as_dict(), **self.code.as_dict()}

    def as_row(self) -> Tuple:
        return (self.pair_id, self.schema, self.unit) + self.spec.as_row() + self.code.as_row()


def sum_code_metrics(records: Sequence[CodeMetrics]) -> CodeMetrics:
    """Field-wise sum; SI is recomputed from the summed flows."""
    totals = {name: sum(getattr(record, name) for record in records) for name in CODE_METRICS}
    totals['SI'] = (totals['FIN'] * totals['FOUT']) ** 2
    return CodeMetrics(**totals)


def assemble_observations(report: PairingReport,
                          spec_table: Mapping[str, SpecMetrics],
                          code_table: Mapping[str, CodeMetrics],
                          aggregation: str = 'strict') -> List[PairedObservation]:
    """
    One observation per pair, ordered by schema name. With aggregation 'sum'
    a conflicting schema is joined with the summed metrics of all its units.
    """
    if aggregation not in ('strict', 'sum'):
        raise UsageError(f"Unknown aggregation policy: {aggregation}")
    groups: List[Tuple[str, Tuple[str, ...]]] = [(schema, (unit,)) for schema, unit in report.pairs]
    if aggregation == 'sum':
        groups.extend(report.conflicts)
    elif report.conflicts:
        logger.info("excluding %d conflicting schema(s): %s", len(report.conflicts),
                    ', '.join(schema for schema, _ in report.conflicts))

    observations = []
    for pair_id, (schema, units) in enumerate(sorted(groups), start=1):
        if schema not in spec_table:
            raise MissingMetrics(schema)
        missing = [unit for unit in units if unit not in code_table]
        if missing:
            raise MissingMetrics(missing[0])
        code = code_table[units[0]] if len(units) == 1 else sum_code_metrics([code_table[u] for u in units])
        observations.append(PairedObservation(pair_id, schema, '+'.join(units), spec_table[schema], code))
    return observations


def _number(record: Mapping[str, str], name: str, row: int) -> float:
    text = record.get(name)
    if text is None or text == '':
        raise DataError(f"row {row}: missing value for {name}")
    try:
        value = float(text)
    except ValueError:
        raise DataError(f"row {row}: {name}={text!r} is not a number")
    if not math.isfinite(value):
        raise DataError(f"row {row}: {name} is not finite")
    # counts stay integral
    return int(value) if name not in _FLOAT_METRICS and value.is_integer() else value


def observations_from_records(records: Sequence[Mapping[str, str]]) -> List[PairedObservation]:
    """Rebuild observations from the rows of a pairs table."""
    observations = []
    for row, record in enumerate(records, start=2):
        spec = SpecMetrics(**{name: _number(record, name, row) for name in SPEC_METRICS})
        code = CodeMetrics(**{name: _number(record, name, row) for name in CODE_METRICS})
        pair_id = record.get('pair_id') or str(row - 1)
        try:
            pair_id = int(pair_id)
        except ValueError:
            raise DataError(f"row {row}: pair_id={pair_id!r} is not an integer")
        observations.append(PairedObservation(pair_id, record.get('schema', ''),
                                              record.get('unit', ''), spec, code))
    return observations


def metric_columns(observations: Sequence[PairedObservation], names: Sequence[str]) -> Dict[str, List[float]]:
    return {name: [float(obs.value(name)) for obs in observations] for name in names}
