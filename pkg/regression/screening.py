# regression/screening.py

import logging
from typing import List, Mapping, Sequence

import numpy as np

from core.config import VARIABLE_BUDGET_RATIO
from stats.correlation import pearson
from .ols import ObservationMatrix

logger = logging.getLogger(__name__)


def screen_predictors(columns: Mapping[str, Sequence[float]], candidates: Sequence[str],
                      target: str) -> List[str]:
    """
    The maximum model for a small sample: at most n/5 candidates, strongest
    |Pearson r| with the target first. Constant columns are skipped, as is any
    column that would make the design rank deficient.
    """
    n = len(columns[target])
    budget = n // VARIABLE_BUDGET_RATIO
    scored = []
    for name in candidates:
        if np.ptp(np.asarray(columns[name], dtype=float)) == 0:
            logger.debug("screening skips constant %s", name)
            continue
        scored.append((-abs(pearson(columns[name], columns[target]).r), name))
    selected: List[str] = []
    for _, name in sorted(scored):
        if len(selected) >= budget:
            break
        trial = selected + [name]
        rows = np.column_stack([np.ones(n)] + [np.asarray(columns[c], dtype=float) for c in trial])
        if np.linalg.matrix_rank(rows) < rows.shape[1]:
            logger.debug("screening skips %s: rank deficient with %s", name, selected)
            continue
        selected.append(name)
    logger.info("screened %s: %s", target, ', '.join(selected) or 'none')
    return selected


def screened_matrix(columns: Mapping[str, Sequence[float]], candidates: Sequence[str],
                    target: str) -> ObservationMatrix:
    return ObservationMatrix.from_columns(columns, screen_predictors(columns, candidates, target), target)
