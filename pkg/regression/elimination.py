# regression/elimination.py

import logging
from dataclasses import replace
from typing import List, NamedTuple

from core.config import DEFAULT_THRESHOLD, VARIABLE_BUDGET_RATIO
from .ols import EliminationRound, ObservationMatrix, RegressionModel, ols_fit

logger = logging.getLogger(__name__)


class BudgetCheck(NamedTuple):
    ok: bool
    message: str = ''


def check_variable_budget(n: int, k: int) -> BudgetCheck:
    """At most one predictor per five observations."""
    if k * VARIABLE_BUDGET_RATIO <= n:
        return BudgetCheck(True)
    return BudgetCheck(False, f"{k} predictors exceed one fifth of the sample size {n} "
                              f"(at most {n // VARIABLE_BUDGET_RATIO})")


def backward_eliminate(data: ObservationMatrix, threshold: float = DEFAULT_THRESHOLD,
                       one_at_a_time: bool = False) -> RegressionModel:
    """
    Refit after dropping every predictor whose p-value exceeds the threshold,
    until none does or only the intercept is left. With one_at_a_time only
    the predictor with the largest p-value goes per round.
    """
    budget = check_variable_budget(data.n, data.k)
    if not budget.ok:
        logger.warning(budget.message)

    current = data
    trace: List[EliminationRound] = []
    while True:
        model = ols_fit(current)
        above = [(term.name, term.p) for term in model.terms if term.p > threshold]
        if not above:
            break
        if one_at_a_time:
            above = [max(above, key=lambda item: item[1])]
        trace.append(EliminationRound(len(trace) + 1, tuple(above)))
        logger.debug("round %d drops %s", len(trace), ', '.join(name for name, _ in above))
        dropped = {name for name, _ in above}
        current = current.subset([name for name in current.predictors if name not in dropped])

    logger.info("%s: kept %s after %d round(s)", data.target,
                ', '.join(model.predictors) or 'intercept only', len(trace))
    return replace(model, threshold=threshold, trace=tuple(trace))
