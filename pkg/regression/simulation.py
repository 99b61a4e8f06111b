# regression/simulation.py

"""
Synthetic observation generator for checking the regression engine against
a known model: coefficient recovery on noiseless data and predictor
retention under backward elimination with noise.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

import numpy as np

from core.config import DEFAULT_SEED, DEFAULT_SELFCHECK_RUNS, DEFAULT_THRESHOLD, SPEC_METRICS
from .elimination import backward_eliminate
from .formula import predict
from .ols import ObservationMatrix, RegressionModel, ols_fit
from .reference_models import reference_model

logger = logging.getLogger(__name__)

SAMPLE_SIZE = 70

# plausible per-schema ranges of the specification measures
PREDICTOR_RANGES: Dict[str, Tuple[float, float]] = {
    'CC': (3, 60),
    'VL': (1, 10),
    'VU': (1, 40),
    'DU': (0, 80),
    'USE': (1, 25),
    'DEF': (0, 10),
    'AND': (0, 12),
    'OR': (0, 4),
    'COV': (0.0, 1.0),
    'OVL': (0.0, 1.0),
    'CHI': (0.0, 0.5),
}
_CONTINUOUS = ('COV', 'OVL', 'CHI')


def generate_observations(rng: np.random.Generator, model: RegressionModel,
                          predictors: Sequence[str] = SPEC_METRICS, n: int = SAMPLE_SIZE,
                          noise_sd: float = 0.0) -> ObservationMatrix:
    """Independent predictor columns; the response follows the model plus normal noise."""
    columns = {}
    for name in predictors:
        low, high = PREDICTOR_RANGES[name]
        if name in _CONTINUOUS:
            columns[name] = rng.uniform(low, high, n)
        else:
            columns[name] = rng.integers(int(low), int(high) + 1, n).astype(float)
    response = np.array([predict(model, {name: columns[name][i] for name in predictors})
                         for i in range(n)])
    if noise_sd > 0:
        response = response + rng.normal(0.0, noise_sd, n)
    return ObservationMatrix.from_columns({**columns, model.target: response}, predictors, model.target)


@dataclass(frozen=True)
class SelfCheckReport:
    coefficient_error: float
    r2: float
    runs: int
    retained: int
    max_rounds: int

    @property
    def retention_rate(self) -> float:
        return self.retained / self.runs if self.runs else 0.0


def coefficient_recovery(seed: int = DEFAULT_SEED, target: str = 'CL') -> Tuple[float, float]:
    """Largest absolute coefficient error and R2 of a fit on noiseless data."""
    model = reference_model(target)
    data = generate_observations(np.random.default_rng(seed), model, model.predictors)
    fitted = ols_fit(data)
    errors = [abs(fitted.term(term.name).coeff - term.coeff) for term in model.terms]
    errors.append(abs(fitted.intercept.coeff - model.intercept.coeff))
    return max(errors), fitted.r2


def retention(seed: int = DEFAULT_SEED, runs: int = DEFAULT_SELFCHECK_RUNS, target: str = 'CL',
              threshold: float = DEFAULT_THRESHOLD) -> Tuple[int, int]:
    """Runs in which every true predictor survives elimination, and the most rounds taken."""
    model = reference_model(target)
    truth = set(model.predictors)
    rng = np.random.default_rng(seed)
    retained = 0
    max_rounds = 0
    for _ in range(runs):
        data = generate_observations(rng, model, SPEC_METRICS, noise_sd=1.0)
        fitted = backward_eliminate(data, threshold)
        retained += truth <= set(fitted.predictors)
        max_rounds = max(max_rounds, len(fitted.trace))
    return retained, max_rounds


def self_check(seed: int = DEFAULT_SEED, runs: int = DEFAULT_SELFCHECK_RUNS) -> SelfCheckReport:
    error, r2 = coefficient_recovery(seed)
    retained, max_rounds = retention(seed, runs)
    report = SelfCheckReport(error, r2, runs, retained, max_rounds)
    logger.info("self check: coefficient error %.3g, retention %d/%d, at most %d round(s)",
                error, retained, runs, max_rounds)
    return report
