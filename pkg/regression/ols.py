# regression/ols.py

"""
Ordinary least squares with full coefficient inference.

The design matrix is the intercept column followed by the predictors. It is
factored as X = QR. The coefficients solve R b = Q'y, and (X'X)^-1 is
R^-1 R^-T. A column whose R diagonal is negligible against its own norm
makes the fit rank deficient.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import solve_triangular

from core.config import RANK_TOLERANCE
from core.errors import ConstantInput, DataError, LengthMismatch, RankDeficient, TooFewObservations
from stats.special import f_sf, student_t_two_tailed

logger = logging.getLogger(__name__)

INTERCEPT = 'intercept'


@dataclass(frozen=True, eq=False)
class ObservationMatrix:
    predictors: Tuple[str, ...]
    rows: np.ndarray
    response: np.ndarray
    target: str = 'y'

    def __post_init__(self):
        rows = np.asarray(self.rows, dtype=float)
        if rows.ndim == 1 and not self.predictors:
            rows = rows.reshape(len(rows), 0)
        response = np.asarray(self.response, dtype=float)
        if rows.ndim != 2 or rows.shape[1] != len(self.predictors):
            raise LengthMismatch(f"expected {len(self.predictors)} predictor columns, got shape {rows.shape}")
        if rows.shape[0] != response.shape[0]:
            raise LengthMismatch(f"{rows.shape[0]} rows but {response.shape[0]} responses")
        if not (np.all(np.isfinite(rows)) and np.all(np.isfinite(response))):
            raise DataError("observations contain non-finite values")
        object.__setattr__(self, 'predictors', tuple(self.predictors))
        object.__setattr__(self, 'rows', rows)
        object.__setattr__(self, 'response', response)

    @property
    def n(self) -> int:
        return self.rows.shape[0]

    @property
    def k(self) -> int:
        return self.rows.shape[1]

    @classmethod
    def from_columns(cls, columns: Mapping[str, Sequence[float]], predictors: Sequence[str],
                     target: str) -> 'ObservationMatrix':
        missing = [name for name in list(predictors) + [target] if name not in columns]
        if missing:
            raise DataError(f"unknown metric column(s): {', '.join(missing)}")
        response = np.asarray(columns[target], dtype=float)
        rows = np.column_stack([np.asarray(columns[name], dtype=float) for name in predictors]) \
            if predictors else np.empty((len(response), 0))
        return cls(tuple(predictors), rows, response, target)

    def subset(self, predictors: Sequence[str]) -> 'ObservationMatrix':
        indices = [self.predictors.index(name) for name in predictors]
        return ObservationMatrix(tuple(predictors), self.rows[:, indices], self.response, self.target)


@dataclass(frozen=True)
class Coefficient:
    name: str
    coeff: float
    se: float
    t: float
    p: float

    def as_dict(self, with_name: bool = True) -> Dict[str, Any]:
        values = {'coeff': self.coeff, 'se': self.se, 't': self.t, 'p': self.p}
        return {'name': self.name, **values} if with_name else values


@dataclass(frozen=True)
class EliminationRound:
    round: int
    dropped: Tuple[Tuple[str, float], ...]


@dataclass(frozen=True)
class RegressionModel:
    target: str
    terms: Tuple[Coefficient, ...]
    intercept: Coefficient
    n: int
    r2: float
    adj_r2: float
    f: Optional[float]
    sig_f: Optional[float]
    residual_df: int
    threshold: Optional[float] = None
    trace: Tuple[EliminationRound, ...] = ()
    residuals: Tuple[float, ...] = field(default=(), compare=False, repr=False)

    @property
    def predictors(self) -> Tuple[str, ...]:
        return tuple(term.name for term in self.terms)

    def term(self, name: str) -> Coefficient:
        for term in self.terms:
            if term.name == name:
                return term
        raise KeyError(name)


def _inference(name: str, coeff: float, se: float, df: int) -> Coefficient:
    if se == 0.0:
        if coeff == 0.0:
            return Coefficient(name, coeff, se, 0.0, 1.0)
        return Coefficient(name, coeff, se, math.copysign(math.inf, coeff), 0.0)
    t = coeff / se
    return Coefficient(name, coeff, se, t, student_t_two_tailed(t, df))


def ols_fit(data: ObservationMatrix) -> RegressionModel:
    n, k = data.n, data.k
    if n < k + 2:
        raise TooFewObservations(f"{n} observations cannot support {k} predictors and an intercept")
    y = data.response
    x = np.column_stack([np.ones(n), data.rows])
    names = (INTERCEPT,) + data.predictors

    q, r = np.linalg.qr(x)
    norms = np.linalg.norm(x, axis=0)
    for j, name in enumerate(names):
        if norms[j] == 0.0 or abs(r[j, j]) <= RANK_TOLERANCE * norms[j]:
            raise RankDeficient(name)

    beta = solve_triangular(r, q.T @ y)
    residuals = y - x @ beta
    rss = float(residuals @ residuals)
    tss = float(np.sum((y - y.mean()) ** 2))
    if tss == 0.0:
        raise ConstantInput(f"response {data.target} is constant")
    df = n - k - 1
    sigma2 = rss / df
    r_inv = solve_triangular(r, np.eye(k + 1))
    variances = sigma2 * np.sum(r_inv ** 2, axis=1)
    coefficients = [_inference(name, float(b), math.sqrt(max(float(v), 0.0)), df)
                    for name, b, v in zip(names, beta, variances)]

    r2 = 1.0 - rss / tss
    adj_r2 = 1.0 - (1.0 - r2) * (n - 1) / df
    if k == 0:
        f_value, sig_f = None, None
    elif rss == 0.0:
        f_value, sig_f = math.inf, 0.0
    else:
        f_value = ((tss - rss) / k) / sigma2
        sig_f = f_sf(f_value, k, df)

    logger.debug("OLS %s ~ %s: R2=%.4f adjR2=%.4f", data.target,
                 ' + '.join(data.predictors) or '1', r2, adj_r2)
    return RegressionModel(
        target=data.target,
        terms=tuple(coefficients[1:]),
        intercept=coefficients[0],
        n=n,
        r2=r2,
        adj_r2=adj_r2,
        f=f_value,
        sig_f=sig_f,
        residual_df=df,
        residuals=tuple(float(e) for e in residuals),
    )
