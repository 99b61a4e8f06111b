# stats/correlation.py

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Sequence, Tuple

import numpy as np
from scipy.stats import rankdata

from core.config import (MIN_SAMPLES, MODERATE_ASSOCIATION, STRONG_ASSOCIATION,
                         UNIT_CORRELATION_TOLERANCE)
from core.errors import ConstantInput, DataError, LengthMismatch, OutOfRange, TooFewSamples
from .special import normal_sf, student_t_two_tailed


@dataclass(frozen=True)
class CorrelationResult:
    r: float
    p: float
    n: int
    test: str


class AssociationClass(Enum):
    STRONG = 'strong'
    MODERATE = 'moderate'
    WEAK = 'weak'


def classify_association(r: float) -> AssociationClass:
    """Bins on |r|: [0.8, 1] strong, [0.5, 0.8) moderate, [0, 0.5) weak."""
    if math.isnan(r) or abs(r) > 1.0:
        raise OutOfRange(f"correlation coefficient {r} outside [-1, 1]")
    magnitude = abs(r)
    if magnitude >= STRONG_ASSOCIATION:
        return AssociationClass.STRONG
    if magnitude >= MODERATE_ASSOCIATION:
        return AssociationClass.MODERATE
    return AssociationClass.WEAK


def _validate(x: Sequence[float], y: Sequence[float]) -> Tuple[np.ndarray, np.ndarray]:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise LengthMismatch(f"samples have lengths {len(x)} and {len(y)}")
    if len(x) < MIN_SAMPLES:
        raise TooFewSamples(f"need at least {MIN_SAMPLES} samples, got {len(x)}")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise DataError("samples contain non-finite values")
    if np.ptp(x) == 0 or np.ptp(y) == 0:
        raise ConstantInput("correlation is undefined for a constant sample")
    return x, y


def _pearson_r(x: np.ndarray, y: np.ndarray) -> float:
    dx = x - x.mean()
    dy = y - y.mean()
    r = float(np.dot(dx, dy) / math.sqrt(float(np.dot(dx, dx)) * float(np.dot(dy, dy))))
    return max(-1.0, min(1.0, r))


def _t_test(r: float, n: int, test: str) -> CorrelationResult:
    if abs(abs(r) - 1.0) <= UNIT_CORRELATION_TOLERANCE:
        return CorrelationResult(math.copysign(1.0, r), 0.0, n, test)
    t = r * math.sqrt((n - 2) / (1.0 - r * r))
    return CorrelationResult(r, student_t_two_tailed(t, n - 2), n, test)


def pearson(x: Sequence[float], y: Sequence[float]) -> CorrelationResult:
    x, y = _validate(x, y)
    return _t_test(_pearson_r(x, y), len(x), 'pearson')


def spearman(x: Sequence[float], y: Sequence[float]) -> CorrelationResult:
    """Pearson on midranks, with the same t approximation for p."""
    x, y = _validate(x, y)
    return _t_test(_pearson_r(rankdata(x), rankdata(y)), len(x), 'spearman')


def _tie_sizes(values: np.ndarray) -> np.ndarray:
    _, counts = np.unique(values, return_counts=True)
    return counts[counts > 1].astype(np.int64)


def kendall(x: Sequence[float], y: Sequence[float]) -> CorrelationResult:
    """Tau-b with the tie-adjusted normal approximation, no continuity correction."""
    x, y = _validate(x, y)
    n = len(x)
    upper = np.triu_indices(n, k=1)
    signs = np.sign(np.subtract.outer(x, x)[upper]) * np.sign(np.subtract.outer(y, y)[upper])
    difference = int(np.sum(signs > 0)) - int(np.sum(signs < 0))

    t = _tie_sizes(x)
    u = _tie_sizes(y)
    n0 = n * (n - 1) // 2
    n1 = int(np.sum(t * (t - 1) // 2))
    n2 = int(np.sum(u * (u - 1) // 2))
    tau = difference / math.sqrt((n0 - n1) * (n0 - n2))

    v0 = n * (n - 1) * (2 * n + 5)
    vt = int(np.sum(t * (t - 1) * (2 * t + 5)))
    vu = int(np.sum(u * (u - 1) * (2 * u + 5)))
    v1 = int(np.sum(t * (t - 1))) * int(np.sum(u * (u - 1)))
    v2 = int(np.sum(t * (t - 1) * (t - 2))) * int(np.sum(u * (u - 1) * (u - 2)))
    variance = (v0 - vt - vu) / 18.0 + v1 / (2.0 * n * (n - 1)) + v2 / (9.0 * n * (n - 1) * (n - 2))
    z = difference / math.sqrt(variance)
    p = min(1.0, 2.0 * normal_sf(abs(z)))
    return CorrelationResult(max(-1.0, min(1.0, tau)), p, n, 'kendall')


CORRELATION_FUNCTIONS: Dict[str, Callable[[Sequence[float], Sequence[float]], CorrelationResult]] = {
    'pearson': pearson,
    'spearman': spearman,
    'kendall': kendall,
}
