# stats/special.py

"""
Special functions behind the p-values: the regularized incomplete beta
function (modified Lentz continued fraction), Student t and F survival
functions expressed through it, and the normal survival function.
"""

import math

from core.config import SPECIAL_MAX_ITERATIONS, SPECIAL_TINY, SPECIAL_TOLERANCE
from core.errors import NonConvergence, OutOfRange


def _beta_continued_fraction(a: float, b: float, x: float) -> float:
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < SPECIAL_TINY:
        d = SPECIAL_TINY
    d = 1.0 / d
    h = d
    for m in range(1, SPECIAL_MAX_ITERATIONS + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < SPECIAL_TINY:
            d = SPECIAL_TINY
        c = 1.0 + aa / c
        if abs(c) < SPECIAL_TINY:
            c = SPECIAL_TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < SPECIAL_TINY:
            d = SPECIAL_TINY
        c = 1.0 + aa / c
        if abs(c) < SPECIAL_TINY:
            c = SPECIAL_TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < SPECIAL_TOLERANCE:
            return h
    raise NonConvergence(SPECIAL_MAX_ITERATIONS)


def reg_inc_beta(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta function I_x(a, b)."""
    if not (a > 0 and b > 0):
        raise OutOfRange(f"beta parameters must be positive, got a={a}, b={b}")
    if not 0.0 <= x <= 1.0:
        raise OutOfRange(f"x must lie in [0, 1], got {x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    ln_front = (math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
                + a * math.log(x) + b * math.log1p(-x))
    front = math.exp(ln_front)
    # the fraction converges fast only below the mean; use the symmetry otherwise
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_continued_fraction(a, b, x) / a
    return 1.0 - front * _beta_continued_fraction(b, a, 1.0 - x) / b


def _check_df(**degrees) -> None:
    for name, value in degrees.items():
        if not value >= 1:
            raise OutOfRange(f"{name} must be at least 1, got {value}")


def student_t_sf(t: float, df: float) -> float:
    """P(T > t) for Student's t with df degrees of freedom."""
    _check_df(df=df)
    if math.isnan(t):
        raise OutOfRange("t is NaN")
    if math.isinf(t):
        return 0.0 if t > 0 else 1.0
    tail = 0.5 * reg_inc_beta(df / 2.0, 0.5, df / (df + t * t))
    return tail if t >= 0 else 1.0 - tail


def student_t_two_tailed(t: float, df: float) -> float:
    """P(|T| > |t|), computed without the cancellation of 2 * sf."""
    _check_df(df=df)
    if math.isinf(t):
        return 0.0
    return min(1.0, reg_inc_beta(df / 2.0, 0.5, df / (df + t * t)))


def f_sf(f: float, d1: float, d2: float) -> float:
    """P(F > f) for the F distribution with (d1, d2) degrees of freedom."""
    _check_df(d1=d1, d2=d2)
    if math.isnan(f):
        raise OutOfRange("F is NaN")
    if f <= 0.0:
        return 1.0
    if math.isinf(f):
        return 0.0
    return reg_inc_beta(d2 / 2.0, d1 / 2.0, d2 / (d2 + d1 * f))


def normal_sf(z: float) -> float:
    return 0.5 * math.erfc(z / math.sqrt(2.0))
