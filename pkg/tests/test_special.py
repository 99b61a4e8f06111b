# tests/test_special.py

import math

import pytest
from scipy import integrate, special, stats as scipy_stats

from core.errors import NonConvergence, OutOfRange
from stats import f_sf, normal_sf, reg_inc_beta, student_t_sf, student_t_two_tailed

T_GRID = [(t, df) for df in (1, 2, 5, 30) for t in (0.1, 0.5, 1.0, 2.5, 6.0)]
F_GRID = [(f, d1, d2) for d1, d2 in ((1, 5), (3, 10), (4, 66), (10, 2)) for f in (0.2, 1.0, 3.0, 8.0, 20.0)]


def _t_density(t, df):
    log_norm = math.lgamma((df + 1) / 2) - math.lgamma(df / 2) - 0.5 * math.log(df * math.pi)
    return math.exp(log_norm - (df + 1) / 2 * math.log1p(t * t / df))


@pytest.mark.parametrize('df', [1, 3, 10, 68])
def test_t_tail_at_zero_is_half(df):
    assert student_t_sf(0.0, df) == pytest.approx(0.5, abs=1e-15)
    assert student_t_two_tailed(0.0, df) == pytest.approx(1.0, abs=1e-15)


@pytest.mark.parametrize('t, df', T_GRID)
def test_t_tail_matches_integrated_density(t, df):
    expected, _ = integrate.quad(_t_density, t, math.inf, args=(df,), epsabs=1e-13, epsrel=1e-12)
    assert student_t_sf(t, df) == pytest.approx(expected, abs=1e-8)
    assert student_t_sf(-t, df) == pytest.approx(1.0 - expected, abs=1e-8)


@pytest.mark.parametrize('t, df', T_GRID)
def test_two_tailed_is_twice_the_tail(t, df):
    assert student_t_two_tailed(t, df) == pytest.approx(2.0 * student_t_sf(t, df), rel=1e-10)
    assert student_t_two_tailed(-t, df) == student_t_two_tailed(t, df)


@pytest.mark.parametrize('f, d1, d2', F_GRID)
def test_f_tail_matches_integrated_density(f, d1, d2):
    expected, _ = integrate.quad(scipy_stats.f.pdf, f, math.inf, args=(d1, d2),
                                 epsabs=1e-13, epsrel=1e-12)
    assert f_sf(f, d1, d2) == pytest.approx(expected, abs=1e-8)


def test_f_tail_boundaries():
    assert f_sf(0.0, 2, 5) == 1.0
    assert f_sf(-1.0, 2, 5) == 1.0
    assert f_sf(math.inf, 2, 5) == 0.0


@pytest.mark.parametrize('a, b', [(0.5, 0.5), (1.0, 3.0), (2.5, 0.5), (15.0, 0.5), (40.0, 60.0)])
@pytest.mark.parametrize('x', [0.01, 0.2, 0.5, 0.8, 0.99])
def test_incomplete_beta(a, b, x):
    value = reg_inc_beta(a, b, x)
    assert value == pytest.approx(special.betainc(a, b, x), abs=1e-11)
    assert value == pytest.approx(1.0 - reg_inc_beta(b, a, 1.0 - x), abs=1e-12)


def test_incomplete_beta_boundaries():
    assert reg_inc_beta(2.0, 3.0, 0.0) == 0.0
    assert reg_inc_beta(2.0, 3.0, 1.0) == 1.0
    assert reg_inc_beta(1.0, 1.0, 0.3) == pytest.approx(0.3, abs=1e-12)


@pytest.mark.parametrize('a, b, x', [(0.0, 1.0, 0.5), (1.0, -2.0, 0.5), (1.0, 1.0, 1.5),
                                     (1.0, 1.0, -0.1), (1.0, 1.0, math.nan)])
def test_incomplete_beta_domain(a, b, x):
    with pytest.raises(OutOfRange):
        reg_inc_beta(a, b, x)


def test_degrees_of_freedom_domain():
    with pytest.raises(OutOfRange):
        student_t_sf(1.0, 0.5)
    with pytest.raises(OutOfRange):
        f_sf(1.0, 3, 0)
    with pytest.raises(OutOfRange):
        student_t_sf(math.nan, 3)


def test_infinite_t():
    assert student_t_sf(math.inf, 4) == 0.0
    assert student_t_sf(-math.inf, 4) == 1.0
    assert student_t_two_tailed(math.inf, 4) == 0.0


def test_continued_fraction_gives_up(monkeypatch):
    monkeypatch.setattr('stats.special.SPECIAL_MAX_ITERATIONS', 1)
    with pytest.raises(NonConvergence) as info:
        reg_inc_beta(5.0, 5.0, 0.4)
    assert info.value.iterations == 1


def test_normal_tail():
    assert normal_sf(0.0) == 0.5
    assert normal_sf(1.959963984540054) == pytest.approx(0.025, abs=1e-12)
