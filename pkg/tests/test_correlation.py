# tests/test_correlation.py

import itertools
import math

import numpy as np
import pytest
from scipy import stats as scipy_stats
from scipy.stats import rankdata

from core.config import CODE_METRICS, SPEC_METRICS
from core.errors import ConstantInput, LengthMismatch, OutOfRange, TooFewSamples
from stats import (AssociationClass, classify_association, correlation_matrix, kendall, pearson,
                   spearman, summarize_table)

TESTS = [pearson, spearman, kendall]


def _random_vectors(seed, ties=True):
    rng = np.random.default_rng(seed)
    while True:
        n = int(rng.integers(5, 31))
        if ties:
            x = rng.integers(0, 6, n).astype(float)
            y = rng.integers(0, 6, n).astype(float)
        else:
            x, y = rng.normal(size=n), rng.normal(size=n)
        if np.ptp(x) > 0 and np.ptp(y) > 0:
            return x, y


def _kendall_by_pairs(x, y):
    concordant = discordant = tied_x = tied_y = 0
    for i, j in itertools.combinations(range(len(x)), 2):
        dx, dy = x[i] - x[j], y[i] - y[j]
        if dx == 0:
            tied_x += 1
        if dy == 0:
            tied_y += 1
        if dx * dy > 0:
            concordant += 1
        elif dx * dy < 0:
            discordant += 1
    pairs = len(x) * (len(x) - 1) // 2
    return (concordant - discordant) / math.sqrt((pairs - tied_x) * (pairs - tied_y))


def test_perfect_line():
    result = pearson([1, 2, 3], [2, 4, 6])
    assert (result.r, result.p, result.n, result.test) == (1.0, 0.0, 3, 'pearson')
    assert pearson([1, 2, 3], [6, 4, 2]).r == -1.0


def test_three_point_pearson():
    result = pearson([1, 2, 3], [1, 3, 2])
    assert result.r == pytest.approx(0.5, abs=1e-12)
    # one degree of freedom: the t distribution is Cauchy
    assert result.p == pytest.approx(2.0 / 3.0, abs=1e-10)


def test_spearman_with_a_tie():
    assert spearman([1, 2, 2, 3], [1, 2, 3, 4]).r == pytest.approx(0.9487, abs=1e-4)


def test_three_point_kendall():
    result = kendall([1, 2, 3], [1, 3, 2])
    assert result.r == pytest.approx(1.0 / 3.0, abs=1e-12)
    assert 0.0 < result.p <= 1.0


@pytest.mark.parametrize('test', TESTS)
def test_input_errors(test):
    with pytest.raises(ConstantInput):
        test([1, 1, 1], [1, 2, 3])
    with pytest.raises(LengthMismatch):
        test([1, 2, 3], [1, 2])
    with pytest.raises(TooFewSamples):
        test([1, 2], [2, 1])


@pytest.mark.parametrize('seed', range(200))
def test_kendall_matches_pair_enumeration(seed):
    x, y = _random_vectors(seed)
    result = kendall(x, y)
    assert result.r == pytest.approx(_kendall_by_pairs(x, y), abs=1e-12)
    reference = scipy_stats.kendalltau(x, y, variant='b', method='asymptotic')
    assert result.p == pytest.approx(reference.pvalue, rel=1e-9, abs=1e-15)


@pytest.mark.parametrize('seed', range(50))
def test_spearman_is_pearson_on_midranks(seed):
    x, y = _random_vectors(seed)
    ranked = pearson(rankdata(x), rankdata(y))
    result = spearman(x, y)
    assert result.r == pytest.approx(ranked.r, abs=1e-12)
    assert result.p == pytest.approx(ranked.p, abs=1e-12)


@pytest.mark.parametrize('seed', range(50))
def test_pearson_p_matches_reference(seed):
    x, y = _random_vectors(seed, ties=False)
    reference = scipy_stats.pearsonr(x, y)
    result = pearson(x, y)
    assert result.r == pytest.approx(reference[0], abs=1e-12)
    assert result.p == pytest.approx(reference[1], abs=1e-10)


@pytest.mark.parametrize('test', TESTS)
@pytest.mark.parametrize('seed', range(20))
def test_sign_flip_and_affine_invariance(test, seed):
    x, y = _random_vectors(seed)
    base = test(x, y)
    flipped = test(x, -y)
    assert flipped.r == pytest.approx(-base.r, abs=1e-12)
    assert flipped.p == pytest.approx(base.p, abs=1e-12)
    assert test(2.0 * x + 3.0, y).r == pytest.approx(base.r, abs=1e-12)
    assert 0.0 <= base.p <= 1.0


@pytest.mark.parametrize('r, expected', [
    (0.806, AssociationClass.STRONG),
    (-0.623, AssociationClass.MODERATE),
    (0.8, AssociationClass.STRONG),
    (0.5, AssociationClass.MODERATE),
    (0.499, AssociationClass.WEAK),
    (-1.0, AssociationClass.STRONG),
    (0.0, AssociationClass.WEAK),
])
def test_association_bins(r, expected):
    assert classify_association(r) is expected


@pytest.mark.parametrize('r', [1.5, -1.01, math.nan])
def test_association_outside_range(r):
    with pytest.raises(OutOfRange):
        classify_association(r)


def _columns(n=10, seed=3):
    rng = np.random.default_rng(seed)
    return {name: list(rng.normal(size=n)) for name in SPEC_METRICS + CODE_METRICS}


def test_correlation_matrix_shape_and_order():
    cells = correlation_matrix(_columns())
    assert len(cells) == 297
    assert cells[0].as_row()[:3] == ('CC', 'CL', 'pearson')
    assert cells[2].test == 'kendall'
    assert cells[-1].as_row()[:3] == ('CHI', 'SI', 'kendall')
    assert all(cell.result.n == 10 for cell in cells)


def test_correlation_matrix_errors():
    columns = _columns()
    columns['CL'] = columns['CL'][:9]
    with pytest.raises(LengthMismatch):
        correlation_matrix(columns)

    with pytest.raises(TooFewSamples):
        correlation_matrix(_columns(n=2))

    columns = _columns()
    columns['KNOTS'] = [0.0] * 10
    with pytest.raises(ConstantInput):
        correlation_matrix(columns)


def test_summary_per_group_and_test():
    summary = summarize_table(correlation_matrix(_columns()))
    assert len(summary) == 12
    size = next(entry for entry in summary if entry['group'] == 'size' and entry['test'] == 'pearson')
    assert size['cells'] == 27
    assert 0 <= size['not_significant'] <= 27
    assert 0.0 <= size['max_p'] <= 1.0


@pytest.mark.parametrize('test', TESTS)
@pytest.mark.parametrize('n', [5, 12, 30])
def test_p_falls_as_the_association_strengthens(test, n):
    rng = np.random.default_rng(n)
    x = rng.normal(size=n)
    results = []
    for noise in np.linspace(0.0, 4.0, 41):
        y = x + noise * rng.normal(size=n)
        results.append(test(x, y))
    results.sort(key=lambda result: abs(result.r))
    for weaker, stronger in zip(results, results[1:]):
        assert stronger.p <= weaker.p + 1e-12
