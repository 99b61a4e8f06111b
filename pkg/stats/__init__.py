# stats/__init__.py

"""Correlation tests with two-tailed p-values and the special functions behind them."""

from .special import f_sf, normal_sf, reg_inc_beta, student_t_sf, student_t_two_tailed
from .correlation import (CORRELATION_FUNCTIONS, AssociationClass, CorrelationResult,
                          classify_association, kendall, pearson, spearman)
from .matrix import CorrelationCell, correlation_matrix, summarize_table

__all__ = [
    'f_sf', 'normal_sf', 'reg_inc_beta', 'student_t_sf', 'student_t_two_tailed',
    'CORRELATION_FUNCTIONS', 'AssociationClass', 'CorrelationResult',
    'classify_association', 'kendall', 'pearson', 'spearman',
    'CorrelationCell', 'correlation_matrix', 'summarize_table',
]
