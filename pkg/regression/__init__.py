# regression/__init__.py

"""Least squares with inference, backward elimination and prediction formulas."""

from .ols import (INTERCEPT, Coefficient, EliminationRound, ObservationMatrix, RegressionModel,
                  ols_fit)
from .elimination import BudgetCheck, backward_eliminate, check_variable_budget
from .formula import emit_formula, is_predictable, model_from_dict, model_to_dict, predict
from .reference_models import reference_model, reference_targets, resolve_model_name
from .screening import screen_predictors, screened_matrix
from .simulation import SelfCheckReport, generate_observations, self_check

__all__ = [
    'INTERCEPT', 'Coefficient', 'EliminationRound', 'ObservationMatrix', 'RegressionModel', 'ols_fit',
    'BudgetCheck', 'backward_eliminate', 'check_variable_budget',
    'emit_formula', 'is_predictable', 'model_from_dict', 'model_to_dict', 'predict',
    'reference_model', 'reference_targets', 'resolve_model_name',
    'screen_predictors', 'screened_matrix',
    'SelfCheckReport', 'generate_observations', 'self_check',
]
