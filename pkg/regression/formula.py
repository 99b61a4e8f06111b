# regression/formula.py

import math
from typing import Any, Dict, Mapping, Optional, Tuple

from core.config import DEFAULT_CONFIDENCE, FORMULA_DECIMALS
from core.errors import DataError, MissingPredictor
from .ols import INTERCEPT, Coefficient, EliminationRound, RegressionModel


def predict(model: RegressionModel, record: Mapping[str, float]) -> float:
    value = model.intercept.coeff
    for term in model.terms:
        if term.name not in record:
            raise MissingPredictor(term.name)
        value += term.coeff * float(record[term.name])
    return value


def _split_sign(value: float, decimals: int) -> Tuple[bool, str]:
    """Sign and magnitude as printed; a value that rounds to zero has no sign."""
    rounded = round(value, decimals)
    return rounded < 0, f"{abs(rounded):.{decimals}f}"


def emit_formula(model: RegressionModel, decimals: int = FORMULA_DECIMALS) -> str:
    """`CL(M) = 3.099*CC - 1.237*USE + ... - 9.873`"""
    parts = []
    for term in model.terms:
        negative, magnitude = _split_sign(term.coeff, decimals)
        if not parts:
            parts.append(('-' if negative else '') + f"{magnitude}*{term.name}")
        else:
            parts.append(('- ' if negative else '+ ') + f"{magnitude}*{term.name}")
    negative, magnitude = _split_sign(model.intercept.coeff, decimals)
    if not parts:
        parts.append(('-' if negative else '') + magnitude)
    else:
        parts.append(('- ' if negative else '+ ') + magnitude)
    return f"{model.target}(M) = " + ' '.join(parts)


def is_predictable(model: RegressionModel, confidence: float = DEFAULT_CONFIDENCE) -> bool:
    """The overall F test rejects the intercept-only model at the given confidence."""
    return model.sig_f is not None and model.sig_f < 1.0 - confidence


def model_to_dict(model: RegressionModel) -> Dict[str, Any]:
    return {
        'target': model.target,
        'n': model.n,
        'threshold': model.threshold,
        'intercept': model.intercept.as_dict(with_name=False),
        'terms': [term.as_dict() for term in model.terms],
        'r2': model.r2,
        'adj_r2': model.adj_r2,
        'f': model.f,
        'sig_f': model.sig_f,
        'residual_df': model.residual_df,
        'trace': [{'round': step.round,
                   'dropped': [{'name': name, 'p': p} for name, p in step.dropped]}
                  for step in model.trace],
        'formula': emit_formula(model),
        'predictable': is_predictable(model),
    }


def _number(value: Optional[float]) -> float:
    return math.nan if value is None else float(value)


def model_from_dict(document: Mapping[str, Any]) -> RegressionModel:
    try:
        intercept = document['intercept']
        terms = tuple(
            Coefficient(term['name'], float(term['coeff']), _number(term.get('se')),
                        _number(term.get('t')), _number(term.get('p')))
            for term in document['terms'])
        trace = tuple(
            EliminationRound(step['round'], tuple((item['name'], _number(item['p']))
                                                  for item in step['dropped']))
            for step in document.get('trace', ()))
        return RegressionModel(
            target=document['target'],
            terms=terms,
            intercept=Coefficient(INTERCEPT, float(intercept['coeff']), _number(intercept.get('se')),
                                  _number(intercept.get('t')), _number(intercept.get('p'))),
            n=int(document.get('n', 0)),
            r2=_number(document.get('r2')),
            adj_r2=_number(document.get('adj_r2')),
            f=document.get('f'),
            sig_f=document.get('sig_f'),
            residual_df=int(document.get('residual_df', 0)),
            threshold=document.get('threshold'),
            trace=trace,
        )
    except (KeyError, TypeError, ValueError) as error:
        raise DataError(f"malformed model document: {error}")
