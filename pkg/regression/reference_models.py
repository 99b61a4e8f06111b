# regression/reference_models.py

"""
Published prediction models for five code measures, fitted on a corpus of 70
specification/code pairs that is not available here. Coefficients and the
reported p-values are kept for prediction and comparison. The adjusted R-square
and significance F values are documentation only.
"""

import math
from typing import Dict, List, Tuple

from core.config import REFERENCE_MODEL_PREFIX
from core.errors import UsageError
from .ols import INTERCEPT, Coefficient, RegressionModel

SAMPLE_SIZE = 70
THRESHOLD = 0.4

# target -> (terms as (predictor, coefficient, p), intercept, adjusted R2, significance F)
# The published table names the executable-lines column CLE; it is CLCE throughout here.
_PUBLISHED: Dict[str, Tuple[Tuple[Tuple[str, float, float], ...], float, float, float]] = {
    'CL': ((('CC', 3.099, 0.001), ('USE', -1.237, 0.034), ('AND', 2.557, 7e-5),
            ('OR', -41.735, 5e-4)), -9.873, 0.720, 5e-18),
    'CLCE': ((('CC', 0.516, 4e-4), ('VU', -0.003, 0.005), ('DEF', -0.477, 0.070),
              ('OR', 5.458, 0.001)), 5.819, 0.680, 2e-16),
    'CYC': ((('CC', 0.015, 0.003), ('COV', 4.349, 0.280), ('OVL', -2.107, math.nan),
             ('OR', 1.082, 4e-4)), 1.666, 0.620, 5e-14),
    'KNOTS': ((('CC', 0.121, 1e-6), ('VU', -0.001, 0.004), ('USE', -0.017, 0.320),
               ('DEF', -0.092, 0.020), ('AND', 0.027, 0.030)), -0.882, 0.760, 7e-20),
    'FOUT': ((('CC', 0.198, 3e-11), ('VL', -0.107, 0.270), ('VU', -0.001, 0.0),
              ('DEF', -0.211, 1e-5), ('OR', 1.220, 6e-5)), 0.344, 0.840, 1.5e-25),
}


def reference_targets() -> List[str]:
    return list(_PUBLISHED.keys())


def reference_model(target: str) -> RegressionModel:
    if target not in _PUBLISHED:
        raise UsageError(f"No reference model for {target!r}; "
                         f"available: {', '.join(reference_targets())}")
    terms, intercept, adj_r2, sig_f = _PUBLISHED[target]
    return RegressionModel(
        target=target,
        terms=tuple(Coefficient(name, coeff, math.nan, math.nan, p) for name, coeff, p in terms),
        intercept=Coefficient(INTERCEPT, intercept, math.nan, math.nan, math.nan),
        n=SAMPLE_SIZE,
        r2=math.nan,
        adj_r2=adj_r2,
        f=None,
        sig_f=sig_f,
        residual_df=SAMPLE_SIZE - len(terms) - 1,
        threshold=THRESHOLD,
    )


def resolve_model_name(name: str) -> str:
    """`reference:CL` -> `CL`; raises for anything else."""
    if not name.startswith(REFERENCE_MODEL_PREFIX):
        raise UsageError(f"{name!r} is not a reference model name")
    return name[len(REFERENCE_MODEL_PREFIX):]
