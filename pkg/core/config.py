# core/config.py

"""
Configuration settings shared by the measurement, pairing and statistics stages.
"""

# Metric names, in table order
SPEC_METRICS = ('CC', 'VL', 'VU', 'DU', 'USE', 'DEF', 'AND', 'OR', 'COV', 'OVL', 'CHI')
CODE_METRICS = ('CL', 'CLC', 'CLCD', 'CLCE', 'CYC', 'KNOTS', 'FIN', 'FOUT', 'SI')

# Metric groups used when summarising correlation tables
SPEC_METRIC_GROUPS = {
    'size': ('CC', 'AND', 'OR'),
    'structure': ('VL', 'VU', 'DU'),
    'semantics': ('COV', 'OVL', 'CHI'),
    'identifiers': ('USE', 'DEF'),
}

# CSV headers
SPEC_METRICS_HEADER = ('schema',) + SPEC_METRICS
CODE_METRICS_HEADER = ('unit',) + CODE_METRICS
PAIRS_HEADER = ('pair_id', 'schema', 'unit') + SPEC_METRICS + CODE_METRICS
CORRELATION_HEADER = ('spec_metric', 'code_metric', 'test', 'r', 'p', 'association', 'n')
PREDICTION_HEADER = ('schema', 'prediction')

# Correlation settings
CORRELATION_TESTS = ('pearson', 'spearman', 'kendall')
MIN_SAMPLES = 3
STRONG_ASSOCIATION = 0.8
MODERATE_ASSOCIATION = 0.5
SIGNIFICANCE_LEVEL = 0.05
UNIT_CORRELATION_TOLERANCE = 1e-12

# Special functions
SPECIAL_TOLERANCE = 1e-12
SPECIAL_MAX_ITERATIONS = 10000
SPECIAL_TINY = 1e-300

# Regression settings
DEFAULT_THRESHOLD = 0.4
VARIABLE_BUDGET_RATIO = 5  # at most n / 5 predictors
RANK_TOLERANCE = 1e-10
DEFAULT_CONFIDENCE = 0.95
DEFAULT_TARGETS = ('CL', 'CLCE', 'CYC', 'KNOTS', 'FOUT')
FORMULA_DECIMALS = 3

# Pairing settings
DEFAULT_EDIT_DISTANCE = 2
AGGREGATION_POLICIES = ('strict', 'sum')
TRACE_UNIT_PATTERN = r'--\s*trace_unit\s*:\s*(\S+)'

# Code settings
CODE_FILE_SUFFIX = '.mil'
DEFAULT_FLOW_POLICY = 'shepperd'

# CLI settings
OUTPUT_FORMATS = ('csv', 'json')
DEFAULT_FORMAT = 'csv'
DEFAULT_SEED = 42
DEFAULT_SELFCHECK_RUNS = 100
DEFAULT_OUTPUT_DIR = 'results'
REFERENCE_MODEL_PREFIX = 'reference:'

# Exit codes
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_DATA = 3
EXIT_NUMERIC = 4
