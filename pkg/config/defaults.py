"""Default settings for the norm engine, the builders and the suites"""

# Schedule
DEFAULT_HORIZON = 6
MAX_SCHEDULE_BITS = 1 << 16

# Norm engine
SEARCH_BUDGET = 2_000_000
INTERVAL_PREC_BITS = 96
INTERVAL_WIDTH = '1/1000000'
COEFF_DENOMINATOR_BITS = 48

# Special convex combinations
SCC_RETRY_LIMIT = 4
SCC_GROUND_SLACK = 4096

# Desk-scale caps for the sequence builders
RIS_SCC_INDEX = 1
RIS_EPS_FLOOR = '1/4'
RIS_DELTA = '0'
RIS_FIRST_LEVEL = 2
ARRAY_SCC_INDEX = 1
ARRAY_START = 8
AUX_SCC_INDEX = 1
TILDE_FIRST_EPS = '1'
TILDE_START = 4

# Dual engine
CUT_LIMIT = 500

# Suites
SUITE_SEED = 20240611
SUITE_DEFAULTS = {
    'schreier-oracle': {'max_pos': 9, 'max_index': 3},
    'schedule': {'horizon': 4},
    'norm-oracle': {'samples': 150, 'max_pos': 8, 'max_support': 6, 'aux_n': 4},
    'norm-axioms': {'samples': 60, 'max_pos': 8, 'max_support': 4},
    'uniform-ell1': {'count': 3, 'samples': 12},
    'aux-upper': {'instances': 24, 'max_rows': 2, 'max_cols': 2, 'eps': '1/4'},
    'basic-inequality': {'count': 3, 'samples': 50, 'C': '2'},
    'c0-array': {'k': 2, 'l': 2, 'levels': [1, 2], 'eps': '1', 'N': 4, 'samples': 6},
    'tilde': {'j0': 1, 'count': 2, 'N': 4, 'samples': 6},
    'p-upper': {'p': '2', 'blocks': 3, 'samples': 12},
    'dual': {'samples': 12, 'max_pos': 6, 'max_support': 3},
    'scc-ris': {'n': 2, 'eps': ['1', '2/3'], 'start': 2, 'shift': 3},
}

# Grid of coefficients used by sampled instances
COEFFICIENT_GRID = ['0', '1/2', '1', '3/2', '2', '-1', '-1/2']
