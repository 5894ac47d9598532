"""Configuration package"""

from .defaults import (
    DEFAULT_HORIZON,
    SEARCH_BUDGET,
    INTERVAL_PREC_BITS,
    INTERVAL_WIDTH,
    CUT_LIMIT,
    SUITE_SEED,
    SUITE_DEFAULTS,
    COEFFICIENT_GRID,
)
from .loader import HarnessConfig, load_config, from_dict, cache_dir

__all__ = [
    'DEFAULT_HORIZON',
    'SEARCH_BUDGET',
    'INTERVAL_PREC_BITS',
    'INTERVAL_WIDTH',
    'CUT_LIMIT',
    'SUITE_SEED',
    'SUITE_DEFAULTS',
    'COEFFICIENT_GRID',
    'HarnessConfig',
    'load_config',
    'from_dict',
    'cache_dir',
]
