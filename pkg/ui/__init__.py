"""UI components package"""

from .statistics import display_statistics
from .assertion_card import display_assertion_card
from .pagination import display_pagination, get_page
from .filters import display_filters, apply_filters

__all__ = [
    'display_statistics',
    'display_assertion_card',
    'display_pagination',
    'get_page',
    'display_filters',
    'apply_filters',
]
