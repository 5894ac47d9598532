"""Exact norms, certificates and constructions for Schreier-type norming sets"""

from .models import SpaceKind, SpaceSpec, Vec, NormResult
from .schedule import Schedule, default_schedule
from .engine import NormEngine, norm, constrained_max, weight_equals, weight_below

__all__ = [
    'SpaceKind',
    'SpaceSpec',
    'Vec',
    'NormResult',
    'Schedule',
    'default_schedule',
    'NormEngine',
    'norm',
    'constrained_max',
    'weight_equals',
    'weight_below',
]
