"""Shared fixtures: the default schedule and the spaces built on it"""

from fractions import Fraction

import pytest
from hypothesis import strategies as st

from core.models import SpaceKind, SpaceSpec, Vec
from core.schedule import default_schedule


@pytest.fixture(scope='session')
def schedule():
    return default_schedule(6)


@pytest.fixture(scope='session')
def xiw(schedule):
    return SpaceSpec(SpaceKind.XIW, schedule)


@pytest.fixture(scope='session')
def mixed(schedule):
    return SpaceSpec(SpaceKind.MIXED_T, schedule)


@pytest.fixture(scope='session')
def xiw_tilde(schedule):
    return SpaceSpec(SpaceKind.XIW_TILDE, schedule)


@pytest.fixture(scope='session')
def aux(schedule):
    return SpaceSpec(SpaceKind.AUX, schedule, N=4)


def vec(*pairs):
    return Vec({p: Fraction(v) for p, v in pairs})


COEFFS = st.sampled_from([Fraction(v) for v in ('1/2', '1', '3/2', '2', '-1', '-1/2', '1/3')])


@st.composite
def small_vectors(draw, max_pos=7, max_support=4):
    positions = draw(st.lists(st.integers(1, max_pos), min_size=1, max_size=max_support, unique=True))
    return Vec({p: draw(COEFFS) for p in positions})
