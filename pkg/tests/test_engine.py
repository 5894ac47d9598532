"""Norm engine: known norms, witnesses, weight-constrained maxima and the brute-force oracle"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core.engine import NormEngine, WeightBound, certify_lower, constrained_max, ell1_bound, norm, weight_below, weight_equals
from core.errors import InvalidWitness, SearchBudgetExceeded
from core.functional import Leaf, Node, evaluate, validate
from core.intervals import Interval
from core.models import SpaceKind, SpaceSpec, Vec
from core.oracle import brute_constrained_max, brute_norm
from core.schedule import default_schedule
from tests.conftest import small_vectors, vec

SCHEDULE = default_schedule(6)
ORACLE_SPACES = [
    SpaceSpec(SpaceKind.MIXED_T, SCHEDULE),
    SpaceSpec(SpaceKind.XIW, SCHEDULE),
    SpaceSpec(SpaceKind.XIW_TILDE, SCHEDULE),
    SpaceSpec(SpaceKind.AUX, SCHEDULE, N=3),
    SpaceSpec(SpaceKind.AUX_TILDE, SCHEDULE, N=3),
]


def test_norm_of_unit_vector(xiw):
    result = norm(Vec.unit(5), xiw)
    assert result.value == 1
    assert result.witness == Leaf(5)


def test_norm_prefers_the_large_coordinate(xiw):
    result = norm(vec((2, 2), (3, 1)), xiw)
    assert result.value == 2
    assert result.witness == Leaf(2)


def test_norm_of_three_ones(xiw):
    assert norm(vec((2, 1), (3, 1), (4, 1)), xiw).value == 1


def test_norm_node_witness(xiw):
    x = vec((3, 1), (4, 1), (5, 1))
    result = norm(x, xiw)
    assert result.value == Fraction(3, 2)
    assert isinstance(result.witness, Node)
    assert validate(result.witness, xiw) == []
    assert evaluate(result.witness, x, xiw.schedule) == Fraction(3, 2)


def test_witness_leaves_carry_the_signs(xiw):
    x = vec((5, -3), (6, 1))
    result = norm(x, xiw)
    assert result.value == 3
    assert result.witness == Leaf(5, -1)
    assert evaluate(result.witness, x, xiw.schedule) == 3


def test_zero_vector(xiw):
    result = norm(Vec(), xiw)
    assert result.value == 0
    assert result.witness is None


def test_reference_norms(schedule):
    x = vec((1, 1), (2, -2))
    assert norm(x, SpaceSpec(SpaceKind.L1, schedule)).value == 3
    c0 = norm(x, SpaceSpec(SpaceKind.C0, schedule))
    assert c0.value == 2
    assert c0.witness == Leaf(2, -1)
    ones = vec((1, 1), (2, 1), (3, 1))
    assert norm(ones, SpaceSpec(SpaceKind.L1J, schedule, j=1)).value == Fraction(3, 2)


def test_lp_norm_is_an_enclosure(schedule):
    result = norm(vec((1, 1), (2, 1)), SpaceSpec(SpaceKind.LP, schedule, p=Fraction(2)))
    assert not result.exact
    assert result.lower ** 2 <= 2 <= result.upper ** 2


def test_p_space_norm_encloses_the_leaf(schedule):
    space = SpaceSpec(SpaceKind.XIW_P, schedule, p=Fraction(2))
    result = norm(vec((2, 1), (3, 1)), space)
    assert isinstance(result.value, Interval)
    assert result.lower <= 1 <= result.upper
    assert result.upper - result.lower <= Fraction(1, 10 ** 6)


def test_aux_p_is_refused(schedule):
    engine = NormEngine(SpaceSpec(SpaceKind.AUX_P, schedule, p=Fraction(2), N=4))
    with pytest.raises(ValueError):
        engine.norm(Vec.unit(2))


def test_constrained_max_known_values(xiw):
    assert constrained_max(vec((2, 1), (3, 1)), xiw, weight_equals(2)).value == 1
    assert constrained_max(Vec.unit(2), xiw, weight_below(4)).value == Fraction(1, 2)


def test_constrained_max_needs_a_tree(schedule):
    with pytest.raises(ValueError):
        constrained_max(Vec.unit(2), SpaceSpec(SpaceKind.L1, schedule), weight_equals(2))


def test_weight_bound_guard():
    with pytest.raises(ValueError):
        WeightBound('le', 2)
    assert str(weight_below(4)) == 'w < 4'


def test_certify_lower(xiw):
    x = vec((2, 1), (3, 1))
    assert certify_lower(x, xiw, Node((1,), (Leaf(2), Leaf(3)))) == 1
    with pytest.raises(InvalidWitness):
        certify_lower(x, xiw, Node((1,), (Leaf(1), Leaf(2))))


def test_budget_exceeded_keeps_a_sandwich(mixed):
    x = Vec({p: 1 for p in range(1, 9)})
    with pytest.raises(SearchBudgetExceeded) as info:
        NormEngine(mixed, budget=1).norm(x)
    err = info.value
    assert err.lower == 1
    assert err.upper == 8
    assert isinstance(err.witness, Leaf)


def test_ell1_bound():
    assert ell1_bound(vec((2, 1), (3, 3)), 4) == 1


@pytest.mark.property_based
@pytest.mark.parametrize('space', ORACLE_SPACES, ids=lambda s: s.label())
@given(x=small_vectors())
@settings(max_examples=60, deadline=None)
def test_norm_matches_oracle(space, x):
    result = NormEngine(space).norm(x)
    assert result.value == brute_norm(x, space)[0]
    assert validate(result.witness, space) == []
    assert evaluate(result.witness, x, space.schedule) == result.value


@pytest.mark.slow
@pytest.mark.property_based
@pytest.mark.parametrize('space', ORACLE_SPACES, ids=lambda s: s.label())
@given(x=small_vectors(max_pos=9, max_support=7))
@settings(max_examples=20, deadline=None)
def test_norm_matches_oracle_on_wider_supports(space, x):
    result = NormEngine(space).norm(x)
    assert result.value == brute_norm(x, space)[0]
    assert evaluate(result.witness, x, space.schedule) == result.value


@pytest.mark.property_based
@pytest.mark.parametrize('space', ORACLE_SPACES[:3], ids=lambda s: s.label())
@given(x=small_vectors(), w=st.sampled_from([2, 4, 8]), equal=st.booleans())
@settings(max_examples=40, deadline=None)
def test_constrained_max_matches_oracle(space, x, w, equal):
    bound = weight_equals(w) if equal else weight_below(w)
    result = NormEngine(space).constrained_max(x, bound)
    assert result.value == brute_constrained_max(x, space, bound)
    if result.witness is not None:
        assert validate(result.witness, space) == []
        assert evaluate(result.witness, x, space.schedule) == result.value


@pytest.mark.property_based
@given(x=small_vectors(), y=small_vectors())
@settings(max_examples=60, deadline=None)
def test_triangle_inequality(xiw, x, y):
    assert norm(x + y, xiw).value <= norm(x, xiw).value + norm(y, xiw).value


@pytest.mark.property_based
@given(x=small_vectors(), c=st.fractions(min_value=-3, max_value=3, max_denominator=5))
@settings(max_examples=60, deadline=None)
def test_homogeneity(xiw, x, c):
    assert norm(x.scale(c), xiw).value == abs(c) * norm(x, xiw).value


@pytest.mark.property_based
@given(x=small_vectors(), data=st.data())
@settings(max_examples=60, deadline=None)
def test_unconditional_and_monotone(xiw, x, data):
    value = norm(x, xiw).value
    assert norm(x.abs(), xiw).value == value
    kept = [p for p in x.support() if data.draw(st.booleans())]
    assert norm(x.restrict(kept), xiw).value <= value
    assert x.sup() <= value <= x.l1()
