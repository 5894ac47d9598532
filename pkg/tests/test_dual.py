from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core.dual import dual_c0_check, dual_norm
from core.engine import norm
from core.errors import InvalidWitness
from core.functional import Leaf, Node
from core.models import SpaceKind, SpaceSpec, Vec
from core.oracle import brute_dual_norm
from tests.conftest import vec


def test_dual_norm_of_a_coordinate_functional(xiw):
    result = dual_norm(Vec.unit(2), xiw)
    assert result.value == 1
    assert result.x == Vec.unit(2)


def test_dual_norm_of_two_coordinates(xiw):
    assert dual_norm(vec((2, 1), (3, 1)), xiw).value == 2
    assert dual_norm(vec((2, '1/2'), (3, '1/2')), xiw).value == 1


def test_dual_norm_keeps_the_signs(xiw):
    result = dual_norm(vec((2, -1), (3, 1)), xiw)
    assert result.value == 2
    assert result.x == vec((2, -1), (3, 1))


def test_dual_norm_in_c0(schedule):
    assert dual_norm(vec((2, 1), (5, -3)), SpaceSpec(SpaceKind.C0, schedule)).value == 4


def test_dual_norm_zero(xiw):
    assert dual_norm(Vec(), xiw).value == 0


def test_dual_norm_refuses_spaces_without_cuts(schedule):
    with pytest.raises(ValueError):
        dual_norm(Vec.unit(2), SpaceSpec(SpaceKind.L1, schedule))
    with pytest.raises(ValueError):
        dual_norm(Vec.unit(2), SpaceSpec(SpaceKind.XIW_P, schedule, p=Fraction(2)))


def test_dual_c0_check_on_two_coordinates(xiw):
    report = dual_c0_check([Leaf(2), Leaf(3)], 1, xiw)
    assert report.bound == 5
    assert report.ok
    assert max(r.value for r in report.rows) == 2
    assert report.to_dict()['evidence_only'] is True


def test_dual_c0_check_needs_successive_functionals(xiw):
    with pytest.raises(ValueError):
        dual_c0_check([Leaf(3), Leaf(2)], 1, xiw)


def test_dual_c0_check_accepts_nodes(xiw):
    fs = [Node((1,), (Leaf(2), Leaf(3))), Node((1,), (Leaf(4), Leaf(5)))]
    report = dual_c0_check(fs, 1, xiw)
    assert report.ok
    assert report.worst_ratio <= 1


@pytest.mark.property_based
@given(
    st.dictionaries(st.integers(2, 6), st.sampled_from([Fraction(v) for v in ('1', '1/2', '2', '-1')]),
                    min_size=1, max_size=3)
)
@settings(max_examples=25, deadline=None)
def test_dual_norm_matches_oracle(xiw, coords):
    g = Vec(coords)
    result = dual_norm(g, xiw)
    assert result.value == brute_dual_norm(g, xiw)
    assert norm(result.x, xiw).value <= 1
    assert g.dot(result.x) == result.value


def test_dual_c0_check_rejects_functionals_outside_the_norming_set(xiw):
    too_wide = Node((1,), (Leaf(2), Leaf(3), Leaf(4)))
    with pytest.raises(InvalidWitness):
        dual_c0_check([too_wide, Leaf(5)], 1, xiw)


def test_dual_c0_check_rejects_vectors_outside_the_dual_ball(xiw):
    with pytest.raises(ValueError):
        dual_c0_check([vec((2, 1), (3, 1)), Vec.unit(4)], 1, xiw)
    assert dual_c0_check([vec((2, '1/2'), (3, '1/2')), Vec.unit(4)], 1, xiw).ok
