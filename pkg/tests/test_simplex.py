from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core.errors import Infeasible, Unbounded
from core.simplex import maximize


def test_small_programme():
    solution = maximize([3, 2], [[1, 1], [1, 0]], [4, 2])
    assert solution.value == 10
    assert solution.x == [2, 2]


def test_klee_minty_cube():
    solution = maximize([100, 10, 1], [[1, 0, 0], [20, 1, 0], [200, 20, 1]], [1, 100, 10000])
    assert solution.value == 10000
    assert solution.x == [0, 0, 10000]


def test_degenerate_programme_terminates():
    # Beale's cycling example; Bland's rule must not cycle
    c = [Fraction(3, 4), -150, Fraction(1, 50), -6]
    A = [
        [Fraction(1, 4), -60, Fraction(-1, 25), 9],
        [Fraction(1, 2), -90, Fraction(-1, 50), 3],
        [0, 0, 1, 0],
    ]
    solution = maximize(c, A, [0, 0, 1])
    assert solution.value == Fraction(1, 20)


def test_negative_right_hand_side_goes_through_phase_one():
    solution = maximize([-1], [[-1]], [-2])
    assert solution.value == -2
    assert solution.x == [2]


def test_unbounded():
    with pytest.raises(Unbounded):
        maximize([1, 1], [[1, -1]], [1])


def test_infeasible():
    with pytest.raises(Infeasible):
        maximize([1], [[1]], [-1])


def test_shape_errors():
    with pytest.raises(ValueError):
        maximize([1, 1], [[1]], [1])
    with pytest.raises(ValueError):
        maximize([1], [[1]], [1, 2])


@pytest.mark.property_based
@given(st.lists(st.fractions(min_value=0, max_value=5, max_denominator=4), min_size=1, max_size=4))
@settings(max_examples=60, deadline=None)
def test_box_programme(c):
    # max c.x over the unit box is the sum of the positive c_j
    n = len(c)
    A = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    solution = maximize(c, A, [1] * n)
    assert solution.value == sum(c)
    assert all(0 <= v <= 1 for v in solution.x)
