"""Special convex combinations, RIS, arrays and tilde sequences"""

from fractions import Fraction

import pytest

from core.constructions import (
    array_start, aux_blocks, aux_delta, aux_upper_check, basic_inequality_check, build_basic_scc,
    build_block_scc, build_exact_array, build_ris, build_tilde_sequence, default_plegma, ground_from,
    picked_tilde_delta, plegma_enumerate, ris_eps, row_witness, scc_ris_bound, shift_scc, tilde_delta,
    tilde_hypothesis, tilde_lower_witnesses, uniform_ell1_witness, verify_scc,
)
from core.engine import norm
from core.errors import ConstructionFailed, GroundTooShort
from core.functional import Leaf, Node, evaluate, validate
from core.models import Plegma, SccCert, Vec
from core.schreier import s_member
from tests.conftest import vec


@pytest.fixture(scope='module')
def ris(xiw):
    return build_ris(xiw, 2, 3, 4)


def test_basic_scc_averages_unit_vectors():
    cert = build_basic_scc(range(2, 41), 1, Fraction(1, 2))
    assert cert.x == Vec({p: Fraction(1, 4) for p in range(4, 8)})
    assert cert.worst[0] == Fraction(1, 4)


def test_basic_scc_of_index_zero_is_a_unit_vector():
    cert = build_basic_scc(ground_from(9), 0, Fraction(1, 2))
    assert cert.x == Vec.unit(9)


def test_basic_scc_of_index_two_verifies():
    cert = build_basic_scc(ground_from(2), 2, Fraction(1, 2))
    assert s_member(cert.x.support(), 2)
    assert sum(v for _, v in cert.x.items()) == 1
    assert isinstance(verify_scc(cert.x, 2, Fraction(1, 2)), SccCert)


def test_basic_scc_input_guards():
    with pytest.raises(ValueError):
        build_basic_scc(ground_from(2), 1, 0)
    with pytest.raises(ValueError):
        build_basic_scc(ground_from(2), -1, Fraction(1, 2))
    with pytest.raises(GroundTooShort):
        build_basic_scc(range(2, 6), 1, Fraction(1, 2))


def test_verify_scc_reports_heavy_sets():
    problems = verify_scc(vec((2, '1/2'), (3, '1/2')), 1, Fraction(1, 3))
    assert [p.condition for p in problems] == ['mass']


def test_verify_scc_reports_non_convex_vectors():
    problems = verify_scc(vec((4, 1), (5, 1)), 1, Fraction(1, 2))
    assert 'convex' in {p.condition for p in problems}
    assert verify_scc(Vec(), 1, Fraction(1, 2))[0].condition == 'support'


def test_verify_scc_reports_the_star_mass():
    cert = verify_scc(Vec({p: Fraction(1, 4) for p in range(4, 8)}), 1, Fraction(1, 2))
    assert isinstance(cert, SccCert)
    assert cert.star_mass == Fraction(3, 4)


def test_shift_scc():
    x = Vec({p: Fraction(1, 4) for p in range(4, 8)})
    assert shift_scc(x, 3).support() == (7, 8, 9, 10)
    with pytest.raises(ValueError):
        shift_scc(x, -1)


def test_block_scc_uses_the_block_minima():
    blocks = [Vec.unit(p, 2) for p in range(4, 10)]
    vector, cert = build_block_scc(blocks, 1, Fraction(1, 2))
    assert cert.x.support() == (4, 5, 6, 7)
    assert vector == Vec({p: Fraction(1, 2) for p in range(4, 8)})
    with pytest.raises(ValueError):
        build_block_scc([Vec.unit(5), Vec.unit(4)], 1, Fraction(1, 2))


def test_scc_ris_bound():
    assert scc_ris_bound(Fraction(1, 2), 2) == Fraction(3, 2)
    assert scc_ris_bound(Fraction(1, 10), 4) == Fraction(9, 20)


def test_ris_rejects_small_constants(xiw):
    with pytest.raises(ValueError):
        build_ris(xiw, 1, 3, 4)
    with pytest.raises(ValueError):
        build_ris(xiw, 2, 0, 4)


def test_ris_eps_follows_the_constant():
    assert ris_eps(2, 0, 4) == Fraction(1, 8)
    assert ris_eps(3, 0, 4) == Fraction(1, 4)
    assert ris_eps(3, 1, 4) == Fraction(1, 16)
    assert (1 + 1) * (1 + 2 * ris_eps(3, 1, 4) * 4) == 3


def test_tighter_constant_gives_smaller_eps(xiw):
    tight = build_ris(xiw, 2, 1, 4)
    loose = build_ris(xiw, 3, 1, 4)
    assert tight.eps[0] < loose.eps[0]
    assert tight.realised_eps == loose.realised_eps == [Fraction(1, 4)]
    assert tight.ok and loose.ok


def test_loose_constant_is_built_at_its_own_eps(xiw):
    cert = build_ris(xiw, 5, 1, 4)
    assert cert.eps == [Fraction(1, 2)]
    assert cert.realised_eps == [Fraction(1, 2)]
    assert cert.xs[0].support() == tuple(range(4, 8))
    assert cert.ok


@pytest.mark.slow
def test_ris_is_certified(ris):
    assert ris.ok
    assert ris.js == [2, 4, 5]
    assert [x.support()[0] for x in ris.xs] == [8, 16, 32]
    assert ris.eps == [Fraction(1, 8), Fraction(1, 512), Fraction(1, 131072)]
    assert ris.realised_eps == [Fraction(1, 4)] * 3
    assert all(v <= ris.C for v in ris.norms)
    assert all(prev * prev < m for prev, m in ris.gaps)
    assert ris.delta <= ris.C - 1
    assert ris.to_dict()['ok'] is True


@pytest.mark.slow
def test_basic_inequality_holds(ris, xiw):
    check = basic_inequality_check(ris, [1, -1, 1], xiw)
    assert check.N == 3
    assert check.ok
    with pytest.raises(ValueError):
        basic_inequality_check(ris, [1, 1, 1], xiw, N=9)


@pytest.mark.slow
def test_uniform_ell1_witness_is_valid(ris, xiw):
    coeffs = [1, Fraction(1, 2), -1]
    f, value = uniform_ell1_witness(ris.xs, ris.norm_witnesses, coeffs, xiw)
    x = ris.xs[0] + ris.xs[1].scale(Fraction(1, 2)) - ris.xs[2]
    assert validate(f, xiw) == []
    assert evaluate(f, x, xiw.schedule) == value
    assert value >= 1


def test_aux_delta(schedule):
    assert aux_delta(schedule, [1], Fraction(1, 100), 4) == 6
    assert aux_delta(schedule, [1, 2], Fraction(1, 100), 8) == 6 + 3


def test_plegma_enumeration():
    strict = plegma_enumerate(2, 1, [1, 2, 3], strict_only=True)
    assert len(strict) == 3
    assert all(p.strict for p in strict)
    assert len(plegma_enumerate(1, 2, [1, 2, 3, 4])) == 6


def test_default_plegma_is_strict():
    plegma = default_plegma(2, 2)
    assert plegma.rows == ((2, 4), (3, 5))
    assert plegma.strict
    assert not Plegma(((1, 2), (1, 3))).strict


def test_row_witness_signs():
    assert row_witness([Vec.unit(3)], 1, [-1]) == Node((1,), (Leaf(3, -1),))


def test_array_input_guards(xiw):
    with pytest.raises(ValueError):
        build_exact_array(xiw, 2, 2, [1, 1], 1, 4)
    with pytest.raises(ValueError):
        build_exact_array(xiw, 2, 2, [1, 2], 1, 4, plegma=Plegma(((2, 4),)))


def test_array_vectors_and_row_witnesses(xiw):
    array = build_exact_array(xiw, 2, 2, [1, 2], 1, 4)
    assert array.vectors[0][0] == Vec.unit(8, 2)
    assert array.vectors[0][1] == Vec.unit(18, 2)
    assert array.vectors[1][0].support() == tuple(range(9, 18))
    for i in range(2):
        assert validate(array.row_witnesses[i], xiw) == []


def test_array_start_depends_on_threshold_and_eps(schedule):
    assert array_start(schedule, [1, 2], 1, 4) == 8
    assert array_start(schedule, [1, 2], Fraction(1, 2), 8) == 12
    assert array_start(schedule, [1, 2], 1, 20) == 20


def test_array_vectors_move_with_the_setting(xiw):
    first = build_exact_array(xiw, 2, 2, [1, 2], 1, 4)
    second = build_exact_array(xiw, 2, 2, [1, 2], Fraction(1, 2), 8)
    assert second.vectors[0][0] == Vec.unit(12, 2)
    assert second.vectors[1][0].support() == tuple(range(13, 26))
    assert second.vectors[0][1] == Vec.unit(26, 2)
    assert first.vectors != second.vectors
    assert second.recipe_index == [0, 4]
    assert second.realised_index == [0, 1]
    assert not second.full_index


def test_single_level_array_is_at_full_index(xiw):
    array = build_exact_array(xiw, 1, 2, [1], 1, 4)
    assert array.full_index
    assert array.to_dict()['full_index'] is True


@pytest.mark.slow
def test_array_lower_bound(xiw):
    array = build_exact_array(xiw, 2, 2, [1, 2], 1, 4, coefficients=[[1, 1], [1, 1]])
    assert array.lower == 2
    assert array.upper >= array.lower
    assert array.ratio == array.upper / 2


def test_tilde_sequence(schedule):
    cert = build_tilde_sequence(1, 2, schedule)
    assert cert.xs[0] == Vec({p: Fraction(1, 2) for p in range(4, 8)})
    assert cert.eps == [1, Fraction(1, 15)]
    assert cert.xs[1].support() == tuple(range(60, 120))
    assert tilde_delta(schedule, 1, 4, cert.xs, cert.eps) == Fraction(14, 5)
    with pytest.raises(ValueError):
        build_tilde_sequence(1, 0, schedule)


def test_tilde_lower_witnesses(schedule, xiw):
    cert = build_tilde_sequence(1, 2, schedule)
    rows = tilde_lower_witnesses(cert, [0, 1], [1, 1], schedule)
    assert [value for _, value in rows] == [1, 1, 1]
    for f, _ in rows:
        assert validate(f, xiw) == []
    signed = tilde_lower_witnesses(cert, [0, 1], [-1, 1], schedule)
    assert [value for _, value in signed] == [1, 1, 1]


def test_tilde_vectors_have_unit_scale_norm(schedule, xiw):
    cert = build_tilde_sequence(1, 1, schedule)
    assert norm(cert.xs[0], xiw).value == 1


def test_tilde_hypothesis(schedule):
    cert = build_tilde_sequence(1, 2, schedule)
    assert tilde_hypothesis(cert, [1], 4, schedule) == []
    assert tilde_hypothesis(cert, [0, 1], 4, schedule) == ['eps_1=1/1 is not below 1/12']
    assert tilde_hypothesis(cert, [1], 3, schedule) == ['N=3 is below 2 m_j0 = 4']
    assert picked_tilde_delta(cert, [1], 4, schedule) == 2
    assert picked_tilde_delta(cert, [0, 1], 4, schedule) == tilde_delta(schedule, 1, 4, cert.xs, cert.eps)


def test_aux_upper_holds_on_unit_blocks(schedule):
    blocks = aux_blocks(schedule, [1], [[3, 5]], Fraction(1, 4))
    assert blocks == [[Vec.unit(3), Vec.unit(5)]]
    result = aux_upper_check(schedule, [1], blocks, [[1, -1]], Fraction(1, 4), 4)
    assert result.in_hypothesis
    assert result.value == 2
    assert result.delta == 6
    assert result.holds
    assert result.to_dict()['bound'] == '14/1'


def test_aux_upper_flags_blocks_that_are_not_scc(schedule):
    result = aux_upper_check(schedule, [1], [[Vec.unit(3, 5)]], [[1]], Fraction(1, 4), 4)
    assert not result.in_hypothesis
    assert result.value == 10
    assert not result.holds
    assert 'x~[0][0]' in result.violations[0]


def test_aux_upper_below_full_index_is_out_of_hypothesis(schedule):
    blocks = aux_blocks(schedule, [2], [[2]], Fraction(1, 4))
    assert blocks[0][0].support() == tuple(range(8, 16))
    result = aux_upper_check(schedule, [2], blocks, [[1]], Fraction(1, 4), 8)
    assert not result.in_hypothesis
    with pytest.raises(ValueError):
        aux_upper_check(schedule, [1, 1], [[Vec.unit(3)], [Vec.unit(4)]], [[1], [1]], Fraction(1, 4), 4)


def test_builders_honour_the_retry_limit(schedule, xiw):
    with pytest.raises(ConstructionFailed):
        build_ris(xiw, 5, 1, 4, retry_limit=0)
    with pytest.raises(ConstructionFailed):
        build_exact_array(xiw, 2, 2, [1, 2], 1, 4, retry_limit=0)
    with pytest.raises(ConstructionFailed):
        build_tilde_sequence(1, 1, schedule, retry_limit=0)
    with pytest.raises(ConstructionFailed):
        aux_blocks(schedule, [2], [[4]], Fraction(1, 4), retry_limit=0)
