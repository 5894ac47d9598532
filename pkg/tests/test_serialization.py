from fractions import Fraction

import pytest

from core.errors import ParseError
from core.models import SpaceKind
from core.schedule import Schedule, default_schedule
from core.schreier import Cardinality, Schreier, Star
from utils.serialization import (
    decode_coefficients, decode_family, decode_finset, decode_rational, decode_schedule, decode_space,
    decode_vec, encode_family, encode_rational, encode_space, encode_vec,
)
from tests.conftest import vec


def test_rationals():
    assert encode_rational(Fraction(3, 4)) == '3/4'
    assert encode_rational(2) == '2/1'
    assert decode_rational('3/4') == Fraction(3, 4)
    assert decode_rational(5) == 5
    for bad in (True, 1.5, '1/0', 'x', None):
        with pytest.raises(ParseError):
            decode_rational(bad)


def test_vectors():
    x = vec((2, '1/2'), (7, -3))
    assert encode_vec(x) == {'2': '1/2', '7': '-3/1'}
    assert decode_vec({'2': '1/2', '7': '-3'}) == x
    assert decode_vec(['1', '0', '2']) == vec((1, 1), (3, 2))


@pytest.mark.parametrize('data, path', [
    ('x', '$'),
    ({'a': '1'}, '$.a'),
    ({'0': '1'}, '$.0'),
    ({'3': 'half'}, '$.3'),
    (['1', 'x'], '$[1]'),
])
def test_vector_errors(data, path):
    with pytest.raises(ParseError) as info:
        decode_vec(data)
    assert info.value.path == path


def test_finsets_and_coefficients():
    assert decode_finset([2, 5, 9]) == (2, 5, 9)
    with pytest.raises(ParseError):
        decode_finset([5, 2])
    with pytest.raises(ParseError):
        decode_finset('2,5')
    assert decode_coefficients(['1/2', 3]) == [Fraction(1, 2), 3]
    with pytest.raises(ParseError):
        decode_coefficients({'a': 1})


def test_families():
    star = Star(Schreier(1), Cardinality(3))
    data = encode_family(star)
    assert data == {'kind': 'Star', 'left': {'kind': 'S', 'n': 1}, 'right': {'kind': 'A', 'n': 3}}
    assert decode_family(data) == star
    with pytest.raises(ParseError) as info:
        decode_family({'kind': 'Star', 'left': {'kind': 'S', 'n': 1}})
    assert info.value.path == '$.right'
    with pytest.raises(ParseError):
        decode_family({'kind': 'B', 'n': 1})


def test_schedules():
    assert decode_schedule({'default': 3}) == default_schedule(3)
    assert decode_schedule({'m': [2, 4], 'n': ['1', 5]}) == Schedule((2, 4), (1, 5))
    with pytest.raises(ParseError):
        decode_schedule({'m': [2, 4], 'n': [1]})
    with pytest.raises(ParseError) as info:
        decode_schedule({'m': [2, 0], 'n': [1, 5]})
    assert info.value.path == '$.m[1]'


def test_spaces():
    space = decode_space({'kind': 'XiwP', 'p': '3/2'})
    assert space.kind == SpaceKind.XIW_P
    assert space.p == Fraction(3, 2)
    assert decode_space(encode_space(space)) == space
    aux = decode_space({'kind': 'Aux', 'N': 4, 'schedule': {'default': 3}})
    assert aux.N == 4
    assert aux.schedule == default_schedule(3)


@pytest.mark.parametrize('data, path', [
    ({'kind': 'Nope'}, '$.kind'),
    ({'kind': 'Aux'}, '$'),
    ({'kind': 'XiwP', 'p': '1'}, '$'),
    ({'kind': 'Xiw', 'N': 0}, '$.N'),
    ({'p': '2'}, '$'),
])
def test_space_errors(data, path):
    with pytest.raises(ParseError) as info:
        decode_space(data)
    assert info.value.path == path
