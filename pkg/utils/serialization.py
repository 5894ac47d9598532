"""JSON codecs for the workbench types

Rationals travel as "num/den" strings (integers are accepted on input),
vectors as {"pos": "num/den"} objects, families as {"kind": "S"|"A"|"Star"}.
Decoders raise ParseError with the JSON path of the offending value.
"""

from fractions import Fraction
from typing import Any, Dict, List

from core.errors import ParseError
from core.functional import deserialize, parse_int, parse_rational, serialize
from core.models import SpaceKind, SpaceSpec, Vec, q_str
from config.defaults import DEFAULT_HORIZON
from core.schedule import Schedule, default_schedule
from core.schreier import Cardinality, Family, FinSet, Schreier, Star

__all__ = [
    'encode_rational', 'decode_rational', 'encode_vec', 'decode_vec', 'decode_finset',
    'encode_family', 'decode_family', 'decode_schedule', 'encode_space', 'decode_space',
    'serialize', 'deserialize', 'decode_coefficients',
]


def encode_rational(value) -> str:
    return q_str(Fraction(value))


def decode_rational(value: Any, path: str = '$') -> Fraction:
    return parse_rational(value, path)


def encode_vec(x: Vec) -> Dict[str, str]:
    return x.to_dict()


def decode_vec(data: Any, path: str = '$') -> Vec:
    if isinstance(data, list):
        return Vec({i + 1: decode_rational(v, f"{path}[{i}]") for i, v in enumerate(data)})
    if not isinstance(data, dict):
        raise ParseError(path, "expected an object of position: rational")
    coords = {}
    for key, value in data.items():
        try:
            pos = int(key)
        except ValueError:
            raise ParseError(f"{path}.{key}", "position must be an integer")
        if pos < 1:
            raise ParseError(f"{path}.{key}", "positions start at 1")
        coords[pos] = decode_rational(value, f"{path}.{key}")
    return Vec(coords)


def decode_finset(data: Any, path: str = '$') -> FinSet:
    if not isinstance(data, list):
        raise ParseError(path, "expected a list of positions")
    out = [parse_int(v, f"{path}[{i}]", 1) for i, v in enumerate(data)]
    if any(a >= b for a, b in zip(out, out[1:])):
        raise ParseError(path, "positions must be strictly increasing")
    return tuple(out)


def decode_coefficients(data: Any, path: str = '$') -> List[Fraction]:
    if not isinstance(data, list):
        raise ParseError(path, "expected a list of rationals")
    return [decode_rational(v, f"{path}[{i}]") for i, v in enumerate(data)]


def encode_family(fam: Family) -> Dict:
    if isinstance(fam, Schreier):
        return {'kind': 'S', 'n': fam.n}
    if isinstance(fam, Cardinality):
        return {'kind': 'A', 'n': fam.n}
    return {'kind': 'Star', 'left': encode_family(fam.left), 'right': encode_family(fam.right)}


def decode_family(data: Any, path: str = '$') -> Family:
    if not isinstance(data, dict) or 'kind' not in data:
        raise ParseError(path, "expected an object with a 'kind'")
    kind = data['kind']
    if kind in ('S', 'A'):
        if 'n' not in data:
            raise ParseError(f"{path}.n", "missing index")
        n = parse_int(data['n'], f"{path}.n", 0)
        return Schreier(n) if kind == 'S' else Cardinality(n)
    if kind == 'Star':
        for side in ('left', 'right'):
            if side not in data:
                raise ParseError(f"{path}.{side}", "missing operand")
        return Star(decode_family(data['left'], f"{path}.left"), decode_family(data['right'], f"{path}.right"))
    raise ParseError(f"{path}.kind", f"unknown family kind {kind!r}")


def decode_schedule(data: Any, path: str = '$') -> Schedule:
    """Either {"m": [...], "n": [...]} or {"default": J}"""
    if not isinstance(data, dict):
        raise ParseError(path, "expected an object")
    if 'default' in data:
        return default_schedule(parse_int(data['default'], f"{path}.default", 1))
    values = {}
    for key in ('m', 'n'):
        raw = data.get(key)
        if not isinstance(raw, list) or not raw:
            raise ParseError(f"{path}.{key}", "expected a nonempty list")
        values[key] = [parse_int(int(v) if isinstance(v, str) and v.isdigit() else v, f"{path}.{key}[{i}]", 1)
                       for i, v in enumerate(raw)]
    if len(values['m']) != len(values['n']):
        raise ParseError(path, "m and n must have the same length")
    return Schedule(tuple(values['m']), tuple(values['n']))


def encode_space(space: SpaceSpec) -> Dict:
    return space.to_dict()


def decode_space(data: Any, path: str = '$', schedule: Schedule = None) -> SpaceSpec:
    if not isinstance(data, dict) or 'kind' not in data:
        raise ParseError(path, "expected an object with a 'kind'")
    try:
        kind = SpaceKind(data['kind'])
    except ValueError:
        raise ParseError(f"{path}.kind", f"unknown space {data['kind']!r}")
    if 'schedule' in data:
        schedule = decode_schedule(data['schedule'], f"{path}.schedule")
    schedule = schedule or default_schedule(DEFAULT_HORIZON)
    p = decode_rational(data['p'], f"{path}.p") if 'p' in data else None
    N = parse_int(data['N'], f"{path}.N", 1) if 'N' in data else None
    j = parse_int(data['j'], f"{path}.j", 1) if 'j' in data else None
    try:
        return SpaceSpec(kind, schedule, p=p, N=N, j=j)
    except ValueError as e:
        raise ParseError(path, str(e))
