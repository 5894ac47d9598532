"""Weighted functionals: representation, evaluation and norming-set validation

A functional is a tree. Leaves are signed unit functionals, nodes carry a
vector weight (j_1, ..., j_l) and act as (1/(m_j1 ... m_jl)) sum of their
children, optionally with coefficients lambda_q for the p-sets.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from config.defaults import DEFAULT_HORIZON, INTERVAL_PREC_BITS
from .errors import LevelOutOfHorizon, ParseError
from .intervals import conjugate, power_sum
from .models import SpaceSpec, Vec, q_str
from .schedule import Schedule, default_schedule
from .schreier import FinSet, is_admissible

logger = logging.getLogger(__name__)

INF = float('inf')


@dataclass(frozen=True)
class Leaf:
    pos: int
    sign: int = 1

    def __post_init__(self):
        if self.pos < 1:
            raise ValueError(f"leaf position must be >= 1, got {self.pos}")
        if self.sign not in (1, -1):
            raise ValueError(f"leaf sign must be +1 or -1, got {self.sign}")


@dataclass(frozen=True)
class Node:
    vw: Tuple[int, ...]
    children: Tuple['Functional', ...]
    coeffs: Optional[Tuple[Fraction, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, 'vw', tuple(int(j) for j in self.vw))
        object.__setattr__(self, 'children', tuple(self.children))
        if self.coeffs is not None:
            object.__setattr__(self, 'coeffs', tuple(Fraction(c) for c in self.coeffs))
        if not self.vw:
            raise ValueError("a node needs a nonempty vector weight")
        if not self.children:
            raise ValueError("a node needs at least one child")


Functional = Union[Leaf, Node]


def _default() -> Schedule:
    return default_schedule(DEFAULT_HORIZON)


def support(f: Functional) -> FinSet:
    if isinstance(f, Leaf):
        return (f.pos,)
    out: List[int] = []
    for child in f.children:
        out.extend(support(child))
    return tuple(sorted(set(out)))


def min_supp(f: Functional) -> int:
    if isinstance(f, Leaf):
        return f.pos
    return min(min_supp(c) for c in f.children)


def max_supp(f: Functional) -> int:
    if isinstance(f, Leaf):
        return f.pos
    return max(max_supp(c) for c in f.children)


def weight(f: Functional, schedule: Optional[Schedule] = None):
    """Product of m_j over the vector weight; INF for leaves"""
    if isinstance(f, Leaf):
        return INF
    return (schedule or _default()).weight(f.vw)


def evaluate(f: Functional, x: Vec, schedule: Optional[Schedule] = None) -> Fraction:
    schedule = schedule or _default()
    if isinstance(f, Leaf):
        return f.sign * x[f.pos]
    total = Fraction(0)
    for q, child in enumerate(f.children):
        value = evaluate(child, x, schedule)
        if f.coeffs is not None:
            value *= f.coeffs[q]
        total += value
    return total / schedule.weight(f.vw)


def coordinates(f: Functional, schedule: Optional[Schedule] = None) -> Vec:
    """The functional as a vector of coefficients on the unit basis"""
    schedule = schedule or _default()
    if isinstance(f, Leaf):
        return Vec.unit(f.pos, f.sign)
    pairs: List[Tuple[int, Fraction]] = []
    scale = Fraction(1, schedule.weight(f.vw))
    for q, child in enumerate(f.children):
        factor = scale * (f.coeffs[q] if f.coeffs is not None else 1)
        pairs.extend((p, v * factor) for p, v in coordinates(child, schedule).items())
    return Vec(pairs)


def is_very_fast_growing(fs: Sequence[Functional], schedule: Optional[Schedule] = None) -> bool:
    """w(f_q) > max supp f_{q-1} for every q >= 2"""
    schedule = schedule or _default()
    for prev, cur in zip(fs, fs[1:]):
        if weight(cur, schedule) <= max_supp(prev):
            return False
    return True


@dataclass
class FunctionalViolation:
    path: str
    message: str

    def __str__(self) -> str:
        return f"{self.path}: {self.message}"

    def to_dict(self) -> Dict:
        return {'path': self.path, 'message': self.message}


def validate(f: Functional, space: SpaceSpec) -> List[FunctionalViolation]:
    """Every reason f is not in the norming set of space; empty when it is"""
    out: List[FunctionalViolation] = []
    _check(f, space, '$', out)
    return out


def _check(f: Functional, space: SpaceSpec, path: str, out: List[FunctionalViolation]):
    if isinstance(f, Leaf):
        return
    s = space.schedule
    if not space.has_tree:
        out.append(FunctionalViolation(path, f"{space.kind.value} has no weighted nodes"))
        return
    try:
        s.weight(f.vw)
    except LevelOutOfHorizon as exc:
        out.append(FunctionalViolation(path, str(exc)))
        return
    if space.single_level and len(f.vw) != 1:
        out.append(FunctionalViolation(path, f"{space.kind.value} allows one level, got {list(f.vw)}"))

    children = f.children
    for q in range(1, len(children)):
        if max_supp(children[q - 1]) >= min_supp(children[q]):
            out.append(FunctionalViolation(f"{path}.children[{q}]", "children are not successive"))

    mins = [min_supp(c) for c in children]
    if mins == sorted(set(mins)):
        fam = space.family(f.vw)
        if not is_admissible(mins, fam):
            out.append(FunctionalViolation(path, f"children minima {mins} are not {fam}-admissible"))

    for q in range(1, len(children)):
        w = weight(children[q], s)
        if space.very_fast_growing:
            bound = max_supp(children[q - 1])
            if w <= bound:
                out.append(FunctionalViolation(
                    f"{path}.children[{q}]", f"weight {w} does not exceed max supp {bound} of the previous child"
                ))
        elif space.auxiliary and w <= space.N:
            out.append(FunctionalViolation(f"{path}.children[{q}]", f"weight {w} does not exceed N={space.N}"))

    if space.uses_coeffs:
        if f.coeffs is None or len(f.coeffs) != len(children):
            out.append(FunctionalViolation(path, "p-set nodes need one coefficient per child"))
        else:
            total = power_sum(f.coeffs, conjugate(space.p), INTERVAL_PREC_BITS)
            if total.lo > 1:
                out.append(FunctionalViolation(path, "coefficients leave the unit ball of l_p*"))
            elif total.hi > 1:
                out.append(FunctionalViolation(path, "undecided: coefficient sum straddles 1"))
    elif f.coeffs is not None:
        out.append(FunctionalViolation(path, f"{space.kind.value} nodes take no coefficients"))

    for q, child in enumerate(children):
        _check(child, space, f"{path}.children[{q}]", out)


def serialize(f: Functional) -> Dict:
    if isinstance(f, Leaf):
        return {'leaf': {'sign': f.sign, 'pos': f.pos}}
    body: Dict = {'vw': list(f.vw), 'children': [serialize(c) for c in f.children]}
    if f.coeffs is not None:
        body['coeffs'] = [q_str(c) for c in f.coeffs]
    return {'node': body}


def parse_rational(value, path: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ParseError(path, f"expected a rational string, got {value!r}")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(path, f"bad rational {value!r}: {exc}")


def parse_int(value, path: str, minimum: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(path, f"expected an integer, got {value!r}")
    if value < minimum:
        raise ParseError(path, f"must be >= {minimum}, got {value}")
    return value


def deserialize(data, path: str = '$') -> Functional:
    if not isinstance(data, dict) or len(data) != 1:
        raise ParseError(path, "expected an object with a single 'leaf' or 'node' key")
    if 'leaf' in data:
        body = data['leaf']
        if not isinstance(body, dict):
            raise ParseError(f"{path}.leaf", "expected an object")
        if 'pos' not in body:
            raise ParseError(f"{path}.leaf", "missing 'pos'")
        pos = parse_int(body['pos'], f"{path}.leaf.pos", 1)
        sign = body.get('sign', 1)
        if sign not in (1, -1) or isinstance(sign, bool):
            raise ParseError(f"{path}.leaf.sign", f"must be 1 or -1, got {sign!r}")
        return Leaf(pos, sign)
    if 'node' in data:
        body = data['node']
        if not isinstance(body, dict):
            raise ParseError(f"{path}.node", "expected an object")
        vw = body.get('vw')
        if not isinstance(vw, list) or not vw:
            raise ParseError(f"{path}.node.vw", "expected a nonempty list of levels")
        levels = tuple(parse_int(j, f"{path}.node.vw[{i}]", 1) for i, j in enumerate(vw))
        kids = body.get('children')
        if not isinstance(kids, list) or not kids:
            raise ParseError(f"{path}.node.children", "expected a nonempty list")
        children = tuple(deserialize(c, f"{path}.node.children[{i}]") for i, c in enumerate(kids))
        coeffs = None
        if 'coeffs' in body:
            raw = body['coeffs']
            if not isinstance(raw, list) or len(raw) != len(children):
                raise ParseError(f"{path}.node.coeffs", "expected one rational per child")
            coeffs = tuple(parse_rational(c, f"{path}.node.coeffs[{i}]") for i, c in enumerate(raw))
        return Node(levels, children, coeffs)
    raise ParseError(path, f"unknown functional key {next(iter(data))!r}")
