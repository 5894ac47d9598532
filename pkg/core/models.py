"""Data models for vectors, spaces, norm results and certificates"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

from .intervals import Interval
from .schedule import Schedule
from .schreier import Cardinality, Family, FinSet, Schreier, Star


def q_str(value: Fraction) -> str:
    """Rational as a "num/den" string"""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


class Vec:
    """Finitely supported rational vector; zero entries are never stored"""

    __slots__ = ('_coords',)

    def __init__(self, coords: Union[Mapping[int, object], Iterable[Tuple[int, object]]] = ()):
        items = coords.items() if isinstance(coords, Mapping) else coords
        clean: Dict[int, Fraction] = {}
        for pos, value in items:
            pos = int(pos)
            if pos < 1:
                raise ValueError(f"positions start at 1, got {pos}")
            q = Fraction(value)
            if q:
                clean[pos] = clean.get(pos, Fraction(0)) + q
        self._coords = {p: v for p, v in sorted(clean.items()) if v}

    @classmethod
    def unit(cls, pos: int, value: object = 1) -> 'Vec':
        return cls({pos: value})

    def __getitem__(self, pos: int) -> Fraction:
        return self._coords.get(pos, Fraction(0))

    def __iter__(self) -> Iterator[int]:
        return iter(self._coords)

    def __len__(self) -> int:
        return len(self._coords)

    def __bool__(self) -> bool:
        return bool(self._coords)

    def items(self) -> List[Tuple[int, Fraction]]:
        return list(self._coords.items())

    def support(self) -> FinSet:
        return tuple(self._coords)

    @property
    def min_supp(self) -> int:
        if not self._coords:
            raise ValueError("the zero vector has no support")
        return next(iter(self._coords))

    @property
    def max_supp(self) -> int:
        if not self._coords:
            raise ValueError("the zero vector has no support")
        return next(reversed(self._coords))

    def l1(self) -> Fraction:
        return sum((abs(v) for v in self._coords.values()), Fraction(0))

    def sup(self) -> Fraction:
        return max((abs(v) for v in self._coords.values()), default=Fraction(0))

    def abs(self) -> 'Vec':
        return Vec({p: abs(v) for p, v in self._coords.items()})

    def restrict(self, positions: Iterable[int]) -> 'Vec':
        keep = set(positions)
        return Vec({p: v for p, v in self._coords.items() if p in keep})

    def window(self, low: int, high: int) -> 'Vec':
        """Restriction to the interval [low, high]"""
        return Vec({p: v for p, v in self._coords.items() if low <= p <= high})

    def scale(self, factor: object) -> 'Vec':
        factor = Fraction(factor)
        return Vec({p: v * factor for p, v in self._coords.items()})

    def shift(self, offset: int) -> 'Vec':
        return Vec({p + offset: v for p, v in self._coords.items()})

    def dot(self, other: 'Vec') -> Fraction:
        return sum((v * other[p] for p, v in self._coords.items()), Fraction(0))

    def __add__(self, other: 'Vec') -> 'Vec':
        return Vec(list(self._coords.items()) + other.items())

    def __sub__(self, other: 'Vec') -> 'Vec':
        return self + other.scale(-1)

    def __neg__(self) -> 'Vec':
        return self.scale(-1)

    def __eq__(self, other) -> bool:
        return isinstance(other, Vec) and self._coords == other._coords

    def __hash__(self) -> int:
        return hash(tuple(self._coords.items()))

    def __repr__(self) -> str:
        body = ', '.join(f"{p}: {q_str(v)}" for p, v in self._coords.items())
        return f"Vec({{{body}}})"

    def to_dict(self) -> Dict[str, str]:
        return {str(p): q_str(v) for p, v in self._coords.items()}


def combine(coeffs: Iterable[object], vectors: Iterable[Vec]) -> Vec:
    """Sum of a_i x_i"""
    pairs: List[Tuple[int, Fraction]] = []
    for a, x in zip(coeffs, vectors):
        a = Fraction(a)
        pairs.extend((p, a * v) for p, v in x.items())
    return Vec(pairs)


class SpaceKind(Enum):
    MIXED_T = 'MixedT'
    XIW = 'Xiw'
    XIW_TILDE = 'XiwTilde'
    XIW_P = 'XiwP'
    AUX = 'Aux'
    AUX_TILDE = 'AuxTilde'
    AUX_P = 'AuxP'
    L1 = 'L1'
    LP = 'Lp'
    C0 = 'C0'
    L1J = 'L1J'


TREE_KINDS = {
    SpaceKind.MIXED_T, SpaceKind.XIW, SpaceKind.XIW_TILDE, SpaceKind.XIW_P,
    SpaceKind.AUX, SpaceKind.AUX_TILDE, SpaceKind.AUX_P,
}
VFG_KINDS = {SpaceKind.XIW, SpaceKind.XIW_TILDE, SpaceKind.XIW_P}
AUX_KINDS = {SpaceKind.AUX, SpaceKind.AUX_TILDE, SpaceKind.AUX_P}
TILDE_KINDS = {SpaceKind.XIW_TILDE, SpaceKind.AUX_TILDE}
P_KINDS = {SpaceKind.XIW_P, SpaceKind.AUX_P, SpaceKind.LP}


@dataclass(frozen=True)
class SpaceSpec:
    """A norming set together with its schedule and parameters"""

    kind: SpaceKind
    schedule: Schedule
    p: Optional[Fraction] = None
    N: Optional[int] = None
    j: Optional[int] = None

    def __post_init__(self):
        if self.kind in P_KINDS:
            if self.p is None or Fraction(self.p) <= 1:
                raise ValueError(f"{self.kind.value} needs p > 1, got {self.p}")
            object.__setattr__(self, 'p', Fraction(self.p))
        elif self.p is not None:
            raise ValueError(f"{self.kind.value} takes no exponent p")
        if self.kind in AUX_KINDS:
            if self.N is None or int(self.N) < 1:
                raise ValueError(f"{self.kind.value} needs a positive N, got {self.N}")
            object.__setattr__(self, 'N', int(self.N))
        if self.kind == SpaceKind.L1J:
            if self.j is None or not 1 <= int(self.j) < self.schedule.horizon:
                raise ValueError(
                    f"L1J needs 1 <= j < horizon {self.schedule.horizon}, got {self.j}"
                )
            object.__setattr__(self, 'j', int(self.j))

    @property
    def has_tree(self) -> bool:
        return self.kind in TREE_KINDS

    @property
    def single_level(self) -> bool:
        return self.kind in TILDE_KINDS

    @property
    def uses_coeffs(self) -> bool:
        return self.kind in (SpaceKind.XIW_P, SpaceKind.AUX_P)

    @property
    def very_fast_growing(self) -> bool:
        return self.kind in VFG_KINDS

    @property
    def auxiliary(self) -> bool:
        return self.kind in AUX_KINDS

    def family(self, vw: Tuple[int, ...]) -> Family:
        """Admissibility family of a node with vector weight vw"""
        base = Schreier(self.schedule.index_sum(vw))
        if self.auxiliary:
            return Star(base, Cardinality(3))
        return base

    def family_for_index(self, index_sum: int) -> Family:
        base = Schreier(index_sum)
        return Star(base, Cardinality(3)) if self.auxiliary else base

    def gate_after(self, previous_max: int) -> int:
        """Weight a non-first child must exceed"""
        if self.very_fast_growing:
            return previous_max
        if self.auxiliary:
            return self.N
        return 0

    def label(self) -> str:
        extra = []
        if self.p is not None:
            extra.append(f"p={q_str(self.p)}")
        if self.N is not None:
            extra.append(f"N={self.N}")
        if self.j is not None:
            extra.append(f"j={self.j}")
        return f"{self.kind.value}({', '.join(extra)})" if extra else self.kind.value

    def to_dict(self) -> Dict:
        out: Dict = {'kind': self.kind.value, 'schedule': self.schedule.to_dict()}
        if self.p is not None:
            out['p'] = q_str(self.p)
        if self.N is not None:
            out['N'] = self.N
        if self.j is not None:
            out['j'] = self.j
        return out


@dataclass
class SearchStats:
    expansions: int = 0
    memo_hits: int = 0

    def to_dict(self) -> Dict:
        return {'expansions': self.expansions, 'memo_hits': self.memo_hits}


@dataclass
class NormResult:
    """Norm value, optimal witness and search statistics"""

    value: Union[Fraction, Interval]
    witness: Optional[object] = None
    stats: SearchStats = field(default_factory=SearchStats)
    exact: bool = True

    @property
    def lower(self) -> Fraction:
        return self.value.lo if isinstance(self.value, Interval) else self.value

    @property
    def upper(self) -> Fraction:
        return self.value.hi if isinstance(self.value, Interval) else self.value

    def to_dict(self) -> Dict:
        from .functional import serialize
        value = self.value.to_dict() if isinstance(self.value, Interval) else q_str(self.value)
        return {
            'value': value,
            'exact': self.exact,
            'witness': serialize(self.witness) if self.witness is not None else None,
            'stats': self.stats.to_dict(),
        }


@dataclass
class SccCert:
    """A verified (n, eps) basic special convex combination"""

    x: Vec
    n: int
    eps: Fraction
    worst: Tuple[Fraction, FinSet]
    star_mass: Optional[Fraction] = None
    attempts: int = 1

    def to_dict(self) -> Dict:
        return {
            'x': self.x.to_dict(),
            'n': self.n,
            'eps': q_str(self.eps),
            'worst': {'value': q_str(self.worst[0]), 'set': list(self.worst[1])},
            'star_mass': q_str(self.star_mass) if self.star_mass is not None else None,
            'attempts': self.attempts,
        }


@dataclass
class SccViolation:
    condition: str
    message: str

    def __str__(self) -> str:
        return f"[{self.condition}] {self.message}"

    def to_dict(self) -> Dict:
        return {'condition': self.condition, 'message': self.message}


@dataclass
class WeightCheck:
    """RIS condition (iii) at one weight, or for all weights at once"""

    weight: Optional[int]
    value: Fraction
    bound: Fraction
    method: str
    witness: Optional[object] = None

    @property
    def ok(self) -> bool:
        return self.value <= self.bound

    def to_dict(self) -> Dict:
        from .functional import serialize
        return {
            'weight': self.weight,
            'value': q_str(self.value),
            'bound': q_str(self.bound),
            'method': self.method,
            'ok': self.ok,
            'witness': serialize(self.witness) if self.witness is not None else None,
        }


@dataclass
class RisCert:
    xs: List[Vec]
    C: Fraction
    js: List[int]
    recipe_index: List[int]
    realised_index: List[int]
    eps: List[Fraction]
    delta: Fraction
    realised_eps: List[Fraction] = field(default_factory=list)
    norms: List[Fraction] = field(default_factory=list)
    norm_witnesses: List[object] = field(default_factory=list)
    gaps: List[Tuple[int, int]] = field(default_factory=list)
    weight_checks: List[List[WeightCheck]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        if any(v > self.C for v in self.norms):
            return False
        if any(prev * prev >= m for prev, m in self.gaps):
            return False
        return all(c.ok for checks in self.weight_checks for c in checks)

    def to_dict(self) -> Dict:
        from .functional import serialize
        return {
            'xs': [x.to_dict() for x in self.xs],
            'C': q_str(self.C),
            'js': list(self.js),
            'recipe_index': list(self.recipe_index),
            'realised_index': list(self.realised_index),
            'eps': [q_str(e) for e in self.eps],
            'realised_eps': [q_str(e) for e in self.realised_eps],
            'delta': q_str(self.delta),
            'norms': [q_str(v) for v in self.norms],
            'norm_witnesses': [serialize(f) for f in self.norm_witnesses],
            'gaps': [list(g) for g in self.gaps],
            'weight_checks': [[c.to_dict() for c in checks] for checks in self.weight_checks],
            'ok': self.ok,
        }


@dataclass(frozen=True)
class Plegma:
    rows: Tuple[Tuple[int, ...], ...]

    @property
    def strict(self) -> bool:
        seen = set()
        for row in self.rows:
            for s in row:
                if s in seen:
                    return False
                seen.add(s)
        return True

    def to_dict(self) -> Dict:
        return {'rows': [list(r) for r in self.rows], 'strict': self.strict}


@dataclass
class ArrayCert:
    k: int
    l: int
    levels: List[int]
    eps: Fraction
    N: int
    vectors: List[List[Vec]]
    row_witnesses: List[object]
    plegma: Plegma
    recipe_index: List[int] = field(default_factory=list)
    realised_index: List[int] = field(default_factory=list)
    coefficients: List[List[Fraction]] = field(default_factory=list)
    lower: Optional[Fraction] = None
    lower_witness: Optional[object] = None
    upper: Optional[Fraction] = None
    ratio: Optional[Fraction] = None

    @property
    def full_index(self) -> bool:
        """Every row realised at its index n_t - 1"""
        return bool(self.realised_index) and self.realised_index == self.recipe_index

    def to_dict(self) -> Dict:
        from .functional import serialize
        return {
            'k': self.k,
            'l': self.l,
            'levels': list(self.levels),
            'eps': q_str(self.eps),
            'N': self.N,
            'vectors': [[x.to_dict() for x in row] for row in self.vectors],
            'row_witnesses': [serialize(f) for f in self.row_witnesses],
            'plegma': self.plegma.to_dict(),
            'recipe_index': list(self.recipe_index),
            'realised_index': list(self.realised_index),
            'full_index': self.full_index,
            'coefficients': [[q_str(a) for a in row] for row in self.coefficients],
            'lower': q_str(self.lower) if self.lower is not None else None,
            'lower_witness': serialize(self.lower_witness) if self.lower_witness is not None else None,
            'upper': q_str(self.upper) if self.upper is not None else None,
            'ratio': q_str(self.ratio) if self.ratio is not None else None,
        }


@dataclass
class TildeCert:
    j0: int
    xs: List[Vec]
    eps: List[Fraction]
    witnesses: List[object]

    def to_dict(self) -> Dict:
        from .functional import serialize
        return {
            'j0': self.j0,
            'xs': [x.to_dict() for x in self.xs],
            'eps': [q_str(e) for e in self.eps],
            'witnesses': [serialize(f) for f in self.witnesses],
        }


@dataclass
class DualResult:
    value: Fraction
    x: Vec
    cuts: List[object]
    rounds: int = 0

    def to_dict(self) -> Dict:
        from .functional import serialize
        return {
            'value': q_str(self.value),
            'x': self.x.to_dict(),
            'cuts': [serialize(f) for f in self.cuts],
            'rounds': self.rounds,
        }
