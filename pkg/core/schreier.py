"""Schreier families, cardinality families and their star products

Every family is regular (hereditary, spreading, compact) and is decided by
a streaming automaton over the increasing enumeration of a set:

- Schreier(0) accepts at most one element
- Schreier(1) keeps (min, count) and accepts while count <= min
- Schreier(n) for n >= 2 is Star(Schreier(1), Schreier(n - 1))
- Star(L, R) keeps the L-state of the piece minima and the R-state of the
  current piece; a new element is absorbed into the current piece when R
  accepts it, otherwise it opens a new piece, which L must accept

Greedy absorption gives the leftmost-maximal decomposition, whose piece
minima sit pointwise to the right of those of any other decomposition and
are never more numerous, so heredity plus spreading make it exact.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Hashable, Iterable, Optional, Sequence, Tuple, Union

from .errors import GroundTooShort

FinSet = Tuple[int, ...]

_EMPTY = None


def ceil_log2(size: int) -> int:
    """Smallest k with 2**k >= size (size >= 1)"""
    return (size - 1).bit_length()


def as_finset(elems: Iterable[int]) -> FinSet:
    """Validate and freeze a strictly increasing list of positions"""
    out = tuple(int(e) for e in elems)
    for a, b in zip(out, out[1:]):
        if b <= a:
            raise ValueError(f"positions must be strictly increasing: {list(out)}")
    if out and out[0] < 1:
        raise ValueError(f"positions start at 1, got {out[0]}")
    return out


@dataclass(frozen=True)
class Schreier:
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"Schreier index must be nonnegative, got {self.n}")

    def clamped(self, size: int) -> 'Schreier':
        if size <= 1 or self.n <= 1:
            return self
        return Schreier(min(self.n, 1 + ceil_log2(size)))

    def __str__(self) -> str:
        return f"S({self.n})"


@dataclass(frozen=True)
class Cardinality:
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"cardinality bound must be nonnegative, got {self.n}")

    def clamped(self, size: int) -> 'Cardinality':
        return Cardinality(min(self.n, max(size, 1)))

    def __str__(self) -> str:
        return f"A({self.n})"


@dataclass(frozen=True)
class Star:
    left: 'Family'
    right: 'Family'

    def clamped(self, size: int) -> 'Star':
        return Star(self.left.clamped(size), self.right.clamped(size))

    def __str__(self) -> str:
        return f"{self.left}*{self.right}"


Family = Union[Schreier, Cardinality, Star]

_S1 = Schreier(1)


@lru_cache(maxsize=None)
def _star_parts(fam: Family) -> Optional[Tuple[Family, Family]]:
    if isinstance(fam, Star):
        return fam.left, fam.right
    if isinstance(fam, Schreier) and fam.n >= 2:
        return _S1, Schreier(fam.n - 1)
    return None


def start(fam: Family) -> Hashable:
    """Automaton state of the empty set"""
    return _EMPTY


def push(fam: Family, state: Hashable, p: int) -> Optional[Hashable]:
    """Extend the set by a position larger than all previous ones

    Returns the new state, or None when the extended set leaves the family.
    """
    if isinstance(fam, Cardinality):
        count = 0 if state is _EMPTY else state
        return count + 1 if count + 1 <= fam.n else None
    if isinstance(fam, Schreier):
        if fam.n == 0:
            return 1 if state is _EMPTY else None
        if fam.n == 1:
            if state is _EMPTY:
                return (p, 1)
            low, count = state
            return (low, count + 1) if count + 1 <= low else None
    left, right = _star_parts(fam)
    if state is not _EMPTY:
        outer, inner = state
        absorbed = push(right, inner, p)
        if absorbed is not None:
            return (outer, absorbed)
    else:
        outer = _EMPTY
    outer = push(left, outer, p)
    if outer is None:
        return None
    inner = push(right, _EMPTY, p)
    if inner is None:
        return None
    return (outer, inner)


def run(fam: Family, elems: Sequence[int]) -> Optional[Hashable]:
    state = start(fam)
    for p in elems:
        state = push(fam, state, p)
        if state is None:
            return None
    return state


@lru_cache(maxsize=65536)
def _member(F: FinSet, fam: Family) -> bool:
    return run(fam.clamped(len(F)), F) is not None


def s_member(F: Sequence[int], n: int) -> bool:
    """Is F in the Schreier family S_n"""
    F = as_finset(F)
    if n < 0:
        raise ValueError(f"Schreier index must be nonnegative, got {n}")
    if not F:
        return True
    if n == 0:
        return len(F) == 1
    if F[0] == 1:
        return len(F) == 1
    if F[0] >= 2 and n >= 1 + ceil_log2(len(F)):
        return True
    return _member(F, Schreier(n))


def family_member(F: Sequence[int], fam: Family) -> bool:
    F = as_finset(F)
    if not F:
        return True
    if isinstance(fam, Schreier):
        return s_member(F, fam.n)
    if isinstance(fam, Cardinality):
        return len(F) <= fam.n
    return _member(F, fam)


def is_admissible(min_supports: Sequence[int], fam: Family) -> bool:
    """Block sequence admissibility, given the minima of the supports"""
    return family_member(min_supports, fam)


def min_pieces(F: Sequence[int], n: int) -> int:
    """Fewest consecutive S_n pieces covering F (greedy leftmost-maximal)"""
    F = as_finset(F)
    if not F:
        raise ValueError("min_pieces needs a nonempty set")
    fam = Schreier(n).clamped(len(F))
    pieces = 1
    state = start(fam)
    for p in F:
        nxt = push(fam, state, p)
        if nxt is None:
            pieces += 1
            nxt = push(fam, start(fam), p)
        state = nxt
    return pieces


def maximal_set(ground: Sequence[int], n: int) -> FinSet:
    """Longest prefix of ground lying in S_n, provided the next element breaks it"""
    ground = as_finset(ground)
    if not ground:
        raise GroundTooShort("empty ground set")
    fam = Schreier(n).clamped(len(ground))
    state = start(fam)
    for idx, p in enumerate(ground):
        state = push(fam, state, p)
        if state is None:
            return ground[:idx]
    raise GroundTooShort(
        f"ground of {len(ground)} elements from {ground[0]} holds no maximal S_{n} set"
    )


def capacity(min_pos: int, fam: Family, cap: int) -> int:
    """Size of the maximal member made of consecutive integers from min_pos

    Stops counting at cap. By spreading, every set with min >= min_pos and
    at most this many elements is a member.
    """
    return _capacity(min_pos, fam.clamped(cap), cap)


@lru_cache(maxsize=65536)
def _capacity(min_pos: int, fam: Family, cap: int) -> int:
    state = start(fam)
    for size in range(cap):
        state = push(fam, state, min_pos + size)
        if state is None:
            return size
    return cap


def max_weight_subset(c: Dict[int, Fraction], fam: Family) -> Tuple[Fraction, FinSet]:
    """Maximum of sum(c[i] for i in G) over G in fam, G inside supp(c)

    Exact dynamic programme over (position index, automaton state). On ties
    the earlier element is included, which returns the lexicographically
    smallest maximiser.
    """
    items = sorted((p, Fraction(v)) for p, v in c.items() if v != 0)
    for p, v in items:
        if v < 0:
            raise ValueError(f"weights must be nonnegative, got {v} at {p}")
    positions = [p for p, _ in items]
    values = [v for _, v in items]
    fam = fam.clamped(max(len(items), 1))
    memo: Dict[Tuple[int, Hashable], Tuple[Fraction, bool]] = {}

    def best(i: int, state: Hashable) -> Fraction:
        if i == len(items):
            return Fraction(0)
        key = (i, state)
        hit = memo.get(key)
        if hit is not None:
            return hit[0]
        skip = best(i + 1, state)
        value, take = skip, False
        nxt = push(fam, state, positions[i])
        if nxt is not None:
            gain = values[i] + best(i + 1, nxt)
            if gain >= skip:
                value, take = gain, True
        memo[key] = (value, take)
        return value

    total = best(0, start(fam))
    chosen = []
    state = start(fam)
    for i in range(len(items)):
        if memo[(i, state)][1]:
            chosen.append(positions[i])
            state = push(fam, state, positions[i])
    return total, tuple(chosen)
