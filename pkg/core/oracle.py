"""Brute-force references for the Schreier automata, the norm engine and the dual engine

Nothing here shares code with the fast paths beyond the data types:
membership follows the inductive definition over consecutive partitions,
maxima enumerate subsets, and norms enumerate every functional tree up to
a nesting depth equal to the support size.
"""

import itertools
import logging
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .functional import Functional, Leaf, Node
from .models import SpaceSpec, Vec
from .schedule import Schedule
from .schreier import Cardinality, Family, FinSet, Schreier
from .simplex import maximize

logger = logging.getLogger(__name__)


def consecutive_partitions(F: FinSet) -> Iterator[Tuple[FinSet, ...]]:
    """Every split of F into nonempty consecutive pieces"""
    if not F:
        yield ()
        return
    for cut in range(1, len(F) + 1):
        for rest in consecutive_partitions(F[cut:]):
            yield (F[:cut],) + rest


@lru_cache(maxsize=None)
def brute_s_member(F: FinSet, n: int) -> bool:
    """S_0 holds sets of size <= 1; S_n unions at most min(E_1) successive S_{n-1} sets"""
    if len(F) <= 1:
        return True
    if n == 0:
        return False
    for parts in consecutive_partitions(F):
        if len(parts) <= parts[0][0] and all(brute_s_member(E, n - 1) for E in parts):
            return True
    return False


def brute_member(F: FinSet, fam: Family) -> bool:
    F = tuple(F)
    if isinstance(fam, Schreier):
        return brute_s_member(F, fam.n)
    if isinstance(fam, Cardinality):
        return len(F) <= fam.n
    if not F:
        return True
    for parts in consecutive_partitions(F):
        mins = tuple(E[0] for E in parts)
        if brute_member(mins, fam.left) and all(brute_member(E, fam.right) for E in parts):
            return True
    return False


def brute_min_pieces(F: FinSet, n: int) -> int:
    best: Optional[int] = None
    for parts in consecutive_partitions(tuple(F)):
        if all(brute_s_member(E, n) for E in parts):
            best = len(parts) if best is None else min(best, len(parts))
    return best


def brute_max_weight(c: Dict[int, Fraction], fam: Family) -> Tuple[Fraction, FinSet]:
    positions = sorted(p for p, v in c.items() if v)
    best, arg = Fraction(0), ()
    for size in range(1, len(positions) + 1):
        for G in itertools.combinations(positions, size):
            if brute_member(G, fam):
                total = sum((Fraction(c[p]) for p in G), Fraction(0))
                if total > best:
                    best, arg = total, G
    return best, arg


def vector_weights(schedule: Schedule, cap: int, single_level: bool = False) -> List[Tuple[int, Tuple[int, ...]]]:
    """All (weight, vector weight) pairs with weight below cap, every ordering collapsed"""
    out = []

    def visit(first: int, product: int, vw: Tuple[int, ...]):
        for j in range(first, schedule.horizon + 1):
            w = product * schedule.m[j - 1]
            if w >= cap:
                continue
            out.append((w, vw + (j,)))
            if not single_level:
                visit(j, w, vw + (j,))

    visit(1, 1, ())
    return sorted(out)


_Item = Tuple[Fraction, int, int, float, Functional]


class FunctionalEnumerator:
    """Depth-bounded enumeration of functionals supported on a fixed set"""

    def __init__(self, space: SpaceSpec, positions: Sequence[int], weight_cap: int):
        self.space = space
        self.positions = tuple(positions)
        self.weights = vector_weights(space.schedule, weight_cap, space.single_level)

    def _sequences(self, pool: List[Tuple], start: int) -> Iterator[List[Tuple]]:
        """Successive child sequences from pool, children ordered by support"""
        for k, item in enumerate(pool):
            if item[1] < start:
                continue
            yield [item]
            for tail in self._sequences(pool, item[2] + 1):
                yield [item] + tail

    def _admits(self, seq: List[Tuple], w: int, vw: Tuple[int, ...]) -> bool:
        mins = tuple(item[1] for item in seq)
        if not brute_member(mins, self.space.family(vw)):
            return False
        for prev, cur in zip(seq, seq[1:]):
            if self.space.very_fast_growing and not cur[3] > prev[2]:
                return False
            if self.space.auxiliary and not cur[3] > self.space.N:
                return False
        return True

    def layers(self, leaf_items: List[Tuple], combine, key) -> List[Tuple]:
        """Close the leaves under node formation, one nesting level per round"""
        pool = list(leaf_items)
        for _ in range(len(self.positions)):
            fresh: Dict = {}
            for seq in self._sequences(pool, 0):
                for w, vw in self.weights:
                    if self._admits(seq, w, vw):
                        item = combine(seq, w, vw)
                        k = key(item)
                        if k not in fresh or fresh[k][0] < item[0]:
                            fresh[k] = item
            merged = {key(it): it for it in pool}
            changed = False
            for k, item in fresh.items():
                if k not in merged or merged[k][0] < item[0]:
                    merged[k] = item
                    changed = True
            pool = sorted(merged.values(), key=lambda it: (it[1], it[2], it[3]))
            if not changed:
                break
        return pool


def brute_norm(x: Vec, space: SpaceSpec) -> Tuple[Fraction, Functional]:
    """Supremum of f(|x|) over every valid functional on supp(x), non-p sets only"""
    ax = x.abs()
    if not ax:
        return Fraction(0), None
    positions = ax.support()
    cap = -(-ax.l1() // min(ax[p] for p in positions)) + 1
    enum = FunctionalEnumerator(space, positions, int(cap))
    leaves = [(ax[p], p, p, float('inf'), Leaf(p)) for p in positions]

    def combine(seq, w, vw):
        value = sum((item[0] for item in seq), Fraction(0)) / w
        return (value, seq[0][1], seq[-1][2], w, Node(vw, tuple(item[4] for item in seq)))

    pool = enum.layers(leaves, combine, key=lambda it: (it[1], it[2], it[3]))
    best = max(pool, key=lambda it: it[0])
    return best[0], best[4]


def brute_constrained_max(x: Vec, space: SpaceSpec, bound) -> Fraction:
    """Largest f(|x|) over node functionals whose top weight passes bound.admits"""
    ax = x.abs()
    positions = ax.support()
    cap = -(-ax.l1() // min(ax[p] for p in positions)) + 1
    enum = FunctionalEnumerator(space, positions, max(int(cap), bound.value + 1))
    leaves = [(ax[p], p, p, float('inf'), Leaf(p)) for p in positions]

    def combine(seq, w, vw):
        value = sum((item[0] for item in seq), Fraction(0)) / w
        return (value, seq[0][1], seq[-1][2], w, Node(vw, tuple(item[4] for item in seq)))

    pool = enum.layers(leaves, combine, key=lambda it: (it[1], it[2], it[3]))
    values = [it[0] for it in pool if it[3] != float("inf") and bound.admits(it[3])]
    return max(values, default=Fraction(0))


def vacuous_weight(space: SpaceSpec, positions: Sequence[int]) -> int:
    """Smallest weight above max(positions) (and N) whose family accepts every subset"""
    floor = max(max(positions), space.N or 0)
    s = space.schedule
    for w, vw in vector_weights(s, s.m[-1] + 1, space.single_level):
        if w > floor and brute_member(tuple(positions), space.family(vw)):
            return w
    raise ValueError(f"no weight within the horizon makes {space.kind.value} unconstrained on {list(positions)}")


def norming_vectors(space: SpaceSpec, positions: Sequence[int]) -> List[Vec]:
    """Coefficient vectors of the functionals that matter for dual norms on positions

    Functionals heavier than the vacuous weight are dominated coordinatewise
    by the uniform node of that weight, so the list is finite.
    """
    positions = tuple(positions)
    top = vacuous_weight(space, positions)
    enum = FunctionalEnumerator(space, positions, top + 1)
    index = {p: i for i, p in enumerate(positions)}
    leaves = []
    for p in positions:
        coords = tuple(Fraction(1) if q == p else Fraction(0) for q in positions)
        leaves.append((Fraction(1), p, p, float('inf'), coords))

    def combine(seq, w, vw):
        coords = [Fraction(0)] * len(positions)
        for item in seq:
            for i, v in enumerate(item[4]):
                coords[i] += v / w
        return (Fraction(1), seq[0][1], seq[-1][2], w, tuple(coords))

    pool = enum.layers(leaves, combine, key=lambda it: (it[1], it[2], it[3], it[4]))
    vectors = {it[4] for it in pool}
    maximal = [v for v in vectors
               if not any(u != v and all(a >= b for a, b in zip(u, v)) for u in vectors)]
    logger.debug("norming vectors on %s: %d of %d are maximal", list(positions), len(maximal), len(vectors))
    return [Vec({positions[i]: c for i, c in enumerate(v)}) for v in sorted(maximal)]


def brute_dual_norm(g: Vec, space: SpaceSpec) -> Fraction:
    """Dual norm of g from one LP over every maximal norming vector"""
    ag = g.abs()
    if not ag:
        return Fraction(0)
    positions = ag.support()
    cuts = norming_vectors(space, positions)
    A = [[f[p] for p in positions] for f in cuts]
    return maximize([ag[p] for p in positions], A, [1] * len(A)).value
