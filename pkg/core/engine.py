"""Norm engine for the weighted norming sets

The norm of x is computed on |x| restricted to its support p_0 < ... < p_{s-1}.
A node over the window a..e is scored by a dynamic programme over
(next index, admissibility automaton state, gate class), where the gate is
the weight every further child has to exceed. Nodes are only tried where
w * max(x|I) < ||x|I||_1, which bounds every useful weight by the support
size. A node whose family is unconstrained on its window takes all leaves.

The p-sets run the same programme with children aggregated as sum v^p in
certified interval arithmetic.
"""

import bisect
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Hashable, List, Optional, Tuple, Union

from config.defaults import COEFF_DENOMINATOR_BITS, INTERVAL_PREC_BITS, INTERVAL_WIDTH, SEARCH_BUDGET
from .errors import InvalidWitness, SearchBudgetExceeded
from .functional import Functional, Leaf, Node, evaluate, validate
from .intervals import Interval, floor_dyadic, pnorm, power, root
from .models import NormResult, SearchStats, SpaceKind, SpaceSpec, Vec
from .schedule import weight_table
from .schreier import Cardinality, Family, Schreier, Star, capacity, push, start

logger = logging.getLogger(__name__)

Value = Union[Fraction, Interval]


@dataclass(frozen=True)
class WeightBound:
    """Top-level weight restriction for constrained maxima: w = value or w < value"""

    relation: str
    value: int

    def __post_init__(self):
        if self.relation not in ('eq', 'lt'):
            raise ValueError(f"weight bound relation must be 'eq' or 'lt', got {self.relation!r}")

    def admits(self, w: int) -> bool:
        return w == self.value if self.relation == 'eq' else w < self.value

    def __str__(self) -> str:
        return f"w {'=' if self.relation == 'eq' else '<'} {self.value}"


def weight_equals(value: int) -> WeightBound:
    return WeightBound('eq', value)


def weight_below(value: int) -> WeightBound:
    return WeightBound('lt', value)


class _Exact:
    zero = Fraction(0)

    def __init__(self, values: List[Fraction]):
        self.values = values

    def leaf(self, i: int) -> Fraction:
        return self.values[i]

    def point(self, i: int) -> Fraction:
        return self.values[i]

    def lift(self, value: Fraction) -> Fraction:
        return value

    def node(self, agg: Fraction, w: int) -> Fraction:
        return agg / w

    @staticmethod
    def key(value: Fraction) -> Fraction:
        return value

    @staticmethod
    def join(kept: Fraction, other: Fraction) -> Fraction:
        return max(kept, other)


class _Power:
    """Aggregates sum v^p as intervals"""

    zero = Interval.point(0)

    def __init__(self, values: List[Fraction], p: Fraction, bits: int):
        self.p = p
        self.bits = bits
        self.values = values
        self.powers = [power(v, p, bits) for v in values]

    def leaf(self, i: int) -> Interval:
        return self.powers[i]

    def point(self, i: int) -> Interval:
        return Interval.point(self.values[i])

    def lift(self, value: Interval) -> Interval:
        return power(value, self.p, self.bits)

    def node(self, agg: Interval, w: int) -> Interval:
        return root(agg, self.p, self.bits).scale(Fraction(1, w))

    @staticmethod
    def key(value: Interval) -> Fraction:
        return value.lo

    @staticmethod
    def join(kept: Interval, other: Interval) -> Interval:
        return kept.hull_max(other)


def _leaf_capacity(fam: Family, state: Hashable) -> Optional[int]:
    """How many more leaves any later positions may add, when that is position-free"""
    if isinstance(fam, Cardinality):
        return fam.n - (state or 0)
    if isinstance(fam, Schreier) and fam.n == 0:
        return 1 if state is None else 0
    if state is None:
        return None
    if isinstance(fam, Schreier) and fam.n == 1:
        low, count = state
        return low - count
    if isinstance(fam, Star) and isinstance(fam.right, Cardinality):
        outer, inner = state
        left = fam.left
        if isinstance(left, Schreier) and left.n == 0:
            return fam.right.n - inner
        if isinstance(left, Schreier) and left.n == 1:
            low, pieces = outer
            return fam.right.n - inner + fam.right.n * (low - pieces)
    return None


class _Search:
    """One norm computation: tables, memos and witness reconstruction"""

    def __init__(self, x: Vec, space: SpaceSpec, budget: int, bits: int):
        self.space = space
        self.schedule = space.schedule
        self.budget = budget
        self.stats = SearchStats()
        items = x.items()
        self.P = [p for p, _ in items]
        self.V = [abs(v) for _, v in items]
        self.signs = [1 if v > 0 else -1 for _, v in items]
        s = len(items)
        self.s = s
        if space.uses_coeffs:
            self.alg = _Power(self.V, space.p, bits)
        else:
            self.alg = _Exact(self.V)

        self.pre = [Fraction(0)]
        for v in self.V:
            self.pre.append(self.pre[-1] + v)
        self.agg_pre = [self.alg.zero]
        for i in range(s):
            self.agg_pre.append(self.agg_pre[-1] + self.alg.leaf(i))

        self.mx = [[Fraction(0)] * s for _ in range(s)]
        for a in range(s):
            best = Fraction(0)
            for e in range(a, s):
                best = max(best, self.V[e])
                self.mx[a][e] = best
        self.R = [[Fraction(0)] * s for _ in range(s)]
        for length in range(2, s + 1):
            for a in range(0, s - length + 1):
                e = a + length - 1
                self.R[a][e] = max(self.R[a + 1][e], self.R[a][e - 1], self.l1(a, e) / self.mx[a][e])

        top_ratio = self.R[0][s - 1] if s else Fraction(0)
        cap = -(-top_ratio.numerator // top_ratio.denominator) if top_ratio > 1 else 1
        table = weight_table(self.schedule, cap, space.single_level) if cap > 1 else {}
        self.weights = sorted((w, vw) for w, (_, vw) in table.items())
        self.wvals = [w for w, _ in self.weights]
        self.fams = [space.family(vw) for _, vw in self.weights]

        self.k_memo: Dict[Tuple, Tuple[Value, tuple]] = {}
        self.kid_memo: Dict[Tuple, Tuple[Value, tuple]] = {}
        self.node_memo: Dict[Tuple, Optional[Tuple[Value, int]]] = {}
        self.top_memo: Dict[Tuple[int, int], List[int]] = {}

    # tables

    def l1(self, a: int, e: int) -> Fraction:
        return self.pre[e + 1] - self.pre[a]

    def window_agg(self, a: int, e: int) -> Value:
        return self.agg_pre[e + 1] - self.agg_pre[a] if isinstance(self.alg, _Exact) else \
            Interval(self.agg_pre[e + 1].lo - self.agg_pre[a].lo, self.agg_pre[e + 1].hi - self.agg_pre[a].hi)

    def gate_cls(self, gate: int) -> int:
        return bisect.bisect_right(self.wvals, gate)

    def _tick(self):
        self.stats.expansions += 1
        if self.stats.expansions > self.budget:
            i = max(range(self.s), key=lambda k: (self.V[k], -k))
            raise SearchBudgetExceeded(
                lower=self.V[i],
                witness=Leaf(self.P[i], self.signs[i]),
                upper=self.l1(0, self.s - 1),
                expansions=self.stats.expansions,
            )

    def _top_indices(self, i: int, e: int, cap: int) -> List[int]:
        key = (i, e)
        order = self.top_memo.get(key)
        if order is None:
            order = sorted(range(i, e + 1), key=lambda k: (-self.V[k], k))
            self.top_memo[key] = order
        return sorted(order[:max(cap, 0)])

    # dynamic programme

    def children_value(self, a: int, e: int, fam: Family) -> Value:
        """Best aggregate of admissible children inside the window a..e"""
        fam = fam.clamped(e - a + 1)
        key = (a, e, fam)
        hit = self.k_memo.get(key)
        if hit is not None:
            self.stats.memo_hits += 1
            return hit[0]
        count = e - a + 1
        if capacity(self.P[a], fam, count) >= count:
            result = (self.window_agg(a, e), ('all',))
        else:
            result = (self.kids(a, e, fam, start(fam), 0, True), ('dp',))
        self.k_memo[key] = result
        return result[0]

    def kids(self, i: int, e: int, fam: Family, state: Hashable, gcls: int, whole_barred: bool) -> Value:
        if i > e:
            return self.alg.zero
        key = (i, e, fam, state, gcls, whole_barred)
        hit = self.kid_memo.get(key)
        if hit is not None:
            self.stats.memo_hits += 1
            return hit[0]
        self._tick()
        alg = self.alg
        cap = _leaf_capacity(fam, state)
        if cap is not None and not self._node_possible(i, e, gcls):
            value = alg.zero
            for k in self._top_indices(i, e, cap):
                value = value + alg.leaf(k)
            self.kid_memo[key] = (value, ('top', cap))
            return value

        nxt = push(fam, state, self.P[i])
        if nxt is None:
            self.kid_memo[key] = (alg.zero, ('end',))
            return alg.zero

        after = self.gate_cls(self.space.gate_after(self.P[i]))
        best = alg.leaf(i) + self.kids(i + 1, e, fam, nxt, after, False)
        choice: tuple = ('leaf',)
        if gcls < len(self.wvals):
            wmin = self.wvals[gcls]
            for e2 in range(i + 1, e + 1):
                if whole_barred and e2 == e:
                    continue
                if wmin * self.mx[i][e2] >= self.l1(i, e2):
                    continue
                node = self.best_node(i, e2, gcls)
                if node is None:
                    continue
                after = self.gate_cls(self.space.gate_after(self.P[e2]))
                cand = alg.lift(node[0]) + self.kids(e2 + 1, e, fam, nxt, after, False)
                if alg.key(cand) > alg.key(best):
                    best, choice = alg.join(cand, best), ('node', e2, node[1])
                else:
                    best = alg.join(best, cand)
        skip = self.kids(i + 1, e, fam, state, gcls, False)
        if alg.key(skip) > alg.key(best):
            best, choice = alg.join(skip, best), ('skip',)
        else:
            best = alg.join(best, skip)
        self.kid_memo[key] = (best, choice)
        return best

    def _node_possible(self, i: int, e: int, gcls: int) -> bool:
        return gcls < len(self.wvals) and i < e and self.wvals[gcls] < self.R[i][e]

    def best_node(self, a: int, e: int, gcls: int) -> Optional[Tuple[Value, int]]:
        """Best node over the window a..e with weight in the gate class"""
        key = (a, e, gcls)
        if key in self.node_memo:
            self.stats.memo_hits += 1
            return self.node_memo[key]
        best: Optional[Tuple[Value, int]] = None
        for k in range(gcls, len(self.wvals)):
            w = self.wvals[k]
            if w * self.mx[a][e] >= self.l1(a, e):
                break
            value = self.alg.node(self.children_value(a, e, self.fams[k]), w)
            if best is None or self.alg.key(value) > self.alg.key(best[0]):
                best = (value if best is None else self.alg.join(value, best[0]), k)
            else:
                best = (self.alg.join(best[0], value), best[1])
        self.node_memo[key] = best
        return best

    # witnesses

    def leaf(self, i: int) -> Leaf:
        return Leaf(self.P[i], self.signs[i])

    def build_node(self, a: int, e: int, vw: Tuple[int, ...], fam: Family) -> Node:
        fam = fam.clamped(e - a + 1)
        self.children_value(a, e, fam)
        _, how = self.k_memo[(a, e, fam)]
        children: List[Functional] = []
        values: List[Value] = []
        if how[0] == 'all':
            for i in range(a, e + 1):
                children.append(self.leaf(i))
                values.append(self.alg.point(i))
        else:
            i, state, gcls, barred = a, start(fam), 0, True
            while i <= e:
                _, choice = self.kid_memo[(i, e, fam, state, gcls, barred)]
                barred = False
                tag = choice[0]
                if tag == 'end':
                    break
                if tag == 'top':
                    for k in self._top_indices(i, e, choice[1]):
                        children.append(self.leaf(k))
                        values.append(self.alg.point(k))
                    break
                if tag == 'skip':
                    i += 1
                    continue
                state = push(fam, state, self.P[i])
                if tag == 'leaf':
                    children.append(self.leaf(i))
                    values.append(self.alg.point(i))
                    gcls = self.gate_cls(self.space.gate_after(self.P[i]))
                    i += 1
                else:
                    _, e2, k = choice
                    children.append(self.build_node(i, e2, self.weights[k][1], self.fams[k]))
                    values.append(self.node_memo[(i, e2, gcls)][0])
                    gcls = self.gate_cls(self.space.gate_after(self.P[e2]))
                    i = e2 + 1
        coeffs = self._coefficients(values) if self.space.uses_coeffs else None
        return Node(tuple(vw), tuple(children), coeffs)

    def _coefficients(self, values: List[Interval]) -> Tuple[Fraction, ...]:
        """lambda_q ~ v_q^(p-1) / ||v||_p^(p-1), rounded down"""
        p, bits = self.alg.p, self.alg.bits
        total = Interval.point(0)
        for v in values:
            total = total + power(v, p, bits)
        if total.hi == 0:
            return tuple(Fraction(0) for _ in values)
        den = power(total.hi, (p - 1) / p, bits).hi
        out = []
        for v in values:
            if v.lo == 0:
                out.append(Fraction(0))
                continue
            num = power(v.lo, p - 1, bits).lo
            out.append(floor_dyadic(num / den, COEFF_DENOMINATOR_BITS))
        return tuple(out)


class NormEngine:
    """Norms, weight-constrained maxima and witness checks for one space"""

    def __init__(self, space: SpaceSpec, budget: int = SEARCH_BUDGET,
                 precision_bits: int = INTERVAL_PREC_BITS, width: Fraction = Fraction(INTERVAL_WIDTH)):
        self.space = space
        self.budget = budget
        self.precision_bits = precision_bits
        self.width = Fraction(width)

    def _refuse(self):
        if self.space.kind == SpaceKind.AUX_P:
            raise ValueError("AuxP is validated structurally only; it has no norm engine")

    def norm(self, x: Vec) -> NormResult:
        self._refuse()
        space = self.space
        if not x:
            zero = Interval.point(0) if space.uses_coeffs or space.kind == SpaceKind.LP else Fraction(0)
            return NormResult(zero, None, SearchStats(), not space.uses_coeffs)
        if not space.has_tree:
            return self._reference(x)

        search = _Search(x, space, self.budget, self.precision_bits)
        lead = max(range(search.s), key=lambda k: (search.V[k], -k))
        value: Value = search.alg.point(lead)
        witness: Functional = search.leaf(lead)
        node = search.best_node(0, search.s - 1, 0)
        if node is not None:
            if search.alg.key(node[0]) > search.alg.key(value):
                k = node[1]
                value = search.alg.join(node[0], value)
                witness = search.build_node(0, search.s - 1, search.weights[k][1], search.fams[k])
            else:
                value = search.alg.join(value, node[0])
        logger.debug("norm %s over %d positions: %d expansions, %d memo hits",
                     space.label(), search.s, search.stats.expansions, search.stats.memo_hits)
        return self._result(x, value, witness, search.stats)

    def _result(self, x: Vec, value: Value, witness: Optional[Functional], stats: SearchStats) -> NormResult:
        if not self.space.uses_coeffs:
            return NormResult(value, witness, stats, True)
        lower = evaluate(witness, x, self.space.schedule) if witness is not None else Fraction(0)
        return NormResult(Interval(min(lower, value.hi), value.hi), witness, stats, False)

    def _reference(self, x: Vec) -> NormResult:
        kind = self.space.kind
        if kind == SpaceKind.L1:
            return NormResult(x.l1(), None)
        if kind == SpaceKind.C0:
            pos = max(x, key=lambda p: (abs(x[p]), -p))
            return NormResult(abs(x[pos]), Leaf(pos, 1 if x[pos] > 0 else -1))
        if kind == SpaceKind.L1J:
            s, j = self.space.schedule, self.space.j
            return NormResult(max(x.sup(), Fraction(s.m_at(j), s.m_at(j + 1)) * x.l1()), None)
        if kind == SpaceKind.LP:
            return NormResult(pnorm([v for _, v in x.items()], self.space.p, self.width, self.precision_bits),
                              None, SearchStats(), False)
        raise ValueError(f"no reference norm for {kind.value}")

    def constrained_max(self, x: Vec, bound: WeightBound) -> NormResult:
        """Largest f(x) over non-leaf functionals whose top weight satisfies bound"""
        self._refuse()
        space = self.space
        if not space.has_tree:
            raise ValueError(f"{space.kind.value} has no weighted functionals")
        if not x:
            return self._result(x, Interval.point(0) if space.uses_coeffs else Fraction(0), None, SearchStats())
        cap = bound.value + 1 if bound.relation == 'eq' else bound.value
        table = weight_table(space.schedule, cap, space.single_level) if cap > 1 else {}
        candidates = sorted((w, vw) for w, (_, vw) in table.items() if bound.admits(w))

        search = _Search(x, space, self.budget, self.precision_bits)
        last = search.s - 1
        best: Optional[Value] = None
        witness: Optional[Functional] = None
        inner = search.best_node(0, last, 0)
        for w, vw in candidates:
            fam = space.family(vw)
            agg = search.children_value(0, last, fam)
            wrap = inner is not None and search.alg.key(search.alg.lift(inner[0])) > search.alg.key(agg)
            if wrap:
                agg = search.alg.join(search.alg.lift(inner[0]), agg)
            value = search.alg.node(agg, w)
            if best is None or search.alg.key(value) > search.alg.key(best):
                best = value if best is None else search.alg.join(value, best)
                if wrap:
                    k = inner[1]
                    child = search.build_node(0, last, search.weights[k][1], search.fams[k])
                    coeffs = (Fraction(1),) if space.uses_coeffs else None
                    witness = Node(tuple(vw), (child,), coeffs)
                else:
                    witness = search.build_node(0, last, vw, fam)
            else:
                best = search.alg.join(best, value)
            if capacity(search.P[0], fam, search.s) >= search.s:
                # heavier weights only divide the same aggregate further
                break
        if best is None:
            best = Interval.point(0) if space.uses_coeffs else Fraction(0)
        logger.debug("constrained max %s %s: %d expansions", space.label(), bound, search.stats.expansions)
        return self._result(x, best, witness, search.stats)

    def certify_lower(self, x: Vec, f: Functional) -> Fraction:
        violations = validate(f, self.space)
        if violations:
            raise InvalidWitness(violations)
        return evaluate(f, x, self.space.schedule)


def norm(x: Vec, space: SpaceSpec, budget: int = SEARCH_BUDGET) -> NormResult:
    return NormEngine(space, budget).norm(x)


def constrained_max(x: Vec, space: SpaceSpec, bound: WeightBound, budget: int = SEARCH_BUDGET) -> NormResult:
    return NormEngine(space, budget).constrained_max(x, bound)


def certify_lower(x: Vec, space: SpaceSpec, f: Functional) -> Fraction:
    return NormEngine(space).certify_lower(x, f)


def ell1_bound(x: Vec, w: int) -> Fraction:
    """Upper bound ||x||_1 / w for every functional of weight w"""
    return x.l1() / w
