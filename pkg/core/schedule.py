"""Weight and Schreier-index schedules (m_j), (n_j)

The growth conditions checked here:
- (i)   C^{n_j}/m_j -> infinity, not finitely checkable; only the surrogate
        n_{j+1} > n_j log2(m_{j+1}^2) is evaluated, as a warning
- (ii)  m_j/m_{j+1} -> 0, checked as a strictly decreasing ratio
- (iii) n_{j+1} > n_{j_1} + ... + n_{j_l} + 1 whenever the levels are <= j
        and m_{j_1} ... m_{j_l} < m_{j+1}^2, checked with a knapsack
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from config.defaults import MAX_SCHEDULE_BITS
from .errors import HorizonExceeded, HorizonOverflow, LevelOutOfHorizon

logger = logging.getLogger(__name__)

VectorWeight = Tuple[int, ...]


@dataclass(frozen=True)
class Schedule:
    """Finite-horizon parameter pair; levels are 1-based"""

    m: Tuple[int, ...]
    n: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'm', tuple(int(v) for v in self.m))
        object.__setattr__(self, 'n', tuple(int(v) for v in self.n))

    @property
    def horizon(self) -> int:
        return len(self.m)

    def m_at(self, j: int) -> int:
        if not 1 <= j <= self.horizon:
            raise LevelOutOfHorizon(j, self.horizon)
        return self.m[j - 1]

    def n_at(self, j: int) -> int:
        if not 1 <= j <= self.horizon:
            raise LevelOutOfHorizon(j, self.horizon)
        return self.n[j - 1]

    def weight(self, vw: Sequence[int]) -> int:
        """Product of m_j over a vector weight"""
        out = 1
        for j in vw:
            out *= self.m_at(j)
        return out

    def index_sum(self, vw: Sequence[int]) -> int:
        return sum(self.n_at(j) for j in vw)

    def to_dict(self) -> Dict:
        return {'m': [str(v) for v in self.m], 'n': [str(v) for v in self.n]}


@dataclass
class Violation:
    """One failed schedule condition"""

    condition: str
    level: int
    message: str

    def __str__(self) -> str:
        return f"[{self.condition}] level {self.level}: {self.message}"

    def to_dict(self) -> Dict:
        return {'condition': self.condition, 'level': self.level, 'message': self.message}


@dataclass
class ScheduleReport:
    violations: List[Violation] = field(default_factory=list)
    warnings: List[Violation] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> Dict:
        return {
            'ok': self.ok,
            'violations': [v.to_dict() for v in self.violations],
            'warnings': [v.to_dict() for v in self.warnings],
            'notes': list(self.notes),
        }


def _knapsack(ms: Sequence[int], ns: Sequence[int], bound: int) -> int:
    """Max sum of n over multisets of levels whose m-product is < bound"""
    memo: Dict[Tuple[int, int], int] = {}

    def best(b: int, level: int) -> int:
        if level == 0:
            return 0
        key = (b, level)
        if key in memo:
            return memo[key]
        m, n = ms[level - 1], ns[level - 1]
        result = best(b, level - 1)
        copies, power = 1, m
        while power < b:
            # p * m**c < b  <=>  p < ceil(b / m**c)
            result = max(result, copies * n + best(-(-b // power), level - 1))
            copies += 1
            power *= m
        memo[key] = result
        return result

    if bound <= 1:
        return 0
    return best(bound, len(ms))


def max_condition_sum(s: Schedule, j: int) -> int:
    """Largest n-sum allowed below m_{j+1}^2 using levels <= j"""
    if not 1 <= j < s.horizon:
        raise LevelOutOfHorizon(j + 1, s.horizon, f"condition (iii) at level {j} needs m_{j + 1}")
    return _knapsack(s.m[:j], s.n[:j], s.m[j] ** 2)


def default_schedule(J: int, max_bits: int = MAX_SCHEDULE_BITS) -> Schedule:
    """m_j = 2^(2^(j-1)) with the smallest n_j satisfying (iii) strictly"""
    if J < 1:
        raise ValueError(f"horizon must be positive, got {J}")
    if 2 ** J > max_bits:
        raise HorizonOverflow(f"m_{J + 1}^2 needs 2^{J} bits, limit is {max_bits}")
    m = [2 ** (2 ** (j - 1)) for j in range(1, J + 1)]
    n = [1]
    for j in range(1, J):
        n.append(_knapsack(m[:j], n, m[j] ** 2) + 2)
    logger.debug("default schedule J=%d: n=%s", J, n)
    return Schedule(tuple(m), tuple(n))


def _log2(value: int) -> float:
    if value & (value - 1) == 0:
        return float(value.bit_length() - 1)
    return math.log2(value)


def validate(s: Schedule) -> ScheduleReport:
    """Check every finitely checkable growth condition"""
    report = ScheduleReport()
    errors = report.violations
    if len(s.m) != len(s.n):
        errors.append(Violation('shape', 0, f"{len(s.m)} weights but {len(s.n)} indices"))
        return report
    if not s.m:
        errors.append(Violation('shape', 0, "empty schedule"))
        return report
    if s.m[0] != 2:
        errors.append(Violation('m1', 1, f"m_1 must be 2, got {s.m[0]}"))
    if s.n[0] != 1:
        errors.append(Violation('n1', 1, f"n_1 must be 1, got {s.n[0]}"))
    for j in range(1, s.horizon):
        if s.m[j] <= s.m[j - 1]:
            errors.append(Violation('m-increasing', j + 1, f"m_{j + 1}={s.m[j]} <= m_{j}={s.m[j - 1]}"))
        if s.n[j] <= s.n[j - 1]:
            errors.append(Violation('n-increasing', j + 1, f"n_{j + 1}={s.n[j]} <= n_{j}={s.n[j - 1]}"))
    if errors:
        return report

    for j in range(1, s.horizon):
        needed = max_condition_sum(s, j) + 1
        if s.n[j] <= needed:
            errors.append(Violation(
                'iii', j + 1,
                f"n_{j + 1}={s.n[j]} must exceed {needed} (knapsack below m_{j + 1}^2)"
            ))
    for j in range(1, s.horizon - 1):
        # m_{j+1}/m_{j+2} < m_j/m_{j+1}
        if s.m[j] ** 2 >= s.m[j - 1] * s.m[j + 1]:
            errors.append(Violation(
                'ii', j + 1, f"ratio m_{j + 1}/m_{j + 2} does not drop below m_{j}/m_{j + 1}"
            ))

    report.notes.append("condition (i) is a limit statement and not finitely checkable")
    for j in range(1, s.horizon):
        bound = s.n[j - 1] * _log2(s.m[j] ** 2)
        if s.n[j] <= bound:
            report.warnings.append(Violation(
                'i-surrogate', j + 1,
                f"n_{j + 1}={s.n[j]} <= n_{j} log2(m_{j + 1}^2) = {bound:g}"
            ))
    for w in report.warnings:
        logger.warning("schedule: %s", w)
    return report


def weight_table(s: Schedule, cap: int, single_level: bool = False) -> Dict[int, Tuple[int, VectorWeight]]:
    """Every achievable weight below cap with its best vector weight

    Maps w to (largest Schreier-index sum, vector weight attaining it).
    Levels beyond the horizon could produce weights below cap once
    cap > m_J + 1, so that case raises.
    """
    top = s.m[-1]
    if cap > top + 1:
        raise LevelOutOfHorizon(
            s.horizon + 1, s.horizon,
            f"weights up to {cap} may involve levels beyond the horizon (m_{s.horizon}={top})"
        )
    table: Dict[int, Tuple[int, VectorWeight]] = {}
    if single_level:
        for j in range(1, s.horizon + 1):
            if s.m[j - 1] < cap:
                table[s.m[j - 1]] = (s.n[j - 1], (j,))
        return table

    def visit(first: int, product: int, total: int, vw: VectorWeight):
        for j in range(first, s.horizon + 1):
            w = product * s.m[j - 1]
            if w >= cap:
                break
            cand = (total + s.n[j - 1], vw + (j,))
            if w not in table or cand[0] > table[w][0]:
                table[w] = cand
            visit(j, w, cand[0], cand[1])

    visit(1, 1, 0, ())
    return table


def level_for_gap(s: Schedule, bound: int, after: int = 0) -> int:
    """Smallest level j > after with bound < sqrt(m_j)"""
    for j in range(after + 1, s.horizon + 1):
        if bound * bound < s.m[j - 1]:
            return j
    raise HorizonExceeded(
        f"no level above {after} within horizon {s.horizon} has sqrt(m_j) > {bound}"
    )
