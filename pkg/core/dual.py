"""Dual norms by cutting planes with the norm engine as separation oracle"""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Union

from config.defaults import CUT_LIMIT, SEARCH_BUDGET
from .engine import NormEngine
from .errors import ConstructionFailed, InvalidWitness
from .functional import Functional, Leaf, coordinates, validate
from .models import DualResult, SpaceKind, SpaceSpec, Vec, q_str
from .schreier import Schreier, is_admissible
from .simplex import maximize

logger = logging.getLogger(__name__)


def dual_norm(g: Vec, space: SpaceSpec, cut_limit: int = CUT_LIMIT,
              budget: int = SEARCH_BUDGET) -> DualResult:
    """sup g(x) over the unit ball, computed on supp(g) with x >= 0"""
    if space.uses_coeffs or space.kind in (SpaceKind.LP, SpaceKind.AUX_P):
        raise ValueError(f"dual norms are not available for {space.label()}")
    if not (space.has_tree or space.kind == SpaceKind.C0):
        raise ValueError(f"{space.label()} has no witness functionals to cut with")
    ag = g.abs()
    if not ag:
        return DualResult(Fraction(0), Vec(), [])
    positions = ag.support()
    objective = [ag[p] for p in positions]
    engine = NormEngine(space, budget)
    cuts: List[Functional] = [Leaf(p) for p in positions]
    rows = [[Fraction(1) if q == p else Fraction(0) for q in positions] for p in positions]

    for rounds in range(1, cut_limit + 1):
        solution = maximize(objective, rows, [1] * len(rows))
        x = Vec({p: v for p, v in zip(positions, solution.x)})
        result = engine.norm(x)
        if result.value <= 1:
            signed = Vec({p: v if g[p] > 0 else -v for p, v in x.items()})
            logger.debug("dual norm %s: %s after %d rounds, %d cuts",
                         space.label(), solution.value, rounds, len(cuts))
            return DualResult(solution.value, signed, cuts, rounds)
        cut = result.witness
        coords = coordinates(cut, space.schedule)
        cuts.append(cut)
        rows.append([coords[p] for p in positions])
    raise ConstructionFailed(f"dual norm did not converge within {cut_limit} cuts")


@dataclass
class DualCheckRow:
    members: List[int]
    value: Fraction
    bound: Fraction

    @property
    def ok(self) -> bool:
        return self.value <= self.bound

    def to_dict(self) -> Dict:
        return {'members': list(self.members), 'value': q_str(self.value),
                'bound': q_str(self.bound), 'ok': self.ok}


@dataclass
class DualCheckReport:
    j0: int
    bound: Fraction
    rows: List[DualCheckRow] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)

    @property
    def worst_ratio(self) -> Fraction:
        scale = self.bound - 1
        return max((r.value / scale for r in self.rows), default=Fraction(0))

    def to_dict(self) -> Dict:
        return {'j0': self.j0, 'bound': q_str(self.bound), 'ok': self.ok,
                'worst_ratio': q_str(self.worst_ratio), 'evidence_only': True,
                'rows': [r.to_dict() for r in self.rows]}


def dual_c0_check(fs: Sequence[Union[Functional, Vec]], j0: int, space: SpaceSpec) -> DualCheckReport:
    """Dual norms of sum_{k in F} f_k over every admissible F, against 2 m_j0 + 1

    Evidence only: the asymptotic bound needs subsequences, which are not extracted.
    Functionals must lie in the norming set of space and vectors in its dual
    unit ball; anything else raises InvalidWitness or ValueError.
    """
    s = space.schedule
    for i, f in enumerate(fs):
        if isinstance(f, Vec):
            value = dual_norm(f, space).value
            if value > 1:
                raise ValueError(f"fs[{i}] has dual norm {q_str(value)} > 1")
            continue
        problems = validate(f, space)
        if problems:
            raise InvalidWitness(problems)
    vectors = [f if isinstance(f, Vec) else coordinates(f, s) for f in fs]
    for a, b in zip(vectors, vectors[1:]):
        if a.max_supp >= b.min_supp:
            raise ValueError("dual_c0_check needs successive functionals")
    bound = 2 * s.m_at(j0) + Fraction(1)
    report = DualCheckReport(j0, bound)
    family = Schreier(s.n_at(j0))
    for size in range(1, len(vectors) + 1):
        for members in itertools.combinations(range(len(vectors)), size):
            mins = [vectors[k].min_supp for k in members]
            if not is_admissible(mins, family):
                continue
            total = Vec()
            for k in members:
                total = total + vectors[k]
            value = dual_norm(total, space).value
            report.rows.append(DualCheckRow(list(members), value, bound))
    logger.info("dual c0 check j0=%d: %d admissible sums, worst ratio %s",
                j0, len(report.rows), report.worst_ratio)
    return report
