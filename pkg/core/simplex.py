"""Exact dictionary simplex over Fractions

Solves  max c.x  subject to  A x <= b, x >= 0  in slack form. Bland's rule
picks the entering and leaving variables, so the method never cycles.
Negative right-hand sides go through the auxiliary x0 programme first.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence

from .errors import Infeasible, Unbounded

logger = logging.getLogger(__name__)


@dataclass
class LpSolution:
    value: Fraction
    x: List[Fraction]
    pivots: int


class SlackForm:
    """Basic variables expressed through the nonbasic ones

    Row i reads  x_i = b[i] - sum_j A[i][j] x_j  over nonbasic j.
    """

    def __init__(self, c: Sequence, A: Sequence[Sequence], b: Sequence):
        self.n = len(c)
        self.m = len(A)
        for r, row in enumerate(A):
            if len(row) != self.n:
                raise ValueError(f"constraint {r} has {len(row)} coefficients, expected {self.n}")
        if len(b) != self.m:
            raise ValueError(f"{len(b)} right-hand sides for {self.m} constraints")
        self.nonbasic = set(range(self.n))
        self.basic = set(range(self.n, self.n + self.m))
        self.A: Dict[int, Dict[int, Fraction]] = {}
        self.b: Dict[int, Fraction] = {}
        for r, row in enumerate(A):
            i = self.n + r
            self.A[i] = {j: Fraction(a) for j, a in enumerate(row) if a}
            self.b[i] = Fraction(b[r])
        self.c: Dict[int, Fraction] = {j: Fraction(v) for j, v in enumerate(c) if v}
        self.v = Fraction(0)
        self.pivots = 0

    def pivot(self, leave: int, enter: int):
        row = self.A.pop(leave)
        coef = row.pop(enter)
        new_row = {j: a / coef for j, a in row.items()}
        new_row[leave] = 1 / coef
        new_b = self.b.pop(leave) / coef
        for i in list(self.A):
            a = self.A[i].pop(enter, None)
            if not a:
                continue
            self.b[i] -= a * new_b
            target = self.A[i]
            for j, val in new_row.items():
                updated = target.get(j, Fraction(0)) - a * val
                if updated:
                    target[j] = updated
                else:
                    target.pop(j, None)
        self.A[enter] = new_row
        self.b[enter] = new_b
        ce = self.c.pop(enter, None)
        if ce:
            self.v += ce * new_b
            for j, val in new_row.items():
                updated = self.c.get(j, Fraction(0)) - ce * val
                if updated:
                    self.c[j] = updated
                else:
                    self.c.pop(j, None)
        self.nonbasic.remove(enter)
        self.nonbasic.add(leave)
        self.basic.remove(leave)
        self.basic.add(enter)
        self.pivots += 1

    def optimise(self):
        while True:
            entering = [j for j in sorted(self.nonbasic) if self.c.get(j, 0) > 0]
            if not entering:
                return
            enter = entering[0]
            leave, best = None, None
            for i in sorted(self.basic):
                a = self.A[i].get(enter, 0)
                if a > 0:
                    ratio = self.b[i] / a
                    if best is None or ratio < best:
                        leave, best = i, ratio
            if leave is None:
                raise Unbounded(f"objective grows without bound along x{enter}")
            self.pivot(leave, enter)

    def values(self, count: int) -> List[Fraction]:
        return [self.b[j] if j in self.basic else Fraction(0) for j in range(count)]


def _initialise(form: SlackForm):
    """Make the dictionary feasible, or raise Infeasible"""
    if not form.b or min(form.b.values()) >= 0:
        return
    aux = form.n + form.m
    objective, constant = form.c, form.v
    for i in form.A:
        form.A[i][aux] = Fraction(-1)
    form.nonbasic.add(aux)
    form.c, form.v = {aux: Fraction(-1)}, Fraction(0)
    worst = min(form.b, key=lambda i: (form.b[i], i))
    form.pivot(worst, aux)
    form.optimise()
    if form.v != 0:
        raise Infeasible("the constraints admit no nonnegative solution")
    if aux in form.basic:
        row = form.A[aux]
        form.pivot(aux, min(j for j in row if row[j]))
    form.nonbasic.discard(aux)
    for i in form.A:
        form.A[i].pop(aux, None)

    form.c, form.v = {}, constant
    for j, cj in objective.items():
        if j in form.nonbasic:
            form.c[j] = form.c.get(j, Fraction(0)) + cj
            continue
        form.v += cj * form.b[j]
        for k, a in form.A[j].items():
            form.c[k] = form.c.get(k, Fraction(0)) - cj * a
    form.c = {j: v for j, v in form.c.items() if v}


def maximize(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LpSolution:
    """Exact optimum of max c.x s.t. A x <= b, x >= 0"""
    form = SlackForm(c, A, b)
    _initialise(form)
    form.optimise()
    logger.debug("simplex: %d variables, %d constraints, %d pivots", form.n, form.m, form.pivots)
    return LpSolution(form.v, form.values(form.n), form.pivots)
