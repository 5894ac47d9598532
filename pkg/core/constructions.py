"""Builders and verifiers for special convex combinations and the sequences built from them

Every builder re-verifies what it claims with exact arithmetic:
- basic s.c.c. through max_weight_subset over S_{n-1}
- RIS conditions through the norm engine, the gap rule and constrained maxima
- array and tilde lower bounds through explicit witness functionals
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from config.defaults import (
    ARRAY_SCC_INDEX, ARRAY_START, AUX_SCC_INDEX, RIS_DELTA, RIS_EPS_FLOOR, RIS_FIRST_LEVEL, RIS_SCC_INDEX,
    SCC_GROUND_SLACK, SCC_RETRY_LIMIT, SEARCH_BUDGET, TILDE_FIRST_EPS, TILDE_START,
)
from .engine import NormEngine, weight_equals
from .errors import ConstructionFailed, GroundTooShort
from .functional import Functional, Leaf, Node, evaluate, is_very_fast_growing, validate
from .models import (
    ArrayCert, Plegma, RisCert, SccCert, SccViolation, SpaceKind, SpaceSpec, TildeCert, Vec,
    WeightCheck, combine, q_str,
)
from .schedule import Schedule, level_for_gap, weight_table
from .schreier import Cardinality, Schreier, Star, as_finset, max_weight_subset, s_member

logger = logging.getLogger(__name__)

FinSetLike = Sequence[int]


def _ceil(q: Fraction) -> int:
    return -(-q.numerator // q.denominator)


def ground_from(start: int, length: int = SCC_GROUND_SLACK) -> range:
    return range(start, start + length)


# special convex combinations

def build_basic_scc(ground: Sequence[int], n: int, eps, retry_limit: int = SCC_RETRY_LIMIT) -> SccCert:
    """An (n, eps) basic s.c.c. on ground by repeated averaging"""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    if n < 0:
        raise ValueError(f"index must be nonnegative, got {n}")
    ground = as_finset(ground)
    if not ground:
        raise GroundTooShort("empty ground set")
    if n == 0:
        return SccCert(Vec.unit(ground[0]), 0, eps, (Fraction(0), ()))

    d = max(ground[0], _ceil(2 / eps))
    for attempt in range(1, retry_limit + 1):
        x = _average(ground, n, eps, d, retry_limit)
        worst = max_weight_subset(dict(x.items()), Schreier(n - 1))
        if worst[0] < eps:
            logger.debug("(%d, %s)-scc with %d blocks on %d..%d after %d attempt(s)",
                         n, q_str(eps), d, x.min_supp, x.max_supp, attempt)
            return SccCert(x, n, eps, worst, attempts=attempt)
        logger.debug("(%d, %s)-scc: S_%d mass %s with %d blocks, retrying", n, q_str(eps), n - 1, worst[0], d)
        d *= 2
    raise ConstructionFailed(f"no ({n}, {q_str(eps)})-scc on ground from {ground[0]} after {retry_limit} attempts")


def _average(ground: FinSetLike, n: int, eps: Fraction, d: int, retry_limit: int) -> Vec:
    rest = [p for p in ground if p >= d]
    blocks: List[Vec] = []
    for _ in range(d):
        if not rest:
            raise GroundTooShort(f"ground ends at {ground[-1]} before {d} blocks of index {n - 1} fit")
        block = build_basic_scc(rest, n - 1, eps / 2, retry_limit).x
        blocks.append(block)
        rest = [p for p in rest if p > block.max_supp]
    return combine([Fraction(1, d)] * d, blocks)


def verify_scc(x: Vec, n: int, eps, star_m: int = 3) -> Union[SccCert, List[SccViolation]]:
    """Check the basic s.c.c. conditions; the S_{n-1}*A_m mass is reported alongside"""
    eps = Fraction(eps)
    problems: List[SccViolation] = []
    if not x:
        return [SccViolation('support', "zero vector")]
    negative = [p for p, v in x.items() if v < 0]
    if negative:
        problems.append(SccViolation('convex', f"negative coefficients at {negative}"))
    total = sum((v for _, v in x.items()), Fraction(0))
    if total != 1:
        problems.append(SccViolation('convex', f"coefficients sum to {total}"))
    if not s_member(x.support(), n):
        problems.append(SccViolation('support', f"support is not in S_{n}"))
    if problems:
        return problems
    if n == 0:
        return SccCert(x, 0, eps, (Fraction(0), ()))
    worst = max_weight_subset(dict(x.items()), Schreier(n - 1))
    if worst[0] >= eps:
        return [SccViolation('mass', f"S_{n - 1} set {list(worst[1])} carries {worst[0]} >= {eps}")]
    star = max_weight_subset(dict(x.items()), Star(Schreier(n - 1), Cardinality(star_m)))[0]
    return SccCert(x, n, eps, worst, star_mass=star)


def shift_scc(x: Vec, offset: int) -> Vec:
    """Move the support right; an (n, eps) s.c.c. becomes an (n, 2 eps) one"""
    if offset < 0:
        raise ValueError("shifts move supports to the right")
    return x.shift(offset)


def build_block_scc(blocks: Sequence[Vec], n: int, eps,
                    retry_limit: int = SCC_RETRY_LIMIT) -> Tuple[Vec, SccCert]:
    """sum c_i x_i with c a basic s.c.c. placed on the block minima"""
    if not blocks:
        raise ValueError("no blocks")
    for a, b in zip(blocks, blocks[1:]):
        if a.max_supp >= b.min_supp:
            raise ValueError("blocks must be successive")
    by_min = {x.min_supp: x for x in blocks}
    cert = build_basic_scc([x.min_supp for x in blocks], n, eps, retry_limit)
    vector = combine([c for _, c in cert.x.items()], [by_min[p] for p, _ in cert.x.items()])
    return vector, cert


def scc_ris_bound(eps, w: int) -> Fraction:
    """(1 + 2 eps w) / w"""
    eps = Fraction(eps)
    return (1 + 2 * eps * w) / w


# rapidly increasing sequences

def recipe_index(schedule: Schedule, j: int) -> int:
    """Smallest k exceeding every index sum of weights below m_j"""
    table = weight_table(schedule, schedule.m_at(j))
    return 1 + max((nsum for nsum, _ in table.values()), default=0)


def _exact_tree_space(space: SpaceSpec):
    if not space.has_tree or space.uses_coeffs or space.kind == SpaceKind.AUX_P:
        raise ValueError(f"{space.label()} needs an exact norming tree for this builder")


def ris_eps(C, delta, m: int) -> Fraction:
    """Largest eps with (1 + delta)(1 + 2 eps m) <= C"""
    C, delta = Fraction(C), Fraction(delta)
    return (C / (1 + delta) - 1) / (2 * m)


def build_ris(space: SpaceSpec, C, count: int, start: int, scc_index: int = RIS_SCC_INDEX,
              eps_floor=RIS_EPS_FLOOR, delta=RIS_DELTA, first_level: int = RIS_FIRST_LEVEL,
              budget: int = SEARCH_BUDGET, retry_limit: int = SCC_RETRY_LIMIT) -> RisCert:
    """A (C, (j_i))-RIS of normalised s.c.c. of unit vectors, with every condition certified

    eps_i comes from C and delta through ris_eps at the level j_i. Blocks are
    built at max(eps_i, eps_floor) and index min(k_i, scc_index); the RIS
    conditions are then certified on the vectors actually built.
    """
    C, floor, delta = Fraction(C), Fraction(eps_floor), Fraction(delta)
    if C <= 1 + delta:
        raise ValueError(f"RIS constant must exceed 1 + delta = {q_str(1 + delta)}, got {q_str(C)}")
    if count < 1:
        raise ValueError(f"count must be positive, got {count}")
    if floor <= 0:
        raise ValueError(f"eps floor must be positive, got {floor}")
    _exact_tree_space(space)
    s = space.schedule
    engine = NormEngine(space, budget)

    js: List[int] = []
    recipe: List[int] = []
    realised: List[int] = []
    targets: List[Fraction] = []
    used: List[Fraction] = []
    ys: List[Vec] = []
    cursor = start
    for _ in range(count):
        bound = ys[-1].max_supp if ys else 0
        j = level_for_gap(s, bound, js[-1] if js else first_level - 1)
        k = recipe_index(s, j)
        r = min(k, scc_index)
        eps = ris_eps(C, delta, s.m_at(j))
        ys.append(build_basic_scc(ground_from(cursor), r, max(eps, floor), retry_limit).x)
        cursor = ys[-1].max_supp + 1
        js.append(j)
        recipe.append(k)
        realised.append(r)
        targets.append(eps)
        used.append(max(eps, floor))

    raw = [engine.norm(y).value for y in ys]
    slack = min(C * n / y.l1() - 1 for n, y in zip(raw, ys))
    delta = min(delta, slack, C - 1)
    if delta < 0:
        raise ConstructionFailed(f"l1/norm ratio of the blocks exceeds C={q_str(C)}")
    xs = [y.scale((1 + delta) / n) for n, y in zip(raw, ys)]

    cert = RisCert(xs, C, js, recipe, realised, targets, delta, realised_eps=used)
    for i, x in enumerate(xs):
        result = engine.norm(x)
        cert.norms.append(result.value)
        cert.norm_witnesses.append(result.witness)
        if i:
            cert.gaps.append((xs[i - 1].max_supp, s.m_at(js[i])))
        cert.weight_checks.append(_decay_checks(engine, x, C, s.m_at(js[i])))
    logger.info("RIS of %d vectors on levels %s, delta=%s, ok=%s", count, js, q_str(delta), cert.ok)
    return cert


def _decay_checks(engine: NormEngine, x: Vec, C: Fraction, top: int) -> List[WeightCheck]:
    """|f(x)| <= C / w(f) for every weight below top"""
    if x.l1() <= C:
        return [WeightCheck(None, x.l1(), C, 'l1')]
    space = engine.space
    checks = []
    for w in sorted(weight_table(space.schedule, top, space.single_level)):
        result = engine.constrained_max(x, weight_equals(w))
        checks.append(WeightCheck(w, result.value, C / w, 'search', result.witness))
    return checks


@dataclass
class BasicInequalityCheck:
    """||sum a_i x_i|| against C (1 + 1/sqrt(m_j1)) (max|a_i| + ||sum a_i e_t_i||_aux)"""

    lhs: Fraction
    max_coeff: Fraction
    aux_norm: Fraction
    C: Fraction
    m: int
    N: int
    witness: Optional[Functional] = None
    aux_witness: Optional[Functional] = None

    @property
    def base(self) -> Fraction:
        return self.C * (self.max_coeff + self.aux_norm)

    @property
    def ok(self) -> bool:
        gap = self.lhs - self.base
        return gap <= 0 or gap * gap * self.m <= self.base * self.base

    def to_dict(self) -> Dict:
        return {'lhs': q_str(self.lhs), 'max_coeff': q_str(self.max_coeff), 'aux_norm': q_str(self.aux_norm),
                'C': q_str(self.C), 'm': self.m, 'N': self.N, 'ok': self.ok}


def basic_inequality_check(cert: RisCert, coeffs: Sequence, space: SpaceSpec, N: Optional[int] = None,
                           budget: int = SEARCH_BUDGET) -> BasicInequalityCheck:
    s = space.schedule
    coeffs = [Fraction(a) for a in coeffs]
    first = cert.xs[0]
    if N is None:
        N = min(s.m_at(cert.js[0]), first.min_supp) - 1
    if not 1 <= N < min(s.m_at(cert.js[0]), first.min_supp):
        raise ValueError(f"N={N} must lie below m_j1 and min supp x_1")
    lhs = NormEngine(space, budget).norm(combine(coeffs, cert.xs))
    tops = Vec({x.max_supp: a for x, a in zip(cert.xs, coeffs)})
    aux = NormEngine(SpaceSpec(SpaceKind.AUX, s, N=N), budget).norm(tops)
    return BasicInequalityCheck(
        lhs.value, max((abs(a) for a in coeffs), default=Fraction(0)), aux.value, cert.C,
        s.m_at(cert.js[0]), N, lhs.witness, aux.witness,
    )


def _signed(f: Functional, sign: int) -> Functional:
    if sign > 0:
        return f
    if isinstance(f, Leaf):
        return Leaf(f.pos, -f.sign)
    return Node(f.vw, tuple(_signed(c, sign) for c in f.children), f.coeffs)


def uniform_ell1_witness(blocks: Sequence[Vec], witnesses: Sequence[Functional], coeffs: Sequence,
                         space: SpaceSpec) -> Tuple[Functional, Fraction]:
    """A valid functional with large value on sum c_i x_i for S_1-admissible blocks

    Tries the very fast growing chain (1/m_1) sum f_i, then the common weight
    functional that drops the first child of every f_i, then single witnesses.
    """
    s = space.schedule
    coeffs = [Fraction(a) for a in coeffs]
    x = combine(coeffs, blocks)
    signed = [_signed(f, 1 if a >= 0 else -1) for f, a in zip(witnesses, coeffs)]
    live = [f for f, a in zip(signed, coeffs) if a != 0]
    candidates: List[Functional] = []
    if live and is_very_fast_growing(live, s):
        candidates.append(Node((1,), tuple(live)))
    nodes = [f for f in live if isinstance(f, Node)]
    if live and len(nodes) == len(live) and len({f.vw for f in nodes}) == 1:
        rest = tuple(c for f in nodes for c in f.children[1:])
        if rest:
            candidates.append(Node((1,) + nodes[0].vw, rest))
    candidates.extend(live)

    best: Optional[Tuple[Functional, Fraction]] = None
    for f in candidates:
        if validate(f, space):
            continue
        value = evaluate(f, x, s)
        if best is None or value > best[1]:
            best = (f, value)
    if best is None:
        raise ConstructionFailed("no valid lower witness for the block combination")
    return best


def aux_delta(schedule: Schedule, levels: Sequence[int], eps, N: int) -> Fraction:
    """sum_i max{12 eps m_t, 12/m_t, 6 m_t/N, 6 m_t/m_{t+1}}"""
    eps = Fraction(eps)
    total = Fraction(0)
    for t in levels:
        m = schedule.m_at(t)
        total += max(12 * eps * m, Fraction(12, m), Fraction(6 * m, N), Fraction(6 * m, schedule.m_at(t + 1)))
    return total


@dataclass
class AuxUpperCheck:
    """||sum a_ij m_t_i x~_ij||_aux,N against (1 + delta) max_i sum_j |a_ij|"""

    value: Fraction
    delta: Fraction
    top: Fraction
    N: int
    violations: List[str]
    witness: Optional[Functional] = None

    @property
    def bound(self) -> Fraction:
        return (1 + self.delta) * self.top

    @property
    def in_hypothesis(self) -> bool:
        return not self.violations

    @property
    def holds(self) -> bool:
        return self.value <= self.bound

    def to_dict(self) -> Dict:
        return {'value': q_str(self.value), 'delta': q_str(self.delta), 'top': q_str(self.top), 'N': self.N,
                'bound': q_str(self.bound), 'in_hypothesis': self.in_hypothesis, 'violations': list(self.violations)}


def aux_blocks(schedule: Schedule, levels: Sequence[int], starts: Sequence[Sequence[int]], eps,
               cap: int = AUX_SCC_INDEX, retry_limit: int = SCC_RETRY_LIMIT) -> List[List[Vec]]:
    """Basic s.c.c. x~_ij of index min(n_t_i - 1, cap) on grounds from starts[i][j]"""
    rows = []
    for t, row in zip(levels, starts):
        index = min(schedule.n_at(t) - 1, cap)
        rows.append([build_basic_scc(ground_from(p), index, eps, retry_limit).x for p in row])
    return rows


def aux_upper_check(schedule: Schedule, levels: Sequence[int], blocks: Sequence[Sequence[Vec]],
                    coefficients: Sequence[Sequence], eps, N: int,
                    budget: int = SEARCH_BUDGET) -> AuxUpperCheck:
    """Aux(N) norm of sum a_ij m_t_i x~_ij with every x~_ij re-verified as an (n_t_i - 1, eps) s.c.c.

    Blocks that fail verification are listed as violations; the norm and
    the bound are still computed.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    levels = list(levels)
    if len(set(levels)) != len(levels):
        raise ValueError(f"levels must be pairwise different, got {levels}")
    if len(blocks) != len(levels) or len(coefficients) != len(levels):
        raise ValueError("need one row of blocks and coefficients per level")
    a = [[Fraction(v) for v in row] for row in coefficients]
    violations: List[str] = []
    flat_coeffs: List[Fraction] = []
    flat_vectors: List[Vec] = []
    for i, (t, row) in enumerate(zip(levels, blocks)):
        index = schedule.n_at(t) - 1
        for j, y in enumerate(row):
            verified = verify_scc(y, index, eps)
            if not isinstance(verified, SccCert):
                violations.append(f"x~[{i}][{j}] is not an ({index}, {q_str(eps)}) basic s.c.c.: "
                                  + '; '.join(str(v) for v in verified))
            flat_coeffs.append(a[i][j])
            flat_vectors.append(y.scale(schedule.m_at(t)))
    x = combine(flat_coeffs, flat_vectors)
    result = NormEngine(SpaceSpec(SpaceKind.AUX, schedule, N=N), budget).norm(x)
    top = max(sum((abs(v) for v in row), Fraction(0)) for row in a)
    check = AuxUpperCheck(result.value, aux_delta(schedule, levels, eps, N), top, N, violations, result.witness)
    logger.debug("aux upper levels=%s N=%d: %s against %s, %d violation(s)",
                 levels, N, check.value, check.bound, len(violations))
    return check


def tilde_delta(schedule: Schedule, j0: int, N: int, xs: Sequence[Vec], eps: Sequence) -> Fraction:
    """max{2 m_{j0+1}/N, 6 sum_{k>=2} max supp(x_{k-1}) eps_k, 6 m_j0 sum_{k>=2} eps_k}"""
    eps = [Fraction(e) for e in eps]
    tail = sum(eps[1:], Fraction(0))
    spread = sum((xs[k - 1].max_supp * eps[k] for k in range(1, len(xs))), Fraction(0))
    return max(Fraction(2 * schedule.m_at(j0 + 1), N), 6 * spread, 6 * schedule.m_at(j0) * tail)


# arrays

def plegma_enumerate(l: int, k: int, positions: Sequence[int], strict_only: bool = False) -> List[Plegma]:
    """Families s_1..s_l of k-subsets with s_a(i) <= s_b(i) for a < b and s_a(i) < s_b(i+1)"""
    positions = sorted(set(positions))
    rows = list(itertools.combinations(positions, k))
    out: List[Plegma] = []
    for family in itertools.product(rows, repeat=l):
        ok = True
        for i in range(k):
            for a in range(l - 1):
                if family[a][i] > family[a + 1][i]:
                    ok = False
            if i + 1 < k and family[-1][i] >= family[0][i + 1]:
                ok = False
        if ok:
            plegma = Plegma(tuple(family))
            if not strict_only or plegma.strict:
                out.append(plegma)
    return out


def default_plegma(k: int, l: int) -> Plegma:
    """Strict plegma in [N]^l with rows interlaced from max(k, l)"""
    base = max(k, l)
    return Plegma(tuple(tuple(base + j * k + i for j in range(l)) for i in range(k)))


def row_witness(vectors: Sequence[Vec], level: int, signs: Optional[Sequence[int]] = None) -> Node:
    """(1/m_t) sum over the row supports of +-e_s*"""
    signs = signs or [1] * len(vectors)
    leaves = tuple(Leaf(p, sg) for x, sg in zip(vectors, signs) for p in x.support())
    return Node((level,), leaves)


def array_start(schedule: Schedule, levels: Sequence[int], eps, N: int, start: int = ARRAY_START) -> int:
    """First support position: max{start, N, 6/eps, n_t_i}"""
    return max(start, N, _ceil(6 / Fraction(eps)), max(schedule.n_at(t) for t in levels))


def build_exact_array(space: SpaceSpec, k: int, l: int, levels: Sequence[int], eps, N: int,
                      plegma: Optional[Plegma] = None, coefficients: Optional[Sequence[Sequence]] = None,
                      start: int = ARRAY_START, scc_cap: int = ARRAY_SCC_INDEX,
                      budget: int = SEARCH_BUDGET, retry_limit: int = SCC_RETRY_LIMIT) -> ArrayCert:
    """x^(i)_j = m_{t_i} (min(n_{t_i} - 1, cap), eps/2)-s.c.c. of unit vectors

    Supports begin at array_start, so both N and eps move the blocks.
    """
    _exact_tree_space(space)
    s = space.schedule
    eps = Fraction(eps)
    if eps <= 0 or N < 1:
        raise ValueError(f"need eps > 0 and N >= 1, got eps={eps}, N={N}")
    levels = list(levels)
    if len(levels) != k or len(set(levels)) != k:
        raise ValueError(f"need {k} pairwise different levels, got {levels}")
    for t in levels:
        s.m_at(t + 1)
    plegma = plegma or default_plegma(k, l)
    if len(plegma.rows) != k or any(len(row) != l for row in plegma.rows):
        raise ValueError(f"plegma must have {k} rows of length {l}")

    recipe = [s.n_at(t) - 1 for t in levels]
    realised = [min(r, scc_cap) for r in recipe]
    order = sorted((plegma.rows[i][j], i, j) for i in range(k) for j in range(l))
    vectors: List[List[Optional[Vec]]] = [[None] * l for _ in range(k)]
    cursor = array_start(s, levels, eps, N, start)
    for _, i, j in order:
        cert = build_basic_scc(ground_from(cursor), realised[i], eps / 2, retry_limit)
        vectors[i][j] = cert.x.scale(s.m_at(levels[i]))
        cursor = cert.x.max_supp + 1

    witnesses = [row_witness(vectors[i], levels[i]) for i in range(k)]
    array = ArrayCert(k, l, levels, eps, N, vectors, witnesses, plegma, recipe, realised)
    if coefficients is not None:
        measure_array(array, space, coefficients, budget)
    return array


def measure_array(array: ArrayCert, space: SpaceSpec, coefficients: Sequence[Sequence], budget: int = SEARCH_BUDGET):
    """Exact lower witness and engine upper value for sum a_ij x^(i)_j"""
    a = [[Fraction(v) for v in row] for row in coefficients]
    s = space.schedule
    flat_coeffs = [a[i][j] for i in range(array.k) for j in range(array.l)]
    flat_vectors = [array.vectors[i][j] for i in range(array.k) for j in range(array.l)]
    x = combine(flat_coeffs, flat_vectors)
    sums = [sum((abs(v) for v in row), Fraction(0)) for row in a]
    top = max(range(array.k), key=lambda i: (sums[i], -i))
    signs = [1 if v >= 0 else -1 for v in a[top]]
    witness = row_witness(array.vectors[top], array.levels[top], signs)
    array.coefficients = a
    array.lower_witness = witness
    array.lower = evaluate(witness, x, s)
    array.upper = NormEngine(space, budget).norm(x).value
    array.ratio = array.upper / sums[top] if sums[top] else None
    return array


# tilde sequences

def build_tilde_sequence(j0: int, count: int, schedule: Schedule, first_eps=TILDE_FIRST_EPS,
                         start: int = TILDE_START, retry_limit: int = SCC_RETRY_LIMIT) -> TildeCert:
    """x_k = m_j0 (n_j0, eps_k/2)-s.c.c. with eps_{k+1} < 1/(2^k max supp x_k)"""
    schedule.m_at(j0 + 1)
    if count < 1:
        raise ValueError(f"count must be positive, got {count}")
    m, n = schedule.m_at(j0), schedule.n_at(j0)
    xs: List[Vec] = []
    eps: List[Fraction] = []
    cursor = start
    current = Fraction(first_eps)
    for k in range(1, count + 1):
        cert = build_basic_scc(ground_from(cursor), n, current / 2, retry_limit)
        xs.append(cert.x.scale(m))
        eps.append(current)
        cursor = cert.x.max_supp + 1
        current = Fraction(1, 2 ** k * xs[-1].max_supp + 1)
    witnesses = [row_witness([x], j0) for x in xs]
    logger.info("tilde sequence j0=%d: supports end at %s", j0, [x.max_supp for x in xs])
    return TildeCert(j0, xs, eps, witnesses)


def tilde_lower_witnesses(cert: TildeCert, picks: Sequence[int], coeffs: Sequence,
                          schedule: Schedule) -> List[Tuple[Functional, Fraction]]:
    """Signed f_k for every pick and (m_j0/m_{j0+1}) sum f_k, each with its value on sum a_l x_{k_l}"""
    coeffs = [Fraction(a) for a in coeffs]
    chosen = [cert.xs[k] for k in picks]
    x = combine(coeffs, chosen)
    out = []
    for k, a in zip(picks, coeffs):
        f = _signed(cert.witnesses[k], 1 if a >= 0 else -1)
        out.append((f, evaluate(f, x, schedule)))
    signs = [1 if a >= 0 else -1 for a in coeffs]
    joint = row_witness(chosen, cert.j0 + 1, signs)
    out.append((joint, evaluate(joint, x, schedule)))
    return out


def tilde_hypothesis(cert: TildeCert, picks: Sequence[int], N: int, schedule: Schedule) -> List[str]:
    """Reasons the AuxTilde(N) upper estimate on the picked vectors is outside its hypotheses

    Needs N >= 2 m_j0 and, for every pick, eps_k < 1/(6 m_j0) with x_k / m_j0
    an (n_j0, eps_k) basic s.c.c. An empty list means the estimate applies.
    """
    m, n = schedule.m_at(cert.j0), schedule.n_at(cert.j0)
    reasons = []
    if N < 2 * m:
        reasons.append(f"N={N} is below 2 m_j0 = {2 * m}")
    for k in picks:
        eps = cert.eps[k]
        if 6 * m * eps >= 1:
            reasons.append(f"eps_{k + 1}={q_str(eps)} is not below 1/{6 * m}")
        elif not isinstance(verify_scc(cert.xs[k].scale(Fraction(1, m)), n, eps), SccCert):
            reasons.append(f"x_{k + 1}/m_j0 is not an ({n}, {q_str(eps)}) basic s.c.c.")
    return reasons


def picked_tilde_delta(cert: TildeCert, picks: Sequence[int], N: int, schedule: Schedule) -> Fraction:
    """tilde_delta over the picked subsequence"""
    return tilde_delta(schedule, cert.j0, N, [cert.xs[k] for k in picks], [cert.eps[k] for k in picks])
