"""Registered verification suites

Every suite draws its instances from a generator seeded with the run seed
and the suite name, so reruns with one config give identical rows.
"""

import itertools
import logging
import random
import time
import zlib
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from config.defaults import COEFFICIENT_GRID
from config.loader import HarnessConfig
from core import oracle
from core.constructions import (
    aux_blocks, aux_upper_check, basic_inequality_check, build_basic_scc, build_exact_array, build_ris,
    build_tilde_sequence, ground_from, measure_array, picked_tilde_delta, scc_ris_bound, shift_scc,
    tilde_hypothesis, tilde_lower_witnesses, uniform_ell1_witness, verify_scc,
)
from core.dual import dual_c0_check, dual_norm
from core.engine import NormEngine, weight_equals
from core.errors import UnknownSuite
from core.functional import Leaf, Node, coordinates, evaluate, serialize, validate
from core.intervals import pnorm
from core.models import SccCert, SpaceKind, SpaceSpec, Vec, combine, q_str
from core.schedule import Schedule, default_schedule, max_condition_sum, validate as validate_schedule, weight_table
from core.schreier import (
    Cardinality, Schreier, Star, family_member, max_weight_subset, min_pieces, s_member,
)
from .report import AssertionRow, SuiteReport, check, holds, measure

logger = logging.getLogger(__name__)

SuiteFn = Callable[[HarnessConfig, Dict, SuiteReport, random.Random], None]

SUITES: Dict[str, SuiteFn] = {}


def suite(name: str):
    def register(fn: SuiteFn) -> SuiteFn:
        SUITES[name] = fn
        return fn
    return register


def suite_names() -> List[str]:
    return sorted(SUITES)


def run_suite(name: str, config: Optional[HarnessConfig] = None) -> SuiteReport:
    """Run one suite; failed assertions are rows, not exceptions"""
    if name not in SUITES:
        raise UnknownSuite(name, suite_names())
    config = config or HarnessConfig()
    params = config.suite(name)
    seed = config.seed ^ zlib.crc32(name.encode('utf-8'))
    report = SuiteReport(name, {'horizon': config.horizon, **params, 'seed': seed})
    started = time.perf_counter()
    logger.info("suite %s: starting with %s", name, params)
    SUITES[name](config, params, report, random.Random(seed))
    report.runtime = time.perf_counter() - started
    summary = report.summary()
    logger.info("suite %s: %d/%d passed in %.1fs", name, summary['passed'], summary['total'], report.runtime)
    return report


# instance helpers

def _schedule(config: HarnessConfig) -> Schedule:
    return default_schedule(config.horizon)


def _engine(config: HarnessConfig, space: SpaceSpec) -> NormEngine:
    return NormEngine(space, config.search_budget, config.precision_bits, config.width)


def _grid(nonzero: bool = False) -> List[Fraction]:
    values = [Fraction(v) for v in COEFFICIENT_GRID]
    return [v for v in values if v] if nonzero else values


def _random_vec(rng: random.Random, max_pos: int, max_support: int) -> Vec:
    size = rng.randint(1, max_support)
    positions = sorted(rng.sample(range(1, max_pos + 1), size))
    grid = _grid(nonzero=True)
    return Vec({p: rng.choice(grid) for p in positions})


def _coeffs(rng: random.Random, count: int) -> List[Fraction]:
    values = [rng.choice(_grid()) for _ in range(count)]
    if not any(values):
        values[rng.randrange(count)] = Fraction(1)
    return values


def _label(x: Vec) -> str:
    return '{' + ', '.join(f"{p}: {q_str(v)}" for p, v in x.items()) + '}'


# combinatorics

@suite('schreier-oracle')
def _schreier_oracle(config, params, report, rng):
    top, depth = params['max_pos'], params['max_index']
    ground = list(range(1, top + 1))
    subsets = [tuple(F) for size in range(top + 1) for F in itertools.combinations(ground, size)]
    families = [Schreier(n) for n in range(depth + 1)]
    families += [Star(Schreier(a), Cardinality(3)) for a in range(depth)]

    mismatches = []
    for F in subsets:
        for n in range(depth + 1):
            if s_member(F, n) != oracle.brute_s_member(F, n):
                mismatches.append(('s_member', F, n))
            if F and min_pieces(F, n) != oracle.brute_min_pieces(F, n):
                mismatches.append(('min_pieces', F, n))
        for fam in families[depth + 1:]:
            if family_member(F, fam) != oracle.brute_member(F, fam):
                mismatches.append(('star', F, str(fam)))
    report.add(holds(f"F in {{1..{top}}}, n <= {depth}", "membership, star membership and min_pieces match enumeration",
                     not mismatches, {'checked_sets': len(subsets), 'mismatches': [list(map(str, m)) for m in mismatches[:20]]}))

    product = []
    for a in range(depth + 1):
        for b in range(depth + 1 - a):
            fam = Star(Schreier(a), Schreier(b))
            for F in subsets:
                if oracle.brute_member(F, fam) != oracle.brute_s_member(F, a + b):
                    product.append((a, b, F))
    report.add(holds(f"n + m <= {depth}", "S_n * S_m = S_(n+m)", not product,
                     {'mismatches': [list(map(str, m)) for m in product[:20]]}))

    for fam in families:
        for trial in range(params.get('weight_trials', 10)):
            size = rng.randint(1, top)
            positions = rng.sample(ground, size)
            c = {p: Fraction(rng.randint(1, 9), rng.randint(1, 4)) for p in positions}
            fast = max_weight_subset(c, fam)
            brute = oracle.brute_max_weight(c, fam)
            report.add(check(
                f"{fam} #{trial}", "max_weight_subset equals enumeration", fast[0], '==', brute[0],
                {'weights': {str(p): q_str(v) for p, v in sorted(c.items())}, 'set': list(fast[1])},
            ))


@suite('schedule')
def _schedule_suite(config, params, report, rng):
    s = default_schedule(params['horizon'])
    result = validate_schedule(s)
    report.add(holds(f"default_schedule({params['horizon']})", "passes validation", result.ok, result.to_dict()))
    report.add(check("default schedule", "n_2", s.n_at(2), '==', 5, {'knapsack': max_condition_sum(s, 1)}))
    report.add(check("default schedule", "n_3", s.n_at(3), '==', 18, {'knapsack': max_condition_sum(s, 2)},
                     note="knapsack value below m_3^2 is 16"))
    broken = Schedule(s.m, s.n[:2] + (s.n[2] - 2,) + s.n[3:])
    bad = validate_schedule(broken)
    report.add(holds("n_3 lowered by 2", "rejected on condition (iii)",
                     any(v.condition == 'iii' for v in bad.violations), bad.to_dict()))


# norm engine

def _oracle_spaces(config: HarnessConfig, aux_n: int) -> List[SpaceSpec]:
    s = _schedule(config)
    return [
        SpaceSpec(SpaceKind.MIXED_T, s),
        SpaceSpec(SpaceKind.XIW, s),
        SpaceSpec(SpaceKind.XIW_TILDE, s),
        SpaceSpec(SpaceKind.AUX, s, N=aux_n),
    ]


@suite('norm-oracle')
def _norm_oracle(config, params, report, rng):
    spaces = _oracle_spaces(config, params['aux_n'])
    for _ in range(params['samples']):
        x = _random_vec(rng, params['max_pos'], params['max_support'])
        for space in spaces:
            result = _engine(config, space).norm(x)
            brute, _ = oracle.brute_norm(x, space)
            problems = validate(result.witness, space) if result.witness is not None else []
            reproduced = evaluate(result.witness, x, space.schedule) if result.witness is not None else None
            report.add(AssertionRow(
                f"{space.label()} x={_label(x)}", "engine norm equals brute force with a reproducing witness",
                result.value, "==", brute,
                result.value == brute and not problems and reproduced == result.value,
                {'witness': serialize(result.witness) if result.witness is not None else None,
                 'witness_value': q_str(reproduced) if reproduced is not None else None,
                 'violations': [str(v) for v in problems]},
            ))


@suite('norm-axioms')
def _norm_axioms(config, params, report, rng):
    s = _schedule(config)
    mixed, xiw, tilde = (_engine(config, SpaceSpec(k, s)) for k in (SpaceKind.MIXED_T, SpaceKind.XIW, SpaceKind.XIW_TILDE))
    for _ in range(params['samples']):
        x = _random_vec(rng, params['max_pos'], params['max_support'])
        name = f"x={_label(x)}"
        value = xiw.norm(x).value
        lam = rng.choice(_grid(nonzero=True))
        report.add(check(name, f"||{q_str(lam)} x|| = |{q_str(lam)}| ||x||", xiw.norm(x.scale(lam)).value, '==', abs(lam) * value))
        flips = Vec({p: v if rng.random() < 0.5 else -v for p, v in x.items()})
        report.add(check(name, "sign flips keep the norm", xiw.norm(flips).value, '==', value))
        drop = rng.choice(x.support())
        zeroed = Vec({p: v for p, v in x.items() if p != drop})
        report.add(check(name, f"zeroing position {drop} does not increase the norm", xiw.norm(zeroed).value, '<=', value))
        report.add(check(name, "||x||_inf <= ||x||", x.sup(), '<=', value))
        report.add(check(name, "||x|| <= ||x||_1", value, '<=', x.l1()))
        report.add(check(name, "tilde norm <= Xiw norm", tilde.norm(x).value, '<=', value))
        report.add(check(name, "Xiw norm <= mixed Tsirelson norm", value, '<=', mixed.norm(x).value))


# constructions

def _ris(config: HarnessConfig, count: int, C) -> 'RisCert':
    space = SpaceSpec(SpaceKind.XIW, _schedule(config))
    return build_ris(space, C, count, 4, budget=config.search_budget, retry_limit=config.retry_limit)


@suite('uniform-ell1')
def _uniform_ell1(config, params, report, rng):
    space = SpaceSpec(SpaceKind.XIW, _schedule(config))
    cert = _ris(config, params['count'], 2)
    report.add(holds("RIS", "RIS conditions certified", cert.ok, cert.to_dict()))
    indices = range(len(cert.xs))
    families = [sub for size in range(1, len(cert.xs) + 1) for sub in itertools.combinations(indices, size)
                if s_member([cert.xs[i].min_supp for i in sub], 1)]
    for trial in range(params['samples']):
        sub = families[trial % len(families)]
        coeffs = _coeffs(rng, len(sub))
        blocks = [cert.xs[i] for i in sub]
        witnesses = [cert.norm_witnesses[i] for i in sub]
        f, value = uniform_ell1_witness(blocks, witnesses, coeffs, space)
        total = sum((abs(c) for c in coeffs), Fraction(0))
        report.add(check(
            f"blocks {list(sub)} c={[q_str(c) for c in coeffs]}", "||sum c_i x_i|| >= (1/4) sum |c_i|",
            value, '>=', total / 4, {'witness': serialize(f)},
        ))


def _aux_instance(rng: random.Random, s: Schedule, max_rows: int, max_cols: int, eps: Fraction, retry_limit: int):
    rows = rng.randint(1, max_rows)
    levels = sorted(rng.sample([1, 2], rows))
    cols = rng.randint(1, max_cols)
    starts = [[rng.randint(2, 10) for _ in range(cols)] for _ in levels]
    blocks = aux_blocks(s, levels, starts, eps, retry_limit=retry_limit)
    a = [[rng.choice(_grid()) for _ in range(cols)] for _ in levels]
    N = rng.randint(2, 8)
    return levels, blocks, a, N


@suite('aux-upper')
def _aux_upper(config, params, report, rng):
    s = _schedule(config)
    eps = Fraction(params['eps'])
    for trial in range(params['instances']):
        levels, blocks, a, N = _aux_instance(rng, s, params['max_rows'], params['max_cols'], eps, config.retry_limit)
        result = aux_upper_check(s, levels, blocks, a, eps, N, config.search_budget)
        row = check if result.in_hypothesis else measure
        report.add(row(
            f"#{trial} levels={levels} N={N} eps={q_str(eps)}", "aux norm <= (1 + delta) max row sum",
            result.value, '<=', result.bound,
            {**result.to_dict(), 'blocks': [[y.to_dict() for y in r] for r in blocks],
             'witness': serialize(result.witness) if result.witness is not None else None},
            note='' if result.in_hypothesis else "blocks below index n_t - 1",
        ))


@suite('basic-inequality')
def _basic_inequality(config, params, report, rng):
    space = SpaceSpec(SpaceKind.XIW, _schedule(config))
    cert = _ris(config, params['count'], params['C'])
    report.add(holds("RIS", "RIS conditions certified", cert.ok, cert.to_dict()))
    for _ in range(params['samples']):
        coeffs = _coeffs(rng, len(cert.xs))
        result = basic_inequality_check(cert, coeffs, space, budget=config.search_budget)
        report.add(holds(
            f"a={[q_str(c) for c in coeffs]}", "||sum a_i x_i|| <= C (1 + 1/sqrt(m_j1)) (max|a_i| + aux norm)",
            result.ok, {**result.to_dict(), 'witness': serialize(result.witness),
                        'aux_witness': serialize(result.aux_witness) if result.aux_witness else None},
        ))


@suite('c0-array')
def _c0_array(config, params, report, rng):
    space = SpaceSpec(SpaceKind.XIW, _schedule(config))
    eps, N = Fraction(params['eps']), params['N']
    settings = [(eps, N), (eps / 2, 2 * N)]
    arrays = [build_exact_array(space, params['k'], params['l'], params['levels'], e, n,
                                budget=config.search_budget, retry_limit=config.retry_limit)
              for e, n in settings]
    full = all(array.full_index for array in arrays)
    for trial in range(params['samples']):
        a = [[rng.choice(_grid()) for _ in range(params['l'])] for _ in range(params['k'])]
        if not any(v for row in a for v in row):
            a[0][0] = Fraction(1)
        ratios = []
        for array, (e, n) in zip(arrays, settings):
            measure_array(array, space, a, config.search_budget)
            top = max(sum((abs(v) for v in row), Fraction(0)) for row in a)
            name = f"#{trial} eps={q_str(e)} N={n}"
            report.add(check(name, "||sum a_ij x^(i)_j|| >= max_i sum_j |a_ij|", array.lower, '>=', top,
                             {'witness': serialize(array.lower_witness),
                              'valid': not validate(array.lower_witness, space),
                              'first_support': array.vectors[0][0].min_supp}))
            ratios.append(array.ratio)
        row = check if full else measure
        report.add(row(f"#{trial}", "upper ratio does not grow from (eps, N) to (eps/2, 2N)",
                       ratios[1], '<=', ratios[0],
                       {'ratios': [q_str(r) for r in ratios],
                        'realised_index': [array.realised_index for array in arrays],
                        'recipe_index': arrays[0].recipe_index},
                       note='' if full else "rows below index n_t - 1"))


@suite('tilde')
def _tilde(config, params, report, rng):
    s = _schedule(config)
    j0, N = params['j0'], params['N']
    tilde_space = SpaceSpec(SpaceKind.XIW_TILDE, s)
    aux_space = SpaceSpec(SpaceKind.AUX_TILDE, s, N=N)
    tilde_engine, aux_engine = _engine(config, tilde_space), _engine(config, aux_space)
    cert = build_tilde_sequence(j0, params['count'], s, retry_limit=config.retry_limit)
    ratio = Fraction(s.m_at(j0), s.m_at(j0 + 1))
    picks_pool = [sub for size in range(1, len(cert.xs) + 1) for sub in itertools.combinations(range(len(cert.xs)), size)]
    for trial in range(params['samples']):
        picks = picks_pool[trial % len(picks_pool)]
        coeffs = _coeffs(rng, len(picks))
        x = combine(coeffs, [cert.xs[k] for k in picks])
        target = max(max(abs(c) for c in coeffs), ratio * sum((abs(c) for c in coeffs), Fraction(0)))
        delta = picked_tilde_delta(cert, picks, N, s)
        reasons = tilde_hypothesis(cert, picks, N, s)
        witnesses = tilde_lower_witnesses(cert, picks, coeffs, s)
        valid = [(f, v) for f, v in witnesses if not validate(f, tilde_space)]
        best = max(valid, key=lambda fv: fv[1])
        name = f"picks={list(picks)} a={[q_str(c) for c in coeffs]}"
        report.add(check(name, "tilde norm >= max{max|a|, (m_j0/m_(j0+1)) sum|a|} by witness", best[1], '>=', target,
                         {'witness': serialize(best[0])}))
        own = tilde_engine.norm(x)
        report.add(check(name, "engine tilde norm >= witness value", own.value, '>=', best[1],
                         {'witness': serialize(own.witness) if own.witness is not None else None}))
        report.add(measure(name, "tilde norm <= (1 + delta) ||a||_(l1, j0)", own.value, '<=',
                           (1 + delta) * target, {'delta': q_str(delta)}))
        upper = aux_engine.norm(x)
        row = measure if reasons else check
        report.add(row(name, "aux tilde norm <= (1 + delta) ||a||_(l1, j0)", upper.value, '<=', (1 + delta) * target,
                       {'delta': q_str(delta), 'hypothesis': reasons,
                        'witness': serialize(upper.witness) if upper.witness is not None else None},
                       note='; '.join(reasons)))


@suite('p-upper')
def _p_upper(config, params, report, rng):
    s = _schedule(config)
    p = Fraction(params['p'])
    space = SpaceSpec(SpaceKind.XIW_P, s, p=p)
    engine = _engine(config, space)
    blocks: List[Vec] = []
    cursor = 2
    for _ in range(params['blocks']):
        size = rng.randint(1, 3)
        y = Vec({cursor + i: rng.choice(_grid(nonzero=True)) for i in range(size)})
        cursor += size
        blocks.append(y.scale(1 / engine.norm(y).upper))
    for _ in range(params['samples']):
        coeffs = _coeffs(rng, len(blocks))
        x = combine(coeffs, blocks)
        result = engine.norm(x)
        lp = pnorm(coeffs, p, config.width, config.precision_bits)
        if result.witness is not None:
            value = evaluate(result.witness, x, s)
            report.add(holds(f"a={[q_str(c) for c in coeffs]}", "witness value lies in the norm enclosure",
                             result.value.contains(value),
                             {'interval': result.value.to_dict(), 'witness_value': q_str(value),
                              'witness': serialize(result.witness)}))
        report.add(check(
            f"a={[q_str(c) for c in coeffs]}", f"||sum a_i x_i|| <= 2 (sum |a_i|^{q_str(p)})^(1/p)",
            result.upper, '<=', 2 * lp.hi, {'interval': result.value.to_dict(), 'lp': lp.to_dict()},
        ))
        report.add(check(f"a={[q_str(c) for c in coeffs]}", "interval width", result.value.width, '<=', config.width))


@suite('dual')
def _dual(config, params, report, rng):
    s = _schedule(config)
    space = SpaceSpec(SpaceKind.XIW, s)
    engine = _engine(config, space)
    for _ in range(params['samples']):
        g = _random_vec(rng, params['max_pos'], params['max_support'])
        fast = dual_norm(g, space, config.cut_limit, config.search_budget)
        brute = oracle.brute_dual_norm(g, space)
        report.add(check(f"g={_label(g)}", "cutting planes equal the full LP", fast.value, '==', brute,
                         {'x': fast.x.to_dict(), 'rounds': fast.rounds}))
        witness = engine.norm(g).witness
        if witness is not None:
            f = coordinates(witness, s)
            report.add(check(f"f={_label(f)}", "norming functionals have dual norm <= 1",
                             dual_norm(f, space, config.cut_limit, config.search_budget).value, '<=', 1,
                             {'functional': serialize(witness)}))
    fs = [Node((1,), tuple(Leaf(p) for p in block)) for block in ((2, 3), (4, 5, 6), (7, 8))]
    result = dual_c0_check(fs, 1, space)
    for row in result.rows:
        report.add(check(f"F={row.members}", "||sum_(k in F) f_k||_* <= 2 m_1 + 1", row.value, '<=', row.bound,
                         note="evidence only"))


@suite('scc-ris')
def _scc_ris(config, params, report, rng):
    s = _schedule(config)
    space = SpaceSpec(SpaceKind.XIW, s)
    engine = _engine(config, space)
    n = params['n']
    small = sorted(w for w, (nsum, _) in weight_table(s, s.m[-1] + 1).items() if nsum < n)
    for raw in params['eps']:
        eps = Fraction(raw)
        cert = build_basic_scc(ground_from(params['start']), n, eps, config.retry_limit)
        name = f"({n}, {q_str(eps)})-scc"
        report.add(holds(name, "verifies as a basic s.c.c.", isinstance(verify_scc(cert.x, n, eps), SccCert), cert.to_dict()))
        for w in small:
            result = engine.constrained_max(cert.x, weight_equals(w))
            report.add(check(name, f"|f(x)| <= (1 + 2 eps w)/w at w={w}", result.value, '<=', scc_ris_bound(eps, w),
                             {'witness': serialize(result.witness) if result.witness else None}))
        moved = shift_scc(cert.x, params['shift'])
        report.add(holds(name, f"shift by {params['shift']} is an ({n}, 2 eps)-scc",
                         isinstance(verify_scc(moved, n, 2 * eps), SccCert), {'x': moved.to_dict()}))
