"""Command line front end

Results go to stdout as JSON; logging goes to stderr. Exit codes:
0 success, 1 a failed assertion or certificate, 2 bad configuration or input.
"""

import argparse
import json
import logging
import os
import sys
from typing import Any, Dict, List, Optional

from config.defaults import TILDE_FIRST_EPS
from config.loader import HarnessConfig, cache_dir, load_config
from core.constructions import (
    build_basic_scc, build_exact_array, build_ris, build_tilde_sequence, ground_from, picked_tilde_delta,
    tilde_hypothesis, verify_scc,
)
from core.dual import dual_norm
from core.engine import NormEngine
from core.errors import ConfigError, IwError, ParseError, SearchBudgetExceeded, UnknownSuite
from core.functional import serialize
from core.models import SccCert, SpaceKind, q_str
from core.schedule import default_schedule, validate as validate_schedule
from harness.suites import run_suite, suite_names
from utils.export import FORMATS, report_emit
from utils.serialization import (
    decode_coefficients, decode_rational, decode_schedule, decode_space, decode_vec,
)

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2
KIND_NAMES = [k.value for k in SpaceKind]


def _json_arg(text: str, path: str) -> Any:
    """Inline JSON, or the contents of the file it names"""
    try:
        if os.path.isfile(text):
            with open(text, 'r', encoding='utf-8') as fh:
                return json.load(fh)
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(path, f"invalid JSON: {e.msg}")


def _space(args, config: HarnessConfig, keys=('p', 'N', 'j')):
    if args.space in KIND_NAMES:
        data: Dict[str, Any] = {'kind': args.space}
    else:
        data = _json_arg(args.space, '--space')
        if not isinstance(data, dict):
            raise ParseError('--space', "expected a space kind or a JSON object with a 'kind'")
    for key in keys:
        value = getattr(args, key, None)
        if value is not None:
            data[key] = value
    schedule = decode_schedule(_json_arg(args.schedule, '--schedule'), '--schedule') if getattr(args, 'schedule', None) \
        else default_schedule(config.horizon)
    return decode_space(data, '--space', schedule)


def _emit(payload: Dict[str, Any], name: Optional[str] = None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    print(text)
    directory = cache_dir()
    if directory and name:
        os.makedirs(directory, exist_ok=True)
        with open(os.path.join(directory, f"{name}.json"), 'w', encoding='utf-8') as fh:
            fh.write(text)


# verbs

def cmd_norm(args, config: HarnessConfig) -> int:
    space = _space(args, config)
    x = decode_vec(_json_arg(args.vector, '--vector'), '--vector')
    engine = NormEngine(space, config.search_budget, config.precision_bits, config.width)
    try:
        result = engine.norm(x)
    except SearchBudgetExceeded as e:
        _emit({'space': space.label(), 'budget_exceeded': {
            'lower': str(e.lower), 'upper': str(e.upper), 'expansions': e.expansions,
            'witness': serialize(e.witness) if e.witness is not None else None,
        }})
        return EXIT_FAILED
    payload = {'space': space.label(), 'x': x.to_dict(), **result.to_dict()}
    if args.witness:
        with open(args.witness, 'w', encoding='utf-8') as fh:
            json.dump(serialize(result.witness) if result.witness is not None else None, fh, indent=2)
        payload['witness_file'] = args.witness
    _emit(payload, 'norm')
    return EXIT_OK


def cmd_dual_norm(args, config: HarnessConfig) -> int:
    space = _space(args, config)
    g = decode_vec(_json_arg(args.functional, '--functional'), '--functional')
    result = dual_norm(g, space, config.cut_limit, config.search_budget)
    _emit({'space': space.label(), 'g': g.to_dict(), **result.to_dict()}, 'dual-norm')
    return EXIT_OK


def cmd_scc(args, config: HarnessConfig) -> int:
    eps = decode_rational(args.eps, '--eps')
    if args.action == 'build':
        cert = build_basic_scc(ground_from(args.start), args.n, eps, config.retry_limit)
        _emit(cert.to_dict(), 'scc')
        return EXIT_OK
    if args.x is None:
        raise ParseError('--x', "scc verify needs a vector")
    x = decode_vec(_json_arg(args.x, '--x'), '--x')
    result = verify_scc(x, args.n, eps)
    if isinstance(result, SccCert):
        _emit({'ok': True, **result.to_dict()}, 'scc-verify')
        return EXIT_OK
    _emit({'ok': False, 'violations': [v.to_dict() for v in result]})
    return EXIT_FAILED


def cmd_ris(args, config: HarnessConfig) -> int:
    space = _space(args, config)
    cert = build_ris(space, decode_rational(args.C, '--C'), args.count, args.start,
                     budget=config.search_budget, retry_limit=config.retry_limit)
    _emit(cert.to_dict(), 'ris')
    return EXIT_OK if cert.ok else EXIT_FAILED


def cmd_array(args, config: HarnessConfig) -> int:
    space = _space(args, config, keys=('p', 'j'))
    levels = [int(v) for v in args.levels.split(',')]
    coefficients = None
    if args.coefficients:
        raw = _json_arg(args.coefficients, '--coefficients')
        if not isinstance(raw, list):
            raise ParseError('--coefficients', "expected a list of rows")
        coefficients = [decode_coefficients(row, f"--coefficients[{i}]") for i, row in enumerate(raw)]
    cert = build_exact_array(space, args.k, args.l, levels, decode_rational(args.eps, '--eps'), args.N,
                             coefficients=coefficients, budget=config.search_budget, retry_limit=config.retry_limit)
    _emit(cert.to_dict(), 'array')
    if cert.lower is not None and coefficients:
        top = max(sum(abs(v) for v in row) for row in coefficients)
        return EXIT_OK if cert.lower >= top else EXIT_FAILED
    return EXIT_OK


def cmd_tilde(args, config: HarnessConfig) -> int:
    s = default_schedule(config.horizon)
    cert = build_tilde_sequence(args.j0, args.count, s, decode_rational(args.first_eps, '--first-eps'),
                                retry_limit=config.retry_limit)
    picks = range(len(cert.xs))
    _emit({**cert.to_dict(), 'N': args.N, 'delta': q_str(picked_tilde_delta(cert, picks, args.N, s)),
           'hypothesis': tilde_hypothesis(cert, picks, args.N, s)}, 'tilde')
    return EXIT_OK


def cmd_schedule(args, config: HarnessConfig) -> int:
    if args.schedule:
        s = decode_schedule(_json_arg(args.schedule, '--schedule'), '--schedule')
    else:
        s = default_schedule(args.horizon or config.horizon)
    report = validate_schedule(s)
    _emit({'schedule': s.to_dict(), **report.to_dict()})
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_suite(args, config: HarnessConfig) -> int:
    if args.action == 'list':
        _emit({'suites': suite_names()})
        return EXIT_OK
    if not args.name:
        raise ConfigError('suite', "suite run needs a suite name")
    report = run_suite(args.name, config)
    directory = cache_dir()
    if directory:
        path = os.path.join(directory, f"{args.name}.{args.format}")
        report.certificates.append(path)
        report_emit(report, args.format, path)
    sys.stdout.write(report_emit(report, 'json').decode('utf-8') + '\n')
    if args.format != 'json' and not directory:
        logger.warning("--format %s needs %s to be set; printed JSON only", args.format, 'IW_CACHE_DIR')
    return EXIT_OK if report.ok else EXIT_FAILED


def _add_space(parser: argparse.ArgumentParser, default: str = 'Xiw', threshold: bool = True):
    parser.add_argument('--space', default=default,
                        help=f"space kind ({', '.join(KIND_NAMES)}) or a JSON space file")
    parser.add_argument('--p', help="exponent for XiwP/Lp, as a rational string")
    if threshold:
        parser.add_argument('--N', type=int, help="threshold for the auxiliary sets")
    parser.add_argument('--j', type=int, help="level for L1J")
    parser.add_argument('--schedule', help='JSON schedule, {"m": [...], "n": [...]} or {"default": J}')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='iw', description="Exact norms and certificates for Schreier-type norming sets")
    parser.add_argument('--config', help="JSON run configuration")
    parser.add_argument('--log-level', default='WARNING', choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'])
    sub = parser.add_subparsers(dest='verb', required=True)

    p = sub.add_parser('norm', help="norm with an optimal witness")
    _add_space(p)
    p.add_argument('--vector', '--x', dest='vector', required=True,
                   help='JSON vector file or inline JSON, {"pos": "num/den"} or a list')
    p.add_argument('--witness', help="write the optimal functional to this JSON file")
    p.set_defaults(handler=cmd_norm)

    p = sub.add_parser('dual-norm', help="dual norm by cutting planes")
    _add_space(p)
    p.add_argument('--functional', '--g', dest='functional', required=True,
                   help="JSON file or inline JSON with the functional coefficients")
    p.set_defaults(handler=cmd_dual_norm)

    p = sub.add_parser('scc', help="build or verify a basic special convex combination")
    p.add_argument('action', choices=['build', 'verify'])
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--eps', required=True)
    p.add_argument('--start', type=int, default=2)
    p.add_argument('--x', help="JSON vector to verify")
    p.set_defaults(handler=cmd_scc)

    p = sub.add_parser('ris', help="build a certified rapidly increasing sequence")
    p.add_argument('action', choices=['build'])
    _add_space(p)
    p.add_argument('--C', default='2')
    p.add_argument('--count', type=int, default=3)
    p.add_argument('--start', type=int, default=4)
    p.set_defaults(handler=cmd_ris)

    p = sub.add_parser('array', help="build an exact array with lower witnesses")
    p.add_argument('action', choices=['build'])
    _add_space(p, threshold=False)
    p.add_argument('--k', type=int, default=2)
    p.add_argument('--l', type=int, default=2)
    p.add_argument('--levels', default='1,2')
    p.add_argument('--eps', default='1')
    p.add_argument('--N', type=int, default=4)
    p.add_argument('--coefficients', help="JSON k x l coefficient matrix")
    p.set_defaults(handler=cmd_array)

    p = sub.add_parser('tilde', help="build a tilde sequence with its witnesses")
    p.add_argument('action', choices=['build'])
    p.add_argument('--j0', type=int, default=1)
    p.add_argument('--count', type=int, default=2)
    p.add_argument('--N', type=int, default=4, help="threshold of the auxiliary tilde set")
    p.add_argument('--first-eps', default=TILDE_FIRST_EPS)
    p.set_defaults(handler=cmd_tilde)

    p = sub.add_parser('schedule', help="validate a schedule")
    p.add_argument('action', choices=['validate'])
    p.add_argument('--horizon', type=int)
    p.add_argument('--schedule', help="JSON schedule")
    p.set_defaults(handler=cmd_schedule)

    p = sub.add_parser('suite', help="run or list verification suites")
    p.add_argument('action', choices=['run', 'list'])
    p.add_argument('name', nargs='?')
    p.add_argument('--format', default='json', choices=FORMATS)
    p.set_defaults(handler=cmd_suite)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=getattr(logging, args.log_level),
                        format='%(asctime)s %(name)s %(levelname)s %(message)s', stream=sys.stderr)
    try:
        config = load_config(args.config)
        return args.handler(args, config)
    except (ConfigError, ParseError, UnknownSuite) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except IwError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == '__main__':
    sys.exit(main())
