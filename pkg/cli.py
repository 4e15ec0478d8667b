import argparse
import logging
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), 'src'))

from core import (HCSError, EXIT_OK, EXIT_NUMERIC, banner, configure_logging, dumps, exit_code_for,
                  load_run_config, read_json, write_json)
from core.config import EMIT_KINDS, SYSTEMS
from core.verify import suite_names
from core import commands

logger = logging.getLogger('cli')


def _common(parser: argparse.ArgumentParser):
    parser.add_argument('--json', action='store_true', help='machine-readable JSON on stdout')
    parser.add_argument('--seed', type=int, help='seed for every randomized check')
    parser.add_argument('--tol', type=float, help='numeric tolerance')
    parser.add_argument('--N', type=int, help='grid size')
    parser.add_argument('--n', type=int, help='order n (or rank)')
    parser.add_argument('--config', help='static JSON configuration file')
    parser.add_argument('--output-dir', help='directory for written files')
    parser.add_argument('-v', '--verbose', action='store_true')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='hcs', description='Higher complex structures toolkit')
    verbs = parser.add_subparsers(dest='command', required=True)

    p = verbs.add_parser('verify', help='run a verification suite')
    p.add_argument('suite', choices=suite_names())
    p.add_argument('--mu1', help='mu_1 expression for the spectral-lagrangian suite')
    p.add_argument('--report', help='also write the report to this JSON file')
    _common(p)

    p = verbs.add_parser('hilbert', help='chart, operators and support of an ideal')
    p.add_argument('--points', help='JSON file with a list of [x, y] points')
    p.add_argument('--ideal', help='ideal JSON file {generators, codim}')
    p.add_argument('--table', action='store_true', help='Poisson table of order n')
    _common(p)

    p = verbs.add_parser('conj', help='conjugated structure coordinates')
    p.add_argument('--mubar', help='comma separated mubar_2..mubar_n')
    p.add_argument('--tbar', help='comma separated tbar_2..tbar_n')
    _common(p)

    p = verbs.add_parser('gl2', help='GL2(R) action on a big-cell point')
    p.add_argument('--point', required=True, help='big-cell point JSON file')
    p.add_argument('--g', required=True, help='A,B,C,D real matrix entries or a JSON file')
    _common(p)

    p = verbs.add_parser('lie', help='slice points of classical Lie algebras')
    p.add_argument('--type', default='A2')
    p.add_argument('--t', help='comma separated slice coordinates')
    p.add_argument('--mu', help='comma separated centralizer coordinates')
    p.add_argument('--tau')
    p.add_argument('--sigma')
    p.add_argument('--genus', type=int)
    _common(p)

    p = verbs.add_parser('gauge', help='parabolic coordinates of the lambda family at a point')
    p.add_argument('--input', help='JSON file with Phi1, A1 and mu')
    _common(p)

    p = verbs.add_parser('solve', help='Newton solve of a standard-form system')
    p.add_argument('system', choices=SYSTEMS)
    p.add_argument('--t', help='constant holomorphic differential')
    p.add_argument('--boundary', help='field file with Dirichlet data')
    p.add_argument('--prefix', help='output file prefix')
    _common(p)

    p = verbs.add_parser('emit', help='write plot data as CSV')
    p.add_argument('kind', choices=EMIT_KINDS)
    p.add_argument('--input', help='input field file (or gauge JSON for lambda-profile)')
    p.add_argument('--output', help='output CSV path')
    p.add_argument('--field', help='field name for radial-profile')
    p.add_argument('--eps', type=float, help='jet scaling for sheet-csv')
    _common(p)
    return parser


def _split(text):
    return [v.strip() for v in text.split(',')] if text else None


def _params(args) -> dict:
    command = args.command
    if command == 'hilbert':
        params = {'table': args.table}
        if args.points:
            data = read_json(args.points)
            params['points'] = data.get('points') if isinstance(data, dict) else data
        if args.ideal:
            params['ideal'] = read_json(args.ideal)
        return params
    if command == 'conj':
        return {'mubar': args.mubar, 'tbar': args.tbar}
    if command == 'gl2':
        g = read_json(args.g) if os.path.exists(args.g) else [float(v) for v in _split(args.g)]
        return {'point': read_json(args.point), 'g': g}
    if command == 'lie':
        params = {'type': args.type, 't': _split(args.t), 'mu': _split(args.mu), 'genus': args.genus}
        for key in ('tau', 'sigma'):
            if getattr(args, key) is not None:
                params[key] = getattr(args, key)
        return params
    if command == 'gauge':
        return read_json(args.input) if args.input else {}
    if command == 'solve':
        return {'system': args.system, 't': args.t, 'boundary': args.boundary, 'prefix': args.prefix}
    if command == 'emit':
        params = {'output': args.output, 'field': args.field}
        if args.eps is not None:
            params['eps'] = args.eps
        if args.input and args.kind == 'lambda-profile':
            params.update(read_json(args.input))
        else:
            params['input'] = args.input
        return params
    return {}


def _dispatch(config, args) -> dict:
    if args.command == 'verify':
        return commands.run_verify(config, args.suite)
    if args.command == 'emit':
        return commands.run_emit(config, args.kind, _params(args))
    runner = getattr(commands, f'run_{args.command}')
    return runner(config, _params(args))


def _summary(command: str, result: dict):
    logger.info(banner(f"hcs {command}"))
    if command == 'verify':
        logger.info("Cases: %d  passed: %d  failed: %d", result['cases'], result['pass'], result['fail'])
        logger.info("Worst residual: %.3e", result['worst_residual'])
        for case in result.get('results', []):
            if not case['passed']:
                logger.info("  FAILED %s", case['case'])
        return
    for key in ('iterations', 'residual', 'flatness', 'status', 'cyclic', 'in_hilb', 'files'):
        if key in result:
            logger.info("%s: %s", key, result[key])
    logger.info("=" * 50)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose, args.json)
    overrides = {'command': args.command, 'seed': args.seed, 'tol': args.tol, 'N': args.N, 'n': args.n,
                 'output_dir': args.output_dir}
    if args.command == 'verify' and args.mu1:
        overrides['inputs'] = {'mu1': args.mu1}
    try:
        config = load_run_config(args.config, overrides)
        result = _dispatch(config, args)
        if args.command == 'verify' and args.report:
            write_json(args.report, result)
    except HCSError as e:
        logger.error("Error: %s", e.message)
        if args.json:
            print(dumps({'success': False, 'error': e.message, 'details': e.details}))
        return e.exit_code
    except Exception as e:
        logger.exception("Internal error in %s", args.command)
        if args.json:
            print(dumps({'success': False, 'error': f'internal error: {e}',
                         'details': {'type': type(e).__name__}}))
        return exit_code_for(e)

    if args.json:
        print(dumps(result))
    else:
        _summary(args.command, result)
    if args.command == 'verify' and result['fail']:
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
