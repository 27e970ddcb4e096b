"""
Command-line entry point: Hurwitz tables, 1-point series, degree 1
invariants and the Toda identity checks, all in exact arithmetic.

Exit codes: 0 success/pass, 1 mismatch or nonzero residual, 2 usage or
resource error.
"""
import argparse
import logging
import sys
from typing import List, Optional

from dotenv import load_dotenv

from solvers.closed_forms import (
    degree0_invariant,
    named_series,
    one_point_invariant,
    one_point_X_closed,
    one_point_Y_closed,
)
from solvers.config import ORACLE_BACKENDS, OUTPUT_FORMATS, Config, get_config
from solvers.degree_one import (
    DescendentKey,
    degree1_consistency_with_Y1,
    degree1_derivation_check,
    degree1_generating_check,
    degree1_invariant,
)
from solvers.errors import CacheSchemaError, OracleBoundError, TodaError
from solvers.formatting import render
from solvers.genus01_verifier import genus1_toda_report, verify_genus0_small_phase
from solvers.hurwitz_oracle import direct_feasible, hurwitz_genus0_closed, hurwitz_oracle
from solvers.series_engine import format_rational
from solvers.table_store import TableStore
from solvers.toda_recursions import (
    hurwitz_by_recursion,
    one_point_by_recursion,
    residual_cell,
    toda_residual_H,
)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2

VERIFY_TARGETS = ('genus0', 'genus1', 'toda-h', 'degree1-gen', 'one-point')
# degree1-gen runs through lambda^8 unless --gmax says otherwise
DEGREE1_GENUS_BOUND = 4

logger = logging.getLogger('toda')


def _configure_logging(verbose: bool) -> None:
    root = logging.getLogger()
    for handler in list(root.handlers):
        if handler.get_name() == 'toda-stderr':
            root.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.set_name('toda-stderr')
    handler.setFormatter(logging.Formatter('%(message)s'))
    root.addHandler(handler)
    root.setLevel(logging.INFO if verbose else logging.WARNING)


def _emit(text: str) -> None:
    sys.stdout.write(text)


def _config_from_args(args) -> Config:
    return get_config(
        lambda_order=getattr(args, 'order', None),
        gmax=getattr(args, 'gmax', None),
        dmax=getattr(args, 'dmax', None),
        oracle_backend=getattr(args, 'backend', None),
        oracle_dmax=getattr(args, 'oracle_dmax', None),
        output_format=getattr(args, 'format', None),
        cache_path=getattr(args, 'cache', None),
        verbose=getattr(args, 'verbose', False),
    )


def _oracle_value(g: int, d: int, config: Config):
    """
    Oracle value for one cell; with backend 'both' the two backends must agree
    wherever direct enumeration is feasible, and dp-sieve stands alone elsewhere.
    """
    if config.oracle_backend != 'both':
        return hurwitz_oracle(g, d, config.oracle_backend, config.oracle_dmax), True
    dp = hurwitz_oracle(g, d, 'dp-sieve', config.oracle_dmax)
    if not direct_feasible(d, 2 * g + 2 * d - 2):
        logger.info(f"⏭️  Direct enumeration skipped at (g={g}, d={d})")
        return dp, True
    direct = hurwitz_oracle(g, d, 'direct', config.oracle_dmax)
    if dp != direct:
        logger.error(f"❌ Oracle backends disagree at (g={g}, d={d}): dp-sieve {dp}, direct {direct}")
    return dp, dp == direct


def _update_cache(table, config: Config) -> None:
    """Save the table unless the cache already covers its bounds"""
    store = TableStore(config.cache_path)
    try:
        cached = store.load_covering(table.gmax, table.dmax)
    except CacheSchemaError as e:
        logger.warning(f"⚠️  Replacing unreadable cache: {e}")
        cached = None
    if cached is None:
        store.save(table)
    else:
        logger.info(f"📁 Cache at {config.cache_path} already covers gmax={table.gmax}, dmax={table.dmax}")


def cmd_hurwitz(args, config: Config) -> int:
    method = args.method
    table = None
    if method in ('recursion', 'both'):
        table = hurwitz_by_recursion(config.gmax, config.dmax)
        _update_cache(table, config)

    header = ['g', 'd']
    rows = []
    all_match = True
    for g in range(config.gmax + 1):
        for d in range(1, config.dmax + 1):
            if method == 'recursion':
                rows.append([g, d, table[(g, d)]])
                continue
            oracle, backends_agree = _oracle_value(g, d, config)
            if method == 'oracle':
                all_match = all_match and backends_agree
                rows.append([g, d, oracle])
            else:
                match = backends_agree and oracle == table[(g, d)]
                all_match = all_match and match
                rows.append([g, d, table[(g, d)], oracle, match])
    header += {'recursion': ['H'], 'oracle': ['H'], 'both': ['recursion', 'oracle', 'match']}[method]
    _emit(render(header, rows, config.output_format,
                 meta={'gmax': config.gmax, 'dmax': config.dmax, 'method': method}))
    return EXIT_OK if all_match else EXIT_MISMATCH


def _one_point_invariants(args, config: Config) -> int:
    # single invariants <tau_{2g+2d-2}(y)>_{g,d} or <tau_{2g+2d-1}(x)>_{g,d}, d = 0..dmax
    rows = [[d, one_point_invariant(args.series.lower(), args.genus, d)] for d in range(config.dmax + 1)]
    _emit(render(['d', args.series], rows, config.output_format,
                 meta={'series': args.series, 'genus': args.genus}))
    return EXIT_OK


def cmd_one_point(args, config: Config) -> int:
    if args.genus is not None:
        return _one_point_invariants(args, config)
    kind = args.series
    order = config.lambda_order
    recursion = one_point_by_recursion(config.dmax, order) if args.source in ('recursion', 'both') else None
    closed_builder = one_point_Y_closed if kind == 'Y' else one_point_X_closed
    pick = 0 if kind == 'Y' else 1

    rows = []
    all_match = True
    for d in range(1, config.dmax + 1):
        rec = recursion[d][pick] if recursion else None
        closed = closed_builder(d, order) if args.source in ('closed', 'both') else None
        for power in range(order + 1):
            if args.source == 'both':
                match = rec.coeff(power) == closed.coeff(power)
                all_match = all_match and match
                rows.append([d, power, rec.coeff(power), closed.coeff(power), match])
            else:
                rows.append([d, power, (rec or closed).coeff(power)])
    header = ['d', 'power'] + (['recursion', 'closed', 'match'] if args.source == 'both' else [kind])
    _emit(render(header, rows, config.output_format,
                 meta={'series': kind, 'order': order, 'source': args.source}))
    return EXIT_OK if all_match else EXIT_MISMATCH


def cmd_degree_one(args, config: Config) -> int:
    key = DescendentKey.parse(args.key)
    value = degree1_invariant(key, args.genus)
    if config.output_format == 'table':
        _emit(format_rational(value) + "\n")
    else:
        genus = args.genus if args.genus is not None else key.genus
        _emit(render(['key', 'genus', 'value'], [[str(key), '' if genus is None else str(genus), value]],
                     config.output_format))
    return EXIT_OK


def cmd_degree_zero(args, config: Config) -> int:
    key = DescendentKey.parse(args.key)
    value = degree0_invariant(key.indices, args.b, args.genus)
    if config.output_format == 'table':
        _emit(format_rational(value) + "\n")
    else:
        _emit(render(['x', 'b', 'genus', 'value'], [[str(key), args.b, args.genus, value]],
                     config.output_format))
    return EXIT_OK


def cmd_series(args, config: Config) -> int:
    series = named_series(args.name, config.lambda_order)
    rows = [[power, value] for power, value in enumerate(series.coeffs)]
    _emit(render(['power', args.name], rows, config.output_format,
                 meta={'name': args.name, 'order': series.order}))
    return EXIT_OK


def _verdict(passed: bool, detail: str = '') -> int:
    _emit("PASS\n" if passed else f"FAIL {detail}\n")
    return EXIT_OK if passed else EXIT_MISMATCH


def _verify_toda_h(config: Config) -> int:
    store = TableStore(config.cache_path)
    table = store.load_covering(config.gmax, config.dmax)
    if table is None:
        table = hurwitz_by_recursion(config.gmax, config.dmax)
        store.save(table)
    residual = toda_residual_H(table, config.gmax, config.dmax)
    for q_degree, power, value in residual.nonzero_cells():
        g, d, lam = residual_cell(q_degree, power)
        return _verdict(False, f"at (g={g}, d={d}, lambda^{lam}): residual {format_rational(value)}")
    return _verdict(True)


def cmd_verify(args, config: Config) -> int:
    target = args.target
    if target == 'genus0':
        if not verify_genus0_small_phase():
            return _verdict(False, "exp(F_x0x0) != F_y0y0")
        table = hurwitz_by_recursion(0, config.dmax)
        for d in range(1, config.dmax + 1):
            if table[(0, d)] != hurwitz_genus0_closed(d):
                return _verdict(False, f"at H_{{0,{d}}}: recursion {format_rational(table[(0, d)])} "
                                       f"vs closed {format_rational(hurwitz_genus0_closed(d))}")
        return _verdict(True)
    if target == 'genus1':
        report = genus1_toda_report()
        _emit(f"lhs terms: {report.lhs.term_count()}\n")
        _emit(f"rhs terms: {report.rhs.term_count()}\n")
        _emit(f"residual: {report.residual.canonical()}\n")
        return _verdict(report.passed, f"residual has {report.residual.term_count()} terms")
    if target == 'toda-h':
        return _verify_toda_h(config)
    if target == 'degree1-gen':
        genus_bound = args.gmax if args.gmax is not None else DEGREE1_GENUS_BOUND
        report = degree1_generating_check(genus_bound, args.max_index)
        if not report.passed:
            cell, value = report.first_offending()
            return _verdict(False, f"at monomial {cell}: residual {format_rational(value)}")
        if not degree1_consistency_with_Y1(config.lambda_order):
            return _verdict(False, "degree 1 invariants disagree with Y_1")
        return _verdict(degree1_derivation_check(config.lambda_order), "kernel * Y_0 != S")
    if target == 'one-point':
        order = config.lambda_order
        for d, (y_rec, x_rec) in enumerate(one_point_by_recursion(config.dmax, order)):
            if d == 0:
                continue
            for label, rec, closed in (('Y', y_rec, one_point_Y_closed(d, order)),
                                       ('X', x_rec, one_point_X_closed(d, order))):
                for power in range(order + 1):
                    if rec.coeff(power) != closed.coeff(power):
                        return _verdict(False, f"at {label}_{d} lambda^{power}: recursion "
                                               f"{format_rational(rec.coeff(power))} vs closed "
                                               f"{format_rational(closed.coeff(power))}")
        return _verdict(True)
    raise ValueError(f"unknown verify target {target!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', choices=OUTPUT_FORMATS, help='output format (default: table)')
    common.add_argument('--cache', help='Hurwitz table cache path (env TODA_CACHE_PATH)')
    common.add_argument('--verbose', action='store_true', help='log progress to stderr')

    bounds = argparse.ArgumentParser(add_help=False)
    bounds.add_argument('--gmax', type=int, help='largest genus (default: 3)')
    bounds.add_argument('--dmax', type=int, help='largest degree (default: 5)')

    order = argparse.ArgumentParser(add_help=False)
    order.add_argument('--order', type=int, help='lambda truncation order (default: 20)')

    parser = argparse.ArgumentParser(
        prog='toda-p1',
        description='Exact Toda recursions for the Gromov-Witten theory of the sphere and simple Hurwitz numbers',
    )
    sub = parser.add_subparsers(dest='command', required=True)

    hurwitz = sub.add_parser('hurwitz', parents=[common, bounds], help='table of H_{g,d}')
    hurwitz.add_argument('--method', choices=('recursion', 'oracle', 'both'), default='recursion')
    hurwitz.add_argument('--backend', choices=ORACLE_BACKENDS, help='oracle backend (default: dp-sieve)')
    hurwitz.add_argument('--oracle-dmax', dest='oracle_dmax', type=int,
                         help='oracle resource bound (env TODA_ORACLE_DMAX, default 7)')

    one_point = sub.add_parser('one-point', parents=[common, bounds, order], help='1-point series Y_d or X_d')
    one_point.add_argument('--series', choices=('Y', 'X'), default='Y')
    one_point.add_argument('--source', choices=('recursion', 'closed', 'both'), default='both')
    one_point.add_argument('--genus', type=int,
                           help='print single invariants at this genus for d = 0..dmax instead of series')

    degree_one = sub.add_parser('degree-one', parents=[common], help='degree 1 invariant of a key like 2,2,4')
    degree_one.add_argument('key', help='comma-separated descendent indices')
    degree_one.add_argument('--genus', type=int, help='genus (default: half the index sum)')

    degree_zero = sub.add_parser('degree-zero', parents=[common],
                                 help='degree 0 invariant <tau_a(x)... tau_b(y)>_{g,0}')
    degree_zero.add_argument('key', help='comma-separated x-insertion indices (empty string for none)')
    degree_zero.add_argument('--b', type=int, required=True, help='index of the single y-insertion')
    degree_zero.add_argument('--genus', type=int, required=True)

    verify = sub.add_parser('verify', parents=[common, bounds, order], help='run an identity check')
    verify.add_argument('target', choices=VERIFY_TARGETS)
    verify.add_argument('--max-index', dest='max_index', type=int, default=8,
                        help='largest y-index for degree1-gen (even, default: 8)')

    series = sub.add_parser('series', parents=[common, order], help='dump a named closed-form series')
    series.add_argument('name', help='sinh, kernel, point, Y0, X0, Y<d> or X<d>')

    return parser


COMMANDS = {
    'hurwitz': cmd_hurwitz,
    'one-point': cmd_one_point,
    'degree-one': cmd_degree_one,
    'degree-zero': cmd_degree_zero,
    'verify': cmd_verify,
    'series': cmd_series,
}


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv()
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    try:
        config = _config_from_args(args)
        return COMMANDS[args.command](args, config)
    except OracleBoundError as e:
        logger.error(f"❌ Resource bound: {e}")
        return EXIT_USAGE
    except (TodaError, ValueError) as e:
        logger.error(f"❌ {e}")
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
