###############################################################################
#                                                                             #
#    This program is free software: you can redistribute it and/or modify     #
#    it under the terms of the GNU General Public License as published by     #
#    the Free Software Foundation, either version 3 of the License, or        #
#    (at your option) any later version.                                      #
#                                                                             #
#    This program is distributed in the hope that it will be useful,          #
#    but WITHOUT ANY WARRANTY; without even the implied warranty of           #
#    MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the            #
#    GNU General Public License for more details.                             #
#                                                                             #
#    You should have received a copy of the GNU General Public License        #
#    along with this program. If not, see <http://www.gnu.org/licenses/>.     #
#                                                                             #
###############################################################################

__copyright__ = 'Copyright 2026'
__license__ = 'GPL3'

import sys
import json
import logging
import argparse

from charsum import __version__
from charsum import dickman, expsum, harness, lattice, pretentious
from charsum.characters import build_group
from charsum.common import as_fraction, to_jsonable
from charsum.logger import logger_setup
from charsum.smooth import SmoothSieve
from charsum.exceptions import CharSumError
from charsum.misc.custom_help_formatter import CustomHelpFormatter, NumberListAction


def _emit_json(obj):
    logging.getLogger('no_timestamp').info(json.dumps(to_jsonable(obj), sort_keys=True))


def _emit_csv(header, rows):
    out = logging.getLogger('no_timestamp')
    out.info(','.join(header))
    for row in rows:
        out.info(','.join(str(v) for v in row))


def rho_command(args):
    if args.tail_integral is not None:
        tail = dickman.default_evaluator().rho_tail_integral(args.tail_integral)
        _emit_csv(['B', 'value', 'error_bound', 'flag'],
                  [[tail.B, float(tail.value), float(tail.error_bound), 'approx' if tail.approximate else 'exact']])
        return

    rows = []
    for u in args.u or []:
        r = dickman.rho_evaluate(u)
        rows.append([u, float(r.value), 'approx' if r.approximate else 'exact'])
    _emit_csv(['u', 'value', 'flag'], rows)


def smooth_psi_command(args):
    sieve = SmoothSieve(limit=int(args.x))
    _emit_csv(['x', 'y', 'psi'], [[args.x, args.y, sieve.psi(args.x, args.y)]])


def smooth_logsum_command(args):
    limit = int(args.y ** args.r) + 1
    sieve = SmoothSieve(limit=limit)
    _emit_csv(['y', 's', 'r', 'value'], [[args.y, args.s, args.r, sieve.smooth_log_sum(args.y, args.s, args.r)]])


def char_sweep_command(args):
    group = build_group(args.q)
    x = args.x if args.x is not None else args.q // 2
    sweep = group.sweep_max(x, args.parity, method=args.method)
    _emit_json({'q': sweep.q, 'x': sweep.x, 'parity': sweep.parity,
                'max': sweep.max_abs, 'argmax_ell': sweep.argmax_ell})


def char_polya_command(args):
    group = build_group(args.q)
    rhs = group.polya_rhs(args.ell, args.alpha, args.z)
    _emit_json({'q': args.q, 'ell': args.ell, 'alpha': args.alpha,
                'z': args.z if args.z else group.default_truncation(),
                'rhs': rhs, 'error': group.polya_error(args.ell, args.alpha, args.z)})


def lattice_enum_command(args):
    inst = lattice.make_instance(args.M, args.u)
    result = lattice.enumerate_small_multiples(inst, args.n, as_fraction(args.eta), args.sign)
    _emit_json({'M': inst.M, 'u': inst.numerators, 'result': result})


def lattice_dichotomy_command(args):
    inst = lattice.make_instance(args.M, args.u)
    _emit_json({'M': inst.M, 'u': inst.numerators,
                'result': lattice.dichotomy_check(inst, args.n, as_fraction(args.N))})


def pretend_search_command(args):
    group = build_group(args.q)
    _emit_json(pretentious.search_pretentious(group, args.T, args.eps, args.parity))


def pretend_certify_command(args):
    group = build_group(args.q)
    _emit_json(pretentious.certify(group, args.ell, args.T))


def expsum_constant_command(args):
    rows = []
    for alpha in args.alpha:
        res = expsum.main_constant_residual(alpha, args.sign)
        rows.append([alpha, res.normalized_residual])
    _emit_csv(['alpha', 'residual'], rows)


def harness_run_command(args):
    record = harness.run_experiment(args.config)
    logging.getLogger('timestamp').info('Recorded %d work items (config hash %s).'
                                        % (len(record.payload), record.config_hash[:12]))


def harness_report_command(args):
    rows = harness.report(args.input, args.output)
    if args.plot:
        from charsum.plots.trend_plot import RatioTrendPlot

        plot = RatioTrendPlot()
        plot.plot(rows)
        plot.save_plot(args.plot)
    logging.getLogger('timestamp').info('Summarised %d rows from %s.' % (len(rows), args.input))


def build_parser():
    """Command-line parser with one subcommand per module."""

    parser = argparse.ArgumentParser(prog='charsum',
                                     description='Workbench for lower bounds on long character sums.',
                                     formatter_class=CustomHelpFormatter)
    parser.add_argument('--version', action='version', version='charsum v%s' % __version__)
    parser.add_argument('--silent', action='store_true', help='suppress console output')
    parser.add_argument('--log_dir', default=None, help='directory for log file')
    sub = parser.add_subparsers(dest='command')

    p = sub.add_parser('rho', help='Dickman function values', formatter_class=CustomHelpFormatter)
    p.add_argument('--u', action=NumberListAction, help='comma separated arguments')
    p.add_argument('--tail-integral', '--tail_integral', dest='tail_integral', type=float, default=None, help='integral of rho over [B, inf)')
    p.set_defaults(func=rho_command)

    p = sub.add_parser('smooth', help='smooth number counts and sums', formatter_class=CustomHelpFormatter)
    smooth_sub = p.add_subparsers(dest='action')
    sp = smooth_sub.add_parser('psi', help='count y-smooth n <= x', formatter_class=CustomHelpFormatter)
    sp.add_argument('--x', type=int, required=True)
    sp.add_argument('--y', type=float, required=True)
    sp.set_defaults(func=smooth_psi_command)
    sp = smooth_sub.add_parser('logsum', help='sum of 1/n over y-smooth y^s < n <= y^r',
                               formatter_class=CustomHelpFormatter)
    sp.add_argument('--y', type=float, required=True)
    sp.add_argument('--s', type=float, required=True)
    sp.add_argument('--r', type=float, required=True)
    sp.set_defaults(func=smooth_logsum_command)

    p = sub.add_parser('char', help='character sums modulo a prime', formatter_class=CustomHelpFormatter)
    char_sub = p.add_subparsers(dest='action')
    sp = char_sub.add_parser('sweep', help='largest partial sum over all characters',
                             formatter_class=CustomHelpFormatter)
    sp.add_argument('--q', type=int, required=True)
    sp.add_argument('--x', type=float, default=None, help='sum length (default: q/2)')
    sp.add_argument('--parity', choices=['any', 'odd', 'even'], default='any')
    sp.add_argument('--method', choices=['fft', 'naive'], default='fft')
    sp.set_defaults(func=char_sweep_command)
    sp = char_sub.add_parser('polya', help='truncated Polya expansion', formatter_class=CustomHelpFormatter)
    sp.add_argument('--q', type=int, required=True)
    sp.add_argument('--ell', type=int, required=True)
    sp.add_argument('--alpha', type=float, required=True)
    sp.add_argument('--z', type=int, default=None, help='truncation (default: q^(11/21))')
    sp.set_defaults(func=char_polya_command)

    p = sub.add_parser('lattice', help='small multiples on the torus', formatter_class=CustomHelpFormatter)
    lat_sub = p.add_subparsers(dest='action')
    sp = lat_sub.add_parser('enum', help='enumerate C_{n+-}(eta)', formatter_class=CustomHelpFormatter)
    sp.add_argument('--M', type=int, required=True)
    sp.add_argument('--u', action=NumberListAction, required=True, help='comma separated numerators')
    sp.add_argument('--n', type=int, required=True)
    sp.add_argument('--eta', required=True, help="threshold as 'p/q' or decimal")
    sp.add_argument('--sign', choices=['plus', 'minus'], default='plus')
    sp.set_defaults(func=lattice_enum_command)
    sp = lat_sub.add_parser('dichotomy', help='small relation or many multiples',
                            formatter_class=CustomHelpFormatter)
    sp.add_argument('--M', type=int, required=True)
    sp.add_argument('--u', action=NumberListAction, required=True, help='comma separated numerators')
    sp.add_argument('--n', type=int, required=True)
    sp.add_argument('--N', required=True, help="scale as 'p/q' or decimal")
    sp.set_defaults(func=lattice_dichotomy_command)

    p = sub.add_parser('pretend', help='characters close to 1 on small primes',
                       formatter_class=CustomHelpFormatter)
    pre_sub = p.add_subparsers(dest='action')
    sp = pre_sub.add_parser('search', help='search labels', formatter_class=CustomHelpFormatter)
    sp.add_argument('--q', type=int, required=True)
    sp.add_argument('--T', type=float, required=True)
    sp.add_argument('--eps', type=float, required=True)
    sp.add_argument('--parity', choices=['any', 'odd', 'even'], default='any')
    sp.set_defaults(func=pretend_search_command)
    sp = pre_sub.add_parser('certify', help='certify one label', formatter_class=CustomHelpFormatter)
    sp.add_argument('--q', type=int, required=True)
    sp.add_argument('--ell', type=int, required=True)
    sp.add_argument('--T', type=float, required=True)
    sp.set_defaults(func=pretend_certify_command)

    p = sub.add_parser('expsum', help='oscillatory logarithmic sums', formatter_class=CustomHelpFormatter)
    exp_sub = p.add_subparsers(dest='action')
    sp = exp_sub.add_parser('constant', help='head minus tail against the limiting constant',
                            formatter_class=CustomHelpFormatter)
    sp.add_argument('--alpha', action=NumberListAction, required=True, help='comma separated frequencies')
    sp.add_argument('--sign', choices=['+', '-'], default='+')
    sp.set_defaults(func=expsum_constant_command)

    p = sub.add_parser('harness', help='experiments', formatter_class=CustomHelpFormatter)
    har_sub = p.add_subparsers(dest='action')
    sp = har_sub.add_parser('run', help='run an experiment configuration', formatter_class=CustomHelpFormatter)
    sp.add_argument('--config', required=True, help='JSON configuration file')
    sp.set_defaults(func=harness_run_command)
    sp = har_sub.add_parser('report', help='summarise an experiment file', formatter_class=CustomHelpFormatter)
    sp.add_argument('--input', required=True, help='JSON-lines experiment file')
    sp.add_argument('--output', default=None, help='CSV summary file')
    sp.add_argument('--plot', default=None, help='ratio trend figure (.png, .pdf or .svg)')
    sp.set_defaults(func=harness_report_command)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)

    if not hasattr(args, 'func'):
        parser.print_help()
        sys.exit(0)

    logger_setup(args.log_dir, 'charsum.log', 'charsum', __version__, args.silent)

    try:
        args.func(args)
    except CharSumError as error:
        logging.getLogger('timestamp').error(str(error))
        sys.exit(1)


if __name__ == '__main__':
    main()
