#
# This file is part of motzkinfree.
#
# SPDX-License-Identifier: LGPL-3.0-only
#

"""motzkinfree main class."""

import argparse
import builtins
import sys
from logging import DEBUG

from pydantic import VERSION as pydantic_version

from motzkinfree import __version__
from motzkinfree.config import Config
from motzkinfree.functionals import check_centered
from motzkinfree.globals import FREE, MotzkinError, SchemaError, fraction_str
from motzkinfree.logger import LOG_FILENAME, logger, set_suites_level
from motzkinfree.motzkin import (
    classify_path,
    count_by_local_maxima,
    enumerate_words,
    from_step_word,
    is_adapted,
    level_return_partition,
    local_maxima,
    parse_word,
    step_word,
    two_maxima_closed_form,
)
from motzkinfree.oracle import nc_oracle, oracle_moment
from motzkinfree.outputs.report_csv import MotzkinReportCsv
from motzkinfree.outputs.report_json import MotzkinReportJson
from motzkinfree.problem import echo, parse_problem
from motzkinfree.products import as_factors, higher_moment, product_moment, word_contributions
from motzkinfree.suites import SUITES, SuiteParams, run_suites
from motzkinfree.timer import Counter

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def positive_int(value):
    ret = int(value)
    if ret < 1:
        raise argparse.ArgumentTypeError(f'{value} is not a positive integer')
    return ret


def natural_int(value):
    ret = int(value)
    if ret < 0:
        raise argparse.ArgumentTypeError(f'{value} is negative')
    return ret


def jet_str(value):
    """Coefficient list of a jet as rational strings."""
    return [fraction_str(c) for c in value.coeffs]


class MotzkinMain:
    """Main class to manage a motzkinfree run."""

    # Examples of use
    example_of_use = """
Examples of use:
  List the reduced Motzkin words of length 5:
    $ motzkinfree enumerate --n 5

  Show the level return partition of a word:
    $ motzkinfree partition --word 123332112121

  Check a word against a tuple of labels:
    $ motzkinfree adapted --word 12321 --labels A,B,C,B,A

  Count the words of length 6 with two local maxima:
    $ motzkinfree count --n 6 --local-maxima 2

  Evaluate the queries of a problem file and compare with the oracles:
    $ motzkinfree eval --input problem.json --check

  Run a verification suite:
    $ motzkinfree verify --suite pyramid --n-max 9 --cases 50 --seed 7

  Run every suite, CSV report without timings:
    $ motzkinfree --format csv --no-timing verify --suite all
"""

    def __init__(self, argv=None):
        """Manage the command line arguments."""
        self.config = None
        self.args = self.parse_args(argv)

    def version_msg(self):
        """Return the version message."""
        version = f'motzkinfree version:\t{__version__}\n'
        version += f'Pydantic version:\t{pydantic_version}\n'
        version += f'Log file:\t\t{LOG_FILENAME}\n'
        return version

    def init_args(self):
        """Init all the command line arguments."""
        parser = argparse.ArgumentParser(
            prog='motzkinfree',
            conflict_handler='resolve',
            formatter_class=argparse.RawDescriptionHelpFormatter,
            epilog=self.example_of_use,
        )
        parser.add_argument('-V', '--version', action='version', version=self.version_msg())
        parser.add_argument('-d', '--debug', action='store_true', default=False, dest='debug', help='enable debug mode')
        parser.add_argument('-C', '--config', dest='conf_file', help='path to the configuration file')
        parser.add_argument('--format', dest='format', choices=['json', 'csv'], default=None, help='report format')
        parser.add_argument('--seed', dest='seed', type=int, default=None, help='seed of the random instances')
        parser.add_argument(
            '--no-timing',
            action='store_true',
            default=False,
            dest='no_timing',
            help='omit timings so that reports are identical across runs',
        )

        commands = parser.add_subparsers(dest='command', metavar='command')
        commands.required = True

        enumerate_cmd = commands.add_parser('enumerate', help='list the reduced Motzkin words of length n')
        enumerate_cmd.add_argument('--n', dest='n', type=positive_int, required=True, help='word length')
        style = enumerate_cmd.add_mutually_exclusive_group()
        style.add_argument('--letters', action='store_const', const='letters', dest='style', help='letter words (default)')
        style.add_argument('--steps', action='store_const', const='steps', dest='style', help='U/H/D step words')

        for name, helper in (
            ('partition', 'level return partition and local maxima of a word'),
            ('classify', 'flat, pyramid, pyramid then flat or other'),
            ('adapted', 'check the adaptedness of a word to labels'),
        ):
            cmd = commands.add_parser(name, help=helper)
            cmd.add_argument('--word', dest='word', required=True, help="word as '12321' or '1,2,10,...'")
            cmd.add_argument('--steps', action='store_true', default=False, dest='steps', help='read the word as U/H/D steps')
            if name == 'adapted':
                cmd.add_argument('--labels', dest='labels', required=True, help='comma-separated labels')

        count_cmd = commands.add_parser('count', help='count the words of length n with k local maxima')
        count_cmd.add_argument('--n', dest='n', type=positive_int, required=True, help='word length')
        count_cmd.add_argument('--local-maxima', dest='local_maxima', type=natural_int, required=True, help='number k')

        eval_cmd = commands.add_parser('eval', help='evaluate the queries of a problem file')
        eval_cmd.add_argument('--input', dest='input', required=True, help='JSON problem file')
        eval_cmd.add_argument(
            '--format', dest='format', choices=['json', 'csv'], default=argparse.SUPPRESS, help='report format'
        )
        eval_cmd.add_argument('--check', action='store_true', default=False, dest='check', help='compare with the oracles')
        eval_cmd.add_argument(
            '--prune',
            action='store_true',
            default=False,
            dest='prune',
            help='skip the words with too many local maxima (centered factors)',
        )
        eval_cmd.add_argument(
            '--words', action='store_true', default=False, dest='words', help='report the nonzero word contributions'
        )
        eval_cmd.add_argument('--echo', action='store_true', default=False, dest='echo', help='echo the parsed problem')

        verify_cmd = commands.add_parser('verify', help='run verification suites')
        verify_cmd.add_argument('--suite', dest='suite', choices=list(SUITES) + ['all'], default=None, help='suite name ([verify] suites by default)')
        verify_cmd.add_argument('--n-max', dest='n_max', type=positive_int, default=None, help='largest word length')
        verify_cmd.add_argument('--cases', dest='cases', type=positive_int, default=None, help='random cases per suite')
        verify_cmd.add_argument('--order', dest='order', type=natural_int, default=None, help='jet order')
        verify_cmd.add_argument('--seed', dest='seed', type=int, default=argparse.SUPPRESS, help='seed')

        return parser

    def parse_args(self, argv=None):
        """Parse command line arguments."""
        args = self.init_args().parse_args(argv)

        # Load the configuration file, if it exists
        self.config = Config(args.conf_file)

        # Init debug mode
        self.init_debug(args)

        # Command line wins over the configuration file
        if args.format is None:
            args.format = self.config.get_value('report', 'format', default='json')
        if args.seed is None:
            args.seed = self.config.get_int_value('global', 'seed', default=0)

        return args

    def init_debug(self, args):
        """Init debug mode and the level of the suites logger."""
        if args.debug:
            logger.setLevel(DEBUG)
            set_suites_level(DEBUG)
            return
        level = self.config.get_value('verify', 'log_level', default='INFO')
        try:
            set_suites_level(level)
        except ValueError:
            logger.warning(f"Unknown log_level '{level}' in the [verify] section, keep INFO")
            set_suites_level('INFO')

    def get_output(self):
        if self.args.format == 'csv':
            return MotzkinReportCsv(config=self.config, args=self.args)
        return MotzkinReportJson(config=self.config, args=self.args)

    def serve(self):
        """Run the selected command and return the exit code."""
        output = self.get_output()
        command = getattr(self, 'cmd_' + self.args.command)
        try:
            code, report, rows = command()
        except MotzkinError as err:
            logger.critical(f'{type(err).__name__}: {err}')
            print(f'motzkinfree: error: {err}', file=sys.stderr)
            return EXIT_USAGE
        except OSError as err:
            logger.critical(f'Can not read {err.filename}: {err.strerror}')
            print(f'motzkinfree: error: {err}', file=sys.stderr)
            return EXIT_USAGE
        output.update(report, rows)
        output.end()
        return code

    # Commands return (exit code, report, CSV rows)

    def _word(self):
        if self.args.steps:
            return from_step_word(self.args.word)
        return parse_word(self.args.word)

    def cmd_enumerate(self):
        steps = self.args.style == 'steps'
        words = [step_word(w) if steps else str(w) for w in enumerate_words(self.args.n)]
        report = {'n': self.args.n, 'count': len(words), 'words': words}
        return EXIT_OK, report, [{'word': w} for w in words]

    def cmd_partition(self):
        w = self._word()
        partition = level_return_partition(w)
        blocks = [{'level': block.level, 'positions': list(block.positions)} for block in partition]
        report = {
            'word': str(w),
            'height': w.height,
            'blocks': blocks,
            'local_maxima': local_maxima(w),
        }
        rows = [{'level': block.level, 'block': str(block), 'singleton': block.is_singleton} for block in partition]
        return EXIT_OK, report, rows

    def cmd_adapted(self):
        w = self._word()
        labels = [label.strip() for label in self.args.labels.split(',')]
        result = is_adapted(w, labels)
        report = {'word': str(w), 'labels': labels, 'adapted': result.adapted}
        if result.violation is not None:
            report['violation'] = result.violation.as_dict()
            report['reason'] = result.violation.describe()
        return EXIT_OK, report, [{'word': str(w), 'adapted': result.adapted, 'reason': report.get('reason', '')}]

    def cmd_classify(self):
        w = self._word()
        path = classify_path(w)
        report = {'word': str(w), 'class': path.kind, 'pyramid_compatible': path.pyramid_compatible}
        if path.middle is not None:
            report['middle'] = path.middle
        if path.split is not None:
            report['split'] = path.split
        return EXIT_OK, report, None

    def cmd_count(self):
        n, k = self.args.n, self.args.local_maxima
        report = {'n': n, 'local_maxima': k, 'count': count_by_local_maxima(n, k)}
        if k == 2:
            report['closed_form'] = two_maxima_closed_form(n)
        return EXIT_OK, report, None

    def cmd_eval(self):
        counter = Counter()
        with builtins.open(self.args.input, 'rb') as f:
            document = f.read()
        default_order = self.config.get_int_value('global', 'jet_order', default=3)
        problem = parse_problem(document, default_order=default_order)
        logger.info(f'Evaluate {len(problem.queries)} queries in {problem.mode} mode (jet order {problem.jet_order})')

        queries, rows = [], []
        passed = True
        for i, query in enumerate(problem.queries):
            entry, query_rows = self.eval_query(problem.ctx, i, query)
            queries.append(entry)
            rows.extend(query_rows)
            if 'check' in entry:
                passed = passed and entry['check']['passed']

        report = {'mode': problem.mode, 'jet_order': problem.jet_order, 'queries': queries}
        if self.args.echo:
            report['problem'] = echo(problem)
        if self.args.check:
            report['passed'] = passed
        report['timing'] = {'seconds': round(counter.get(), 3)}
        return (EXIT_OK if passed else EXIT_FAILURE), report, rows

    def eval_query(self, ctx, index, query):
        """Report entry and CSV rows of one query."""
        f = as_factors(query)
        entry = {'query': index, 'length': len(f)}
        rows = []

        moment = product_moment(ctx, f)
        if query.wants_moment:
            if ctx.mode == FREE:
                entry['moment'] = jet_str(moment)
                rows.append({'query': index, 'output': 'moment', 'c': entry['moment']})
            else:
                entry['moment'] = {'phi': jet_str(moment.phi), 'psi': jet_str(moment.psi)}
                rows.append({'query': index, 'output': 'moment.phi', 'c': entry['moment']['phi']})
                rows.append({'query': index, 'output': 'moment.psi', 'c': entry['moment']['psi']})

        orders = query.derivative_orders
        if orders:
            centered = True
            if self.args.prune:
                centered = check_centered(ctx, f, override=True)
                if not centered:
                    entry['outside_hypotheses'] = True
            derivatives = {}
            for m in orders:
                phi = higher_moment(ctx, f, m, prune=self.args.prune, override=True)
                if ctx.mode == FREE:
                    derivatives[str(m)] = fraction_str(phi)
                    rows.append({'query': index, 'output': f'derivative:{m}', 'value': derivatives[str(m)]})
                else:
                    psi = higher_moment(ctx.psi_context(), f, m)
                    derivatives[str(m)] = {'phi': fraction_str(phi), 'psi': fraction_str(psi)}
                    rows.append({'query': index, 'output': f'derivative:{m}.phi', 'value': fraction_str(phi)})
                    rows.append({'query': index, 'output': f'derivative:{m}.psi', 'value': fraction_str(psi)})
            entry['derivatives'] = derivatives

            if self.args.words:
                entry['words'] = {
                    str(m): [{'word': str(w), 'value': fraction_str(v)} for w, v in word_contributions(ctx, f, m)]
                    for m in orders
                }

        if self.args.check:
            entry['check'] = self.check_query(ctx, f, moment, entry.get('derivatives', {}))
            rows.append({'query': index, 'output': 'check', 'value': entry['check']['passed']})
        return entry, rows

    def check_query(self, ctx, f, moment, derivatives):
        """Compare the engine values with the oracles."""
        memoize = self.config.get_bool_value('oracle', 'memoize', default=True)
        oracle = oracle_moment(ctx, f, memoize=memoize)
        passed = oracle == moment
        ret = {}
        if ctx.mode == FREE:
            ret['oracle'] = jet_str(oracle)
            cumulants = nc_oracle(ctx, f)
            ret['cumulants'] = jet_str(cumulants)
            passed = passed and cumulants == moment
            phi_jet = oracle
        else:
            ret['oracle'] = {'phi': jet_str(oracle.phi), 'psi': jet_str(oracle.psi)}
            phi_jet = oracle.phi
        for m, value in derivatives.items():
            expected = fraction_str(phi_jet.derivative(int(m)))
            got = value if ctx.mode == FREE else value['phi']
            if got != expected:
                logger.error(f'Derivative {m}: engine {got}, oracle {expected}')
                passed = False
        if not passed:
            logger.error(f'Engine and oracle disagree on a product of {len(f)} factors')
        ret['passed'] = passed
        return ret

    def suite_names(self):
        """Suites selected by --suite, or by the [verify] suites list."""
        if self.args.suite is not None:
            selected = [self.args.suite]
        else:
            selected = self.config.get_list_value('verify', 'suites', default=['all'])
        if 'all' in selected:
            return list(SUITES)
        for name in selected:
            if name not in SUITES:
                raise SchemaError('verify.suites', f"unknown suite '{name}'")
        return selected

    def cmd_verify(self):
        names = self.suite_names()

        def params_for(name):
            return SuiteParams(
                n_max=self.args.n_max or self.config.get_suite_int(name, 'n_max'),
                cases=self.args.cases or self.config.get_suite_int(name, 'cases'),
                seed=self.args.seed,
                order=self.args.order if self.args.order is not None else self.config.get_suite_int(name, 'order'),
            )

        results = run_suites(names, params_for)
        passed = all(r.passed for r in results)
        report = {
            'seed': self.args.seed,
            'passed': passed,
            'suites': [r.as_dict() for r in results],
            'timing': {r.name: round(r.seconds, 3) for r in results},
        }
        rows = [
            {'suite': r.name, 'passed': r.passed, 'cases': r.cases, 'seconds': round(r.seconds, 3)} for r in results
        ]
        return (EXIT_OK if passed else EXIT_FAILURE), report, rows


def run(argv=None):
    """Parse argv, run the command and return the exit code."""
    try:
        core = MotzkinMain(argv)
    except SystemExit as err:
        # argparse exits with 2 on usage errors, 0 on --help and --version
        return err.code if isinstance(err.code, int) else EXIT_USAGE
    return core.serve()
