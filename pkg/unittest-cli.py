#!/usr/bin/env python
#
# This file is part of motzkinfree.
#
# SPDX-License-Identifier: LGPL-3.0-only
#

"""motzkinfree unitary tests suite for problem documents and the command line."""

import contextlib
import copy
import io
import logging
import os
import tempfile
import unittest
from fractions import Fraction

from motzkinfree import __version__
from motzkinfree.globals import DocumentSyntaxError, DuplicateLabel, SchemaError, json_dumps, json_loads
from motzkinfree.logger import SUITES_LOGGER, set_suites_level
from motzkinfree.main import EXIT_OK, EXIT_USAGE, run
from motzkinfree.problem import echo, parse_problem
from motzkinfree.suites import SUITES

# Global variables
# =================

# x is semicircular with phi'(x) = 1, y - 1 is centered with phi'(y) = 3
FREE_PROBLEM = {
    'mode': 'free',
    'jet_order': 1,
    'algebras': [
        {
            'label': 'A',
            'generators': ['x'],
            'phi': {'law': 'semicircle', 'params': {'variance': '1'}, 'derivatives': {'1': {'x': '1'}}},
        },
        {
            'label': 'B',
            'generators': ['y'],
            'phi': {'moments': {'y': '1', 'y.y': '2/4'}, 'derivatives': {'1': {'y': '3'}}},
        },
    ],
    'queries': [
        {
            'factors': [
                {'label': 'A', 'poly': [{'word': 'x'}]},
                {'label': 'B', 'poly': [{'word': 'y'}, {'coeff': '-1'}]},
                {'label': 'A', 'poly': [{'word': 'x'}]},
            ],
            'compute': ['moment', 'derivative:1'],
        }
    ],
}

CFREE_PROBLEM = {
    'mode': 'cfree',
    'jet_order': 1,
    'algebras': [
        {
            'label': 'A',
            'generators': ['x'],
            'phi': {'moments': {'x': 0, 'x.x': 2}, 'derivatives': {'1': {'x': 1, 'x.x': 3}}},
            'psi': {'moments': {'x': 1, 'x.x': 4}, 'derivatives': {'1': {'x': 1}}},
        },
        {
            'label': 'B',
            'generators': ['y'],
            'phi': {'moments': {'y': 3, 'y.y': 1}, 'derivatives': {'1': {'y': 5, 'y.y': 1}}},
            'psi': {'moments': {'y': 2, 'y.y': 6}, 'derivatives': {'1': {'y': 7}}},
        },
    ],
    'queries': [
        {
            'factors': [
                {'label': 'A', 'poly': [{'word': 'x'}]},
                {'label': 'B', 'poly': [{'word': 'y'}, {'coeff': '-2'}]},
                {'label': 'A', 'poly': [{'word': 'x'}, {'coeff': '-1'}]},
            ],
            'compute': ['moment', 'derivative:1'],
        }
    ],
}


def run_cli(*argv):
    """Run the command line and return the exit code and stdout."""
    out = io.StringIO()
    with contextlib.redirect_stdout(out):
        code = run(list(argv))
    return code, out.getvalue()


def run_json(*argv):
    code, out = run_cli(*argv)
    return code, json_loads(out)


# Unitest class
# ==============
print(f'Unitary tests for motzkinfree {__version__}')


class TestProblem(unittest.TestCase):
    """Test the problem documents."""

    def setUp(self):
        """The function is called *every time* before test_*."""
        print('\n' + '=' * 78)

    def test_000_parse(self):
        """Minimal free document."""
        print('INFO: [TEST_000] Parse a problem document')
        problem = parse_problem(json_dumps(FREE_PROBLEM))
        self.assertEqual(problem.mode, 'free')
        self.assertEqual(problem.jet_order, 1)
        self.assertEqual(len(problem.queries), 1)
        self.assertEqual(problem.queries[0].derivative_orders, [1])
        self.assertTrue(problem.queries[0].wants_moment)
        table = problem.ctx.table('A')
        self.assertEqual(table.moment(('x', 'x')).coeffs, (1, 0))
        self.assertEqual(table.moment(('x',)).coeffs, (0, 1))
        self.assertEqual(problem.ctx.table('B').moment(('y', 'y')).value, Fraction(1, 2))

    def test_001_echo(self):
        """Rationals are echoed in canonical form."""
        print('INFO: [TEST_001] Canonical echo')
        data = echo(parse_problem(FREE_PROBLEM))
        self.assertEqual(data['algebras'][1]['phi']['moments']['y.y'], '1/2')
        self.assertEqual(data['algebras'][0]['phi']['params'], {'variance': '1'})
        self.assertEqual(data['jet_order'], 1)

    def test_002_default_order(self):
        """The jet order falls back to the given default."""
        print('INFO: [TEST_002] Default jet order')
        document = copy.deepcopy(FREE_PROBLEM)
        del document['jet_order']
        self.assertEqual(parse_problem(document, default_order=3).jet_order, 3)

    def test_003_schema(self):
        """Schema errors carry the path of the offending entry."""
        print('INFO: [TEST_003] Schema errors')
        document = copy.deepcopy(CFREE_PROBLEM)
        del document['algebras'][0]['psi']
        with self.assertRaises(SchemaError) as err:
            parse_problem(document)
        self.assertEqual(err.exception.path, 'algebras[0].psi')

        document = copy.deepcopy(FREE_PROBLEM)
        document['algebras'][1]['phi']['moments']['y'] = 0.5
        with self.assertRaises(SchemaError) as err:
            parse_problem(document)
        self.assertTrue(err.exception.path.startswith('algebras[1].phi.moments'))

        document = copy.deepcopy(FREE_PROBLEM)
        document['queries'][0]['compute'] = ['moment', 'derivative:2']
        with self.assertRaises(SchemaError) as err:
            parse_problem(document)
        self.assertEqual(err.exception.path, 'queries[0].compute[1]')

        document = copy.deepcopy(FREE_PROBLEM)
        document['queries'][0]['compute'] = ['variance']
        with self.assertRaises(SchemaError) as err:
            parse_problem(document)
        self.assertTrue(err.exception.path.startswith('queries[0].compute'))

        document = copy.deepcopy(FREE_PROBLEM)
        document['queries'][0]['factors'][0]['poly'] = [{'word': 'y'}]
        with self.assertRaises(SchemaError) as err:
            parse_problem(document)
        self.assertEqual(err.exception.path, 'queries[0].factors[0].poly[0].word')

        document = copy.deepcopy(FREE_PROBLEM)
        document['queries'][0]['factors'][0]['label'] = 'Z'
        with self.assertRaises(SchemaError):
            parse_problem(document)

    def test_004_duplicate_and_syntax(self):
        """Duplicate labels and broken JSON."""
        print('INFO: [TEST_004] Duplicate labels and syntax errors')
        document = copy.deepcopy(FREE_PROBLEM)
        document['algebras'][1]['label'] = 'A'
        with self.assertRaises(DuplicateLabel):
            parse_problem(document)
        with self.assertRaises(DocumentSyntaxError):
            parse_problem(b'{"mode": ')

    def test_005_law_params(self):
        """Law parameters follow the rational rule of the moments."""
        print('INFO: [TEST_005] Law parameters')
        for bad in ('1.5', 1.5, '1e3', '1/0'):
            document = copy.deepcopy(FREE_PROBLEM)
            document['algebras'][0]['phi']['params'] = {'variance': bad}
            with self.assertRaises(SchemaError) as err:
                parse_problem(document)
            self.assertTrue(err.exception.path.startswith('algebras[0].phi.params'))

        document = copy.deepcopy(FREE_PROBLEM)
        document['algebras'][0]['phi']['params'] = {'variance': '2/4'}
        problem = parse_problem(document)
        self.assertEqual(problem.ctx.table('A').moment(('x', 'x')).value, Fraction(1, 2))
        self.assertEqual(echo(problem)['algebras'][0]['phi']['params'], {'variance': '1/2'})

        # names are not numbers
        document = copy.deepcopy(FREE_PROBLEM)
        document['algebras'][0]['phi'] = {'law': 'zero_derivatives', 'params': {'base': 'semicircle', 'variance': 2}}
        data = echo(parse_problem(document))
        self.assertEqual(data['algebras'][0]['phi']['params'], {'base': 'semicircle', 'variance': '2'})


class TestCommandLine(unittest.TestCase):
    """Test the motzkinfree command line."""

    def setUp(self):
        """The function is called *every time* before test_*."""
        print('\n' + '=' * 78)

    def test_100_enumerate(self):
        """Enumerate words as letters and as steps."""
        print('INFO: [TEST_100] enumerate')
        code, report = run_json('enumerate', '--n', '4')
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report['count'], 4)
        self.assertEqual(report['words'], ['1111', '1121', '1211', '1221'])
        code, report = run_json('enumerate', '--n', '3', '--steps')
        self.assertEqual(report['words'], ['HH', 'UD'])

    def test_101_partition(self):
        """Level return partition of a pyramid."""
        print('INFO: [TEST_101] partition')
        code, report = run_json('partition', '--word', '12321')
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(
            report['blocks'],
            [{'level': 1, 'positions': [1, 5]}, {'level': 2, 'positions': [2, 4]}, {'level': 3, 'positions': [3]}],
        )
        self.assertEqual(report['local_maxima'], [3])
        self.assertEqual(report['height'], 3)

    def test_102_adapted_classify(self):
        """Adaptedness and path classes."""
        print('INFO: [TEST_102] adapted and classify')
        code, report = run_json('adapted', '--word', '121', '--labels', 'A,B,A')
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(report['adapted'])
        code, report = run_json('adapted', '--word', '121', '--labels', 'A,B,C')
        self.assertFalse(report['adapted'])
        self.assertIn('reason', report)
        code, report = run_json('classify', '--word', '12321')
        self.assertEqual(report['class'], 'pyramid')
        self.assertEqual(report['middle'], 3)
        code, report = run_json('classify', '--word', 'UUDD', '--steps')
        self.assertEqual(report['word'], '12321')

    def test_103_count(self):
        """Words with two local maxima."""
        print('INFO: [TEST_103] count')
        code, report = run_json('count', '--n', '6', '--local-maxima', '2')
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report['count'], 6)
        self.assertEqual(report['closed_form'], 6)
        code, report = run_json('count', '--n', '5', '--local-maxima', '1')
        self.assertNotIn('closed_form', report)

    def test_104_csv(self):
        """CSV report."""
        print('INFO: [TEST_104] CSV report')
        code, out = run_cli('--format', 'csv', 'enumerate', '--n', '3')
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out.splitlines(), ['word', '111', '121'])

    def test_105_usage(self):
        """Usage and input errors exit with 2."""
        print('INFO: [TEST_105] Usage errors')
        with contextlib.redirect_stderr(io.StringIO()):
            self.assertEqual(run_cli('count', '--n', '6')[0], EXIT_USAGE)
            self.assertEqual(run_cli('enumerate', '--n', '0')[0], EXIT_USAGE)
            self.assertEqual(run_cli('partition', '--word', '1231')[0], EXIT_USAGE)
            self.assertEqual(run_cli('eval', '--input', os.path.join(tempfile.gettempdir(), 'no-such-problem.json'))[0], EXIT_USAGE)

    def test_106_eval_free(self):
        """Evaluate, check and echo a free problem."""
        print('INFO: [TEST_106] eval in free mode')
        document = copy.deepcopy(FREE_PROBLEM)
        document['queries'].append({'factors': [{'label': 'A', 'poly': [{'word': 'x'}, {'coeff': 1}]}], 'compute': ['derivative:1']})
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'problem.json')
            with open(path, 'wb') as f:
                f.write(json_dumps(document))
            code, report = run_json('--no-timing', 'eval', '--input', path, '--check', '--echo', '--prune', '--words')
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(report['passed'])
        self.assertNotIn('timing', report)
        first, second = report['queries']
        # phi_A(x x) phi_B'(y - 1) = 1 * 3
        self.assertEqual(first['moment'], ['0', '3'])
        self.assertEqual(first['derivatives'], {'1': '3'})
        self.assertEqual(first['words'], {'1': [{'word': '121', 'value': '3'}]})
        self.assertNotIn('outside_hypotheses', first)
        self.assertTrue(second['outside_hypotheses'])
        self.assertEqual(report['problem']['algebras'][1]['phi']['moments']['y.y'], '1/2')

    def test_107_eval_cfree(self):
        """c-free problem: both sides of the moment and the derivative."""
        print('INFO: [TEST_107] eval in cfree mode')
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'problem.json')
            with open(path, 'wb') as f:
                f.write(json_dumps(CFREE_PROBLEM))
            code, report = run_json('eval', '--input', path, '--check', '--words')
            self.assertEqual(code, EXIT_OK)
            query = report['queries'][0]
            self.assertEqual(query['moment'], {'phi': ['0', '13'], 'psi': ['0', '21']})
            self.assertEqual(query['derivatives'], {'1': {'phi': '13', 'psi': '21'}})
            self.assertEqual(query['words']['1'], [{'word': '111', 'value': '-1'}, {'word': '121', 'value': '14'}])
            self.assertTrue(query['check']['passed'])
            self.assertIn('timing', report)

            code, out = run_cli('--format', 'csv', '--no-timing', 'eval', '--input', path)
            self.assertEqual(code, EXIT_OK)
            lines = out.splitlines()
            self.assertEqual(lines[0], 'query,output,c0,c1,value')
            self.assertEqual(lines[1], '0,moment.phi,0,13,N/A')
            self.assertEqual(lines[-1], '0,derivative:1.psi,N/A,N/A,21')

    def test_108_verify(self):
        """Verification reports are identical across runs without timings."""
        print('INFO: [TEST_108] verify')
        argv = ('--no-timing', '--seed', '5', 'verify', '--suite', 'oracle-free', '--n-max', '4', '--cases', '3')
        code, first = run_cli(*argv)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(run_cli(*argv)[1], first)
        report = json_loads(first)
        self.assertTrue(report['passed'])
        self.assertEqual(report['seed'], 5)
        self.assertNotIn('timing', report)
        self.assertEqual([s['name'] for s in report['suites']], ['oracle-free'])

        code, out = run_cli('--format', 'csv', '--no-timing', 'verify', '--suite', 'counting')
        self.assertEqual(code, EXIT_OK)
        header, row = out.splitlines()
        self.assertEqual(header, 'suite,passed,cases')
        self.assertTrue(row.startswith('counting,true,'))

    def test_109_version(self):
        """Version message."""
        print('INFO: [TEST_109] version')
        code, out = run_cli('-V')
        self.assertEqual(code, EXIT_OK)
        self.assertIn(__version__, out)

    def test_110_verify_all(self):
        """Every suite passes at the configured sizes."""
        print('INFO: [TEST_110] verify --suite all')
        code, report = run_json('--no-timing', '--seed', '0', 'verify', '--suite', 'all', '--cases', '3')
        for suite in report['suites']:
            print(f"INFO: {suite['name']} passed={suite['passed']} cases={suite['cases']}")
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(report['passed'])
        self.assertEqual([s['name'] for s in report['suites']], list(SUITES))
        self.assertTrue(all(s['passed'] and 'counterexample' not in s for s in report['suites']))

    def test_111_verify_config(self):
        """The [verify] section selects the suites and the suites log level."""
        print('INFO: [TEST_111] verify from the configuration file')
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'motzkinfree.conf')
            with open(path, 'w') as f:
                f.write('[verify]\nsuites=counting, partitions\nlog_level=warning\npartitions_n_max=4\n')
            code, report = run_json('-C', path, '--no-timing', 'verify')
            self.assertEqual(code, EXIT_OK)
            self.assertEqual([s['name'] for s in report['suites']], ['counting', 'partitions'])
            self.assertEqual(logging.getLogger(SUITES_LOGGER).level, logging.WARNING)

            # --suite wins over the list
            code, report = run_json('-C', path, '--no-timing', 'verify', '--suite', 'counting')
            self.assertEqual([s['name'] for s in report['suites']], ['counting'])

            with open(path, 'w') as f:
                f.write('[verify]\nsuites=counting,no-such-suite\nlog_level=loud\n')
            self.assertEqual(run_cli('-C', path, 'verify')[0], EXIT_USAGE)
            self.assertEqual(logging.getLogger(SUITES_LOGGER).level, logging.INFO)
        set_suites_level('INFO')

    def test_999_the_end(self):
        """Nothing to free"""
        print('INFO: [TEST_999] The end')
        self.assertTrue(True)


if __name__ == '__main__':
    unittest.main()
