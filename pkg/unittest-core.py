#!/usr/bin/env python
#
# This file is part of motzkinfree.
#
# SPDX-License-Identifier: LGPL-3.0-only
#

"""motzkinfree unitary tests suite for words, partitions and the algebra layer."""

import unittest
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from motzkinfree import __version__
from motzkinfree.globals import (
    BadEndpoint,
    BadStep,
    EmptyWord,
    LabelMismatch,
    LengthMismatch,
    MissingMoment,
    ModeError,
    NonPositive,
    OrderMismatch,
    UnknownLaw,
    WordError,
    fraction_str,
    to_fraction,
)
from motzkinfree.motzkin import (
    ADJACENCY,
    ALTERNATION,
    FLAT,
    OTHER,
    PYRAMID,
    PYRAMID_THEN_FLAT,
    UNIFORMITY,
    adapted_words,
    classify_path,
    count_by_local_maxima,
    enumerate_words,
    excursions,
    from_step_word,
    is_adapted,
    level_return_partition,
    local_maxima,
    motzkin_number,
    parse_word,
    step_word,
    two_maxima_closed_form,
    validate_word,
)
from motzkinfree.ncalg import (
    AlgebraSpec,
    Element,
    FunctionalTable,
    Jet,
    SpecContext,
    boolean_cumulant,
    boolean_cumulant_mobius,
    builtin_law,
    catalan,
    center,
    element_multiply,
    evaluate,
    free_cumulant,
    interval_partitions,
    is_noncrossing,
    jet_add,
    jet_derivative,
    jet_multiply,
    jet_scale,
    jet_sum,
    jet_truncate,
    make_law,
    moment_from_cumulants,
    noncrossing_partitions,
)

# Global variables
# =================

TWO_MAXIMA_SEQUENCE = [0, 1, 0, 3, 1, 6, 3, 10, 6, 15, 10, 21, 15]

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def jets(order):
    return st.lists(rationals, min_size=order + 1, max_size=order + 1).map(lambda c: Jet(tuple(c)))


def table_x(order=1, moments=None, label='A', kind='phi'):
    """Table of a one-generator algebra, moments given as {k: coeffs}."""
    moments = moments or {}
    return FunctionalTable(label, kind, order, {('x',) * k: Jet(tuple(c)) for k, c in moments.items()}, generator='x')


X = Element.generator('A', 'x')

# Unitest class
# ==============
print(f'Unitary tests for motzkinfree {__version__}')


class TestWords(unittest.TestCase):
    """Test Motzkin words and level return partitions."""

    def setUp(self):
        """The function is called *every time* before test_*."""
        print('\n' + '=' * 78)

    def test_000_parse(self):
        """Parse digit and comma forms."""
        print('INFO: [TEST_000] Parse words')
        w = parse_word('12321')
        self.assertEqual(w.letters, (1, 2, 3, 2, 1))
        self.assertEqual(str(w), '12321')
        self.assertEqual(len(w), 5)
        self.assertEqual(w.height, 3)
        self.assertEqual(w.letter(3), 3)
        self.assertEqual(parse_word('1,2,1'), parse_word('121'))
        tall = validate_word(list(range(1, 11)) + list(range(9, 0, -1)))
        self.assertEqual(str(tall), ','.join(str(j) for j in tall.letters))
        self.assertEqual(parse_word(str(tall)), tall)

    def test_001_validation(self):
        """First violated constraint wins."""
        print('INFO: [TEST_001] Word validation errors')
        with self.assertRaises(EmptyWord):
            validate_word([])
        with self.assertRaises(NonPositive) as ctx:
            validate_word([1, 0, 1])
        self.assertEqual(ctx.exception.position, 2)
        with self.assertRaises(BadEndpoint) as ctx:
            validate_word([2, 1])
        self.assertEqual(ctx.exception.position, 1)
        with self.assertRaises(BadEndpoint) as ctx:
            validate_word([1, 2])
        self.assertEqual(ctx.exception.position, 2)
        with self.assertRaises(BadStep) as ctx:
            validate_word([1, 3, 2, 1])
        self.assertEqual(ctx.exception.position, 2)
        with self.assertRaises(WordError):
            parse_word('1a1')
        with self.assertRaises(EmptyWord):
            parse_word('  ')

    def test_002_steps(self):
        """U/H/D step words."""
        print('INFO: [TEST_002] Step words')
        self.assertEqual(step_word(parse_word('12211')), 'UHDH')
        self.assertEqual(from_step_word('UHDH'), parse_word('12211'))
        self.assertEqual(from_step_word(''), parse_word('1'))
        self.assertEqual(step_word(parse_word('1')), '')
        with self.assertRaises(BadEndpoint):
            from_step_word('UUD')
        with self.assertRaises(WordError):
            from_step_word('UX')
        for w in enumerate_words(6):
            self.assertEqual(from_step_word(step_word(w)), w)

    def test_003_enumerate(self):
        """Word counts are Motzkin numbers."""
        print('INFO: [TEST_003] Enumerate words')
        self.assertEqual([motzkin_number(k) for k in range(9)], [1, 1, 2, 4, 9, 21, 51, 127, 323])
        for n in range(1, 10):
            self.assertEqual(len(enumerate_words(n)), motzkin_number(n - 1))
        self.assertEqual([str(w) for w in enumerate_words(4)], ['1111', '1121', '1211', '1221'])
        words = enumerate_words(7)
        self.assertEqual(words, sorted(words, key=lambda w: w.letters))
        self.assertEqual(len(set(words)), len(words))
        with self.assertRaises(ValueError):
            enumerate_words(0)

    def test_004_local_maxima(self):
        """Weak local maxima."""
        print('INFO: [TEST_004] Local maxima')
        self.assertEqual(local_maxima(parse_word('123332112121')), [3, 4, 5, 9, 11])
        self.assertEqual(local_maxima(parse_word('1')), [1])
        self.assertEqual(local_maxima(parse_word('11')), [1, 2])
        self.assertEqual(local_maxima(parse_word('12321')), [3])

    def test_005_partition_fixtures(self):
        """Level return partitions of the worked words."""
        print('INFO: [TEST_005] Level return partitions')
        fixtures = {
            '123332112121': [[1, 7], [2, 6], [3], [4], [5], [8, 10, 12], [9], [11]],
            '112323223211': [[1], [2, 11], [3, 5, 7], [4], [6], [8, 10], [9], [12]],
            '123432334321': [[1, 12], [2, 6, 11], [3, 5], [4], [7], [8, 10], [9]],
        }
        for text, blocks in fixtures.items():
            partition = level_return_partition(parse_word(text))
            self.assertEqual(partition.as_lists(), blocks)
            print(f'INFO: {text} -> {partition}')
        partition = level_return_partition(parse_word('123332112121'))
        self.assertEqual(partition.block_of(7).positions, (1, 7))
        self.assertEqual(partition.block_of(7).level, 1)
        self.assertEqual([b.first for b in partition.singletons()], [3, 4, 5, 9, 11])
        self.assertEqual(str(partition.block_of(10)), '{8,10,12}')
        self.assertEqual(level_return_partition(parse_word('1')).as_lists(), [[1]])

    def test_006_partition_properties(self):
        """Singletons are the local maxima, blocks are level constant."""
        print('INFO: [TEST_006] Partition properties up to n=9')
        for n in range(1, 10):
            for w in enumerate_words(n):
                partition = level_return_partition(w)
                positions = sorted(p for block in partition for p in block.positions)
                self.assertEqual(positions, list(range(1, n + 1)))
                for block in partition:
                    self.assertEqual({w.letter(p) for p in block.positions}, {block.level})
                    for p, q in block.gaps():
                        self.assertIn((p, q), excursions(w, block.level))
                self.assertEqual([b.first for b in partition.singletons()], local_maxima(w))

    def test_007_excursions(self):
        """Excursions above a level."""
        print('INFO: [TEST_007] Excursions')
        w = parse_word('123332112121')
        self.assertEqual(excursions(w, 1), [(1, 7), (8, 10), (10, 12)])
        self.assertEqual(excursions(w, 2), [(2, 6)])
        self.assertEqual(excursions(w, 3), [])

    def test_008_adapted(self):
        """Adaptedness and its violations."""
        print('INFO: [TEST_008] Adaptedness')
        pyramid = parse_word('12321')
        self.assertTrue(is_adapted(pyramid, 'abcba').adapted)
        report = is_adapted(pyramid, 'abcbd')
        self.assertFalse(report)
        self.assertEqual(report.violation.kind, UNIFORMITY)
        self.assertEqual(report.violation.block.positions, (1, 5))
        report = is_adapted(pyramid, 'aacba')
        self.assertEqual(report.violation.kind, ADJACENCY)
        self.assertEqual(report.violation.positions, (1, 2))
        self.assertEqual(report.violation.as_dict()['kind'], ADJACENCY)
        with self.assertRaises(LengthMismatch):
            is_adapted(pyramid, 'ab')

        # i_2 != i_4 is forced by the nesting of {4} in the excursion (2, 6)
        w = parse_word('123332112121')
        good = ['A', 'B', 'C', 'D', 'C', 'B', 'A', 'C', 'D', 'C', 'D', 'C']
        self.assertTrue(is_adapted(w, good).adapted)
        bad = list(good)
        bad[3] = 'B'
        report = is_adapted(w, bad)
        self.assertEqual(report.violation.kind, ALTERNATION)
        self.assertEqual(report.violation.block.positions, (2, 6))
        self.assertEqual(report.violation.nested.positions, (4,))
        print(f'INFO: {report.violation.describe()}')

        self.assertEqual(adapted_words(3, 'ABA'), [parse_word('111'), parse_word('121')])
        self.assertEqual(adapted_words(3, 'ABC'), [parse_word('111')])

    def test_009_classify(self):
        """Path classes."""
        print('INFO: [TEST_009] Path classes')
        path = classify_path(parse_word('12321'))
        self.assertEqual((path.kind, path.middle, path.pyramid_length), (PYRAMID, 3, 5))
        path = classify_path(parse_word('12111'))
        self.assertEqual((path.kind, path.middle, path.split), (PYRAMID_THEN_FLAT, 2, 4))
        self.assertEqual(classify_path(parse_word('123321')).kind, OTHER)
        self.assertEqual(classify_path(parse_word('11211')).kind, OTHER)
        self.assertEqual(classify_path(parse_word('11111')).kind, FLAT)
        single = classify_path(parse_word('1'))
        self.assertEqual((single.kind, single.middle, single.pyramid_compatible), (FLAT, 1, True))

    def test_010_counting(self):
        """Words with two local maxima."""
        print('INFO: [TEST_010] Two local maxima, n = 1..13')
        counts = [count_by_local_maxima(n, 2) for n in range(1, 14)]
        self.assertEqual(counts, TWO_MAXIMA_SEQUENCE)
        self.assertEqual([two_maxima_closed_form(n) for n in range(1, 14)], TWO_MAXIMA_SEQUENCE)
        self.assertEqual(count_by_local_maxima(6, 2), 6)
        # a single local maximum means a pyramid
        for n in range(1, 10):
            self.assertEqual(count_by_local_maxima(n, 1), 1 if n % 2 else 0)

    @given(st.integers(min_value=1, max_value=9), st.data())
    @settings(max_examples=60, deadline=None)
    def test_011_partition_noncrossing(self, n, data):
        """Level return partitions are noncrossing."""
        w = data.draw(st.sampled_from(enumerate_words(n)))
        blocks = [tuple(p - 1 for p in block) for block in level_return_partition(w).as_lists()]
        self.assertTrue(is_noncrossing(blocks))


class TestAlgebra(unittest.TestCase):
    """Test jets, elements, functional tables and cumulants."""

    def setUp(self):
        """The function is called *every time* before test_*."""
        print('\n' + '=' * 78)

    def test_100_rationals(self):
        """Exact rational parsing."""
        print('INFO: [TEST_100] Rationals')
        self.assertEqual(to_fraction('2/4'), Fraction(1, 2))
        self.assertEqual(to_fraction(3), Fraction(3))
        self.assertEqual(fraction_str(Fraction(2, 4)), '1/2')
        self.assertEqual(fraction_str(Fraction(-3)), '-3')
        for bad in (0.5, True, '1.5', '1e3', '1/0', 'x'):
            with self.assertRaises(ValueError):
                to_fraction(bad)

    def test_101_jets(self):
        """Truncated products and derivatives."""
        print('INFO: [TEST_101] Jets')
        a = Jet((1, 2, 3))
        b = Jet((Fraction(1, 2), 0, 1))
        self.assertEqual(jet_multiply(a, b), Jet((Fraction(1, 2), 1, Fraction(5, 2))))
        self.assertEqual(jet_add(a, b), Jet((Fraction(3, 2), 2, 4)))
        self.assertEqual(jet_scale(a, 2), Jet((2, 4, 6)))
        self.assertEqual(jet_truncate(a, 1), Jet((1, 2)))
        self.assertEqual(jet_derivative(a, 2), 6)
        self.assertEqual(a.derivative(0), 1)
        self.assertEqual(jet_sum([a, b, a], 2), a + b + a)
        self.assertEqual(Jet.from_derivatives([1, 2, 6]), a)
        self.assertEqual(1 - a, Jet((0, -2, -3)))
        self.assertEqual(a * Fraction(1, 2), Jet((Fraction(1, 2), 1, Fraction(3, 2))))
        self.assertFalse(Jet.zero(3))
        self.assertEqual(Jet.unit(2).value, 1)
        with self.assertRaises(OrderMismatch):
            a + Jet((1, 2))
        with self.assertRaises(OrderMismatch):
            a.derivative(3)
        with self.assertRaises(OrderMismatch):
            a.truncate(4)

    @given(jets(2), jets(2), jets(2))
    @settings(max_examples=50, deadline=None)
    def test_102_jet_ring(self, a, b, c):
        """Jets form a commutative ring."""
        self.assertEqual(a * b, b * a)
        self.assertEqual((a * b) * c, a * (b * c))
        self.assertEqual(a * (b + c), a * b + a * c)
        self.assertEqual((a * b).truncate(1), a.truncate(1) * b.truncate(1))
        self.assertEqual((a * b).derivative(1), a.derivative(1) * b.value + a.value * b.derivative(1))

    def test_103_elements(self):
        """Noncommutative polynomials of one algebra."""
        print('INFO: [TEST_103] Elements')
        y = Element.generator('A', 'y')
        self.assertNotEqual(X * y, y * X)
        self.assertEqual((X + y) * (X - y), X * X - X * y + y * X - y * y)
        self.assertEqual((X * X).degree, 2)
        self.assertTrue(Element.unit('A', 3).is_scalar)
        self.assertEqual(Element.unit('A', 3).scalar_part, 3)
        self.assertTrue((X - X).is_zero)
        self.assertEqual((2 * X + 1).scalar_part, 1)
        self.assertEqual(element_multiply(X, y), X * y)
        self.assertEqual(element_multiply(y, X).terms, ((('y', 'x'), Fraction(1)),))
        self.assertEqual(X.lift(2).terms[0][1], Jet.constant(1, 2))
        with self.assertRaises(LabelMismatch):
            X * Element.generator('B', 'x')

    def test_104_laws(self):
        """Built-in single generator laws."""
        print('INFO: [TEST_104] Laws')
        self.assertEqual([catalan(k) for k in range(6)], [1, 1, 2, 5, 14, 42])
        semicircle = make_law('semicircle', {'variance': '2'})
        self.assertEqual([semicircle.moment(k) for k in range(1, 7)], [0, 2, 0, 8, 0, 40])
        self.assertEqual(make_law('bernoulli_symmetric').moment(4), 1)
        self.assertEqual(make_law('point_mass', {'c': '1/2'}).moment(3), Fraction(1, 8))
        self.assertIsNone(make_law('custom', {'moments': [1, 2]}).moment(3))
        with self.assertRaises(UnknownLaw):
            make_law('cauchy')
        with self.assertRaises(UnknownLaw):
            make_law('point_mass', {'c': 'abc'})
        with self.assertRaises(UnknownLaw):
            make_law('zero_derivatives', {'base': 'zero_derivatives'})

    def test_105_tables(self):
        """Moment lookup, derivatives and centering."""
        print('INFO: [TEST_105] Functional tables')
        table = builtin_law('semicircle', label='A', order=2)
        self.assertEqual(table.moment(()), Jet.unit(2))
        self.assertEqual(table.moment(('x', 'x')), Jet((1, 0, 0)))
        self.assertEqual(evaluate(table, X * X * X * X + 2 * X + 3), Jet((5, 0, 0)))
        with self.assertRaises(MissingMoment):
            table.moment(('y',))
        with self.assertRaises(LabelMismatch):
            evaluate(table, Element.generator('B', 'x'))

        deformed = table.with_derivatives({('x', 'x'): {1: 4, 2: 6}})
        self.assertEqual(deformed.moment(('x', 'x')), Jet((1, 4, 3)))
        self.assertEqual(deformed.moment(('x', 'x')).derivative(2), 6)
        frozen = builtin_law('zero_derivatives', {'base': 'semicircle'}, label='A', order=1)
        self.assertIs(frozen.with_derivatives({('x',): {1: 5}}), frozen)

        skew = table_x(1, {1: (2, 3), 2: (5, 1)})
        centered = center(X, skew)
        self.assertEqual(evaluate(skew, centered), Jet((0, 3)))
        self.assertEqual(evaluate(skew, center(X, skew, deformed=True)), Jet((0, 0)))

    def test_106_context(self):
        """Context validation and psi tables."""
        print('INFO: [TEST_106] Contexts')
        phi = table_x(1, {1: (0, 1)})
        psi = table_x(1, {1: (1, 0)}, kind='psi')
        free = SpecContext('free', 1, {'A': AlgebraSpec('A', ('x',), phi)})
        with self.assertRaises(ModeError):
            free.table('A', 'psi')
        with self.assertRaises(LabelMismatch):
            free.table('B')
        with self.assertRaises(ModeError):
            SpecContext('cfree', 1, {'A': AlgebraSpec('A', ('x',), phi)})
        with self.assertRaises(ModeError):
            SpecContext('boolean', 1, {})
        with self.assertRaises(OrderMismatch):
            SpecContext('free', 2, {'A': AlgebraSpec('A', ('x',), phi)})
        cfree = SpecContext('cfree', 1, {'A': AlgebraSpec('A', ('x',), phi, psi)})
        self.assertIs(cfree.table('A', 'psi'), psi)
        self.assertIs(cfree.psi_context().table('A'), psi)
        self.assertEqual(cfree.psi_context().mode, 'free')

    def test_107_partitions(self):
        """Interval and noncrossing partitions."""
        print('INFO: [TEST_107] Interval and noncrossing partitions')
        self.assertEqual([len(interval_partitions(n)) for n in range(1, 7)], [1, 2, 4, 8, 16, 32])
        self.assertEqual([len(noncrossing_partitions(n)) for n in range(1, 7)], [catalan(n) for n in range(1, 7)])
        self.assertFalse(is_noncrossing(((0, 2), (1, 3))))
        self.assertTrue(is_noncrossing(((0, 3), (1, 2))))

    def test_108_boolean_cumulants(self):
        """Lowest Boolean cumulants."""
        print('INFO: [TEST_108] Boolean cumulants')
        table = table_x(1, {1: (2, 1), 2: (7, 3), 3: (5, 0)})
        self.assertEqual(boolean_cumulant(table, [X]), Jet((2, 1)))
        # beta_2(a, b) = phi(ab) - phi(a) phi(b)
        self.assertEqual(boolean_cumulant(table, [X, X]), Jet((7, 3)) - Jet((2, 1)) * Jet((2, 1)))
        for n in range(1, 4):
            args = [X + k for k in range(n)]
            self.assertEqual(boolean_cumulant(table, args), boolean_cumulant_mobius(table, args))
            self.assertEqual(moment_from_cumulants('boolean', table, args), evaluate(table, _product(args)))
            self.assertEqual(moment_from_cumulants('free', table, args), evaluate(table, _product(args)))
        with self.assertRaises(ValueError):
            boolean_cumulant(table, [])
        with self.assertRaises(ValueError):
            moment_from_cumulants('monotone', table, [X])

    def test_109_free_cumulants(self):
        """Free cumulants of the semicircle law."""
        print('INFO: [TEST_109] Free cumulants')
        table = builtin_law('semicircle', {'variance': 3}, label='A', order=0)
        self.assertEqual(free_cumulant(table, [X, X]), Jet((3,)))
        for n in (1, 3, 4, 5, 6):
            self.assertEqual(free_cumulant(table, [X] * n), Jet((0,)))

    @given(st.lists(rationals, min_size=3, max_size=3), st.lists(rationals, min_size=4, max_size=4))
    @settings(max_examples=30, deadline=None)
    def test_110_cumulant_inversion(self, shifts, moments):
        """Both cumulant families rebuild the moments."""
        table = table_x(0, {k + 1: (m,) for k, m in enumerate(moments)})
        args = [X + s for s in shifts]
        self.assertEqual(boolean_cumulant(table, args), boolean_cumulant_mobius(table, args))
        self.assertEqual(moment_from_cumulants('free', table, args), evaluate(table, _product(args)))

    def test_999_the_end(self):
        """Nothing to free"""
        print('INFO: [TEST_999] The end')
        self.assertTrue(True)


def _product(args):
    ret = args[0]
    for e in args[1:]:
        ret = ret * e
    return ret


if __name__ == '__main__':
    unittest.main()
