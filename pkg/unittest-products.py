#!/usr/bin/env python
#
# This file is part of motzkinfree.
#
# SPDX-License-Identifier: LGPL-3.0-only
#

"""motzkinfree unitary tests suite for Motzkin functionals, products and oracles."""

import random
import unittest
from fractions import Fraction
from unittest import mock

from hypothesis import given, settings
from hypothesis import strategies as st

from motzkinfree import __version__
from motzkinfree.functionals import (
    FactorTuple,
    GammaSelector,
    block_cumulants,
    check_centered,
    motzkin_derivative_closed,
    motzkin_derivative_leibniz,
    motzkin_functional,
    motzkin_higher,
    relevant_singletons,
)
from motzkinfree.globals import CenteringViolation, LabelMismatch, LengthMismatch, ModeError, OrderMismatch
from motzkinfree.motzkin import enumerate_words, parse_word
from motzkinfree.ncalg import AlgebraSpec, Element, FunctionalTable, Jet, SpecContext
from motzkinfree.oracle import RecursionTrace, boolean_oracle, cfree_oracle, free_oracle, nc_oracle, oracle_moment
from motzkinfree.products import (
    CFreeMoment,
    ProductQuery,
    boolean_derivative,
    boolean_moment,
    cfree_closed,
    cfree_infinitesimal,
    cfree_leibniz,
    characteristic_free,
    higher_moment,
    infinitesimal_moment,
    leibniz_free,
    normalize_alternating,
    product_moment,
    word_contributions,
)
from motzkinfree.suites import SUITES, SuiteParams, random_instance, random_labels, run_suite, run_suites

# Global variables
# =================


def table(label, order, moments, kind='phi'):
    """Table of a one-generator algebra, moments given as {k: coeffs}."""
    return FunctionalTable(label, kind, order, {('x',) * k: Jet(c) for k, c in moments.items()}, generator='x')


def free_context(order=1):
    a = table('A', 1, {1: (0, 1), 2: (2, 3), 3: (1, 0), 4: (5, 1)})
    b = table('B', 1, {1: (1, 2), 2: (3, 0), 3: (4, 1), 4: (2, 2)})
    c = table('C', 1, {1: (2, 0), 2: (1, 1)})
    return SpecContext('free', 1, {t.label: AlgebraSpec(t.label, ('x',), t) for t in (a, b, c)})


def second_order_context():
    a = table('A', 2, {1: (0, 1, 1), 2: (2, 3, 0), 3: (1, 0, 0)})
    b = table('B', 2, {1: (1, 2, 0), 2: (3, 0, 0), 3: (4, 1, 0)})
    return SpecContext('free', 2, {t.label: AlgebraSpec(t.label, ('x',), t) for t in (a, b)})


def cfree_context():
    algebras = {
        'A': AlgebraSpec('A', ('x',), table('A', 1, {1: (0, 1), 2: (2, 3)}), table('A', 1, {1: (1, 1), 2: (4, 0)}, 'psi')),
        'B': AlgebraSpec('B', ('x',), table('B', 1, {1: (3, 5), 2: (1, 1)}), table('B', 1, {1: (2, 7), 2: (6, 0)}, 'psi')),
    }
    return SpecContext('cfree', 1, algebras)


XA = Element.generator('A', 'x')
XB = Element.generator('B', 'x')
XC = Element.generator('C', 'x')

# Unitest class
# ==============
print(f'Unitary tests for motzkinfree {__version__}')


class TestFunctionals(unittest.TestCase):
    """Test Motzkin functionals and their derivatives."""

    def setUp(self):
        """The function is called *every time* before test_*."""
        print('\n' + '=' * 78)

    def test_000_factor_tuple(self):
        """Alternating factors."""
        print('INFO: [TEST_000] Factor tuples')
        f = FactorTuple((XA, XB, XA))
        self.assertEqual(f.labels, ('A', 'B', 'A'))
        self.assertEqual(f.factor(2), XB)
        self.assertEqual(len(f), 3)
        with self.assertRaises(LabelMismatch):
            FactorTuple((XA, XA))

    def test_001_gamma(self):
        """Functional selection by level."""
        print('INFO: [TEST_001] Gamma selector')
        self.assertEqual([GammaSelector('free')(j) for j in (1, 2, 3)], ['phi', 'phi', 'phi'])
        self.assertEqual([GammaSelector('cfree')(j) for j in (1, 2, 3)], ['phi', 'psi', 'psi'])

    def test_002_three_factor_word(self):
        """Phi_121 is the pair cumulant times the middle moment."""
        print('INFO: [TEST_002] Phi_121')
        ctx = free_context()
        f = FactorTuple((XA, XB, XA))
        # beta_2(x, x) = (2, 3) - (0, 1)^2 = (2, 3), phi_B(x) = (1, 2)
        self.assertEqual(motzkin_functional(ctx, parse_word('121'), f), Jet((2, 7)))
        blocks = block_cumulants(ctx, parse_word('121'), f)
        self.assertEqual([(b.positions, jet) for b, jet in blocks], [((1, 3), Jet((2, 3))), ((2,), Jet((1, 2)))])
        # not adapted
        self.assertEqual(motzkin_functional(ctx, parse_word('121'), FactorTuple((XA, XB, XC))), Jet.zero(1))
        with self.assertRaises(LengthMismatch):
            motzkin_functional(ctx, parse_word('11'), f)

    def test_003_scale(self):
        """Scale of the factor tuple multiplies the functional."""
        print('INFO: [TEST_003] Scaled factors')
        ctx = free_context()
        f = FactorTuple((XA, XB, XA), Fraction(1, 2))
        self.assertEqual(motzkin_functional(ctx, parse_word('121'), f), Jet((1, Fraction(7, 2))))

    def test_004_centering(self):
        """Centering hypotheses."""
        print('INFO: [TEST_004] Centering check')
        ctx = free_context()
        self.assertTrue(check_centered(ctx, FactorTuple((XA, XB - 1))))
        with self.assertRaises(CenteringViolation) as err:
            check_centered(ctx, FactorTuple((XA, XB)))
        self.assertEqual(err.exception.slot, 2)
        self.assertFalse(check_centered(ctx, FactorTuple((XA, XB)), override=True))
        with self.assertRaises(CenteringViolation):
            motzkin_derivative_closed(ctx, parse_word('11'), FactorTuple((XB, XA)))

    def test_005_relevant_singletons(self):
        """Singletons carrying a derivative."""
        print('INFO: [TEST_005] Relevant singletons')
        free, cfree = free_context(), cfree_context()
        self.assertEqual(relevant_singletons(free, parse_word('12321')), [3])
        self.assertEqual(relevant_singletons(free, parse_word('12111')), [2, 4, 5])
        self.assertEqual(relevant_singletons(cfree, parse_word('12111')), [2])
        self.assertEqual(relevant_singletons(cfree, parse_word('11111')), [1])
        self.assertEqual(relevant_singletons(cfree, parse_word('1')), [1])

    def test_006_pyramid(self):
        """First derivative of the pyramid word on centered factors."""
        print('INFO: [TEST_006] Pyramid derivative')
        ctx = free_context()
        f = FactorTuple((XA, XB - 1, XA))
        w = parse_word('121')
        # phi_A(x x) phi_B'(x - 1) = 2 * 2
        self.assertEqual(motzkin_derivative_leibniz(ctx, w, f), 4)
        self.assertEqual(motzkin_derivative_closed(ctx, w, f), 4)
        self.assertEqual(motzkin_higher(ctx, w, f, 1), 4)
        self.assertEqual(motzkin_derivative_closed(ctx, parse_word('111'), f), 0)
        self.assertEqual(motzkin_derivative_closed(ctx, parse_word('1'), FactorTuple((XA,))), 1)
        with self.assertRaises(OrderMismatch):
            motzkin_higher(ctx, w, f, 2)

    def test_007_second_order(self):
        """Two local maxima, second derivative."""
        print('INFO: [TEST_007] Second derivative of 121121')
        ctx = second_order_context()
        b = XB - 1
        f = FactorTuple((XA, b, XA, b, XA, b))
        w = parse_word('121121')
        # 2 phi(a1 a3) phi(a4 a6) phi'(a2) phi'(a5) = 2 * 2 * 2 * 2 * 1
        self.assertEqual(motzkin_higher(ctx, w, f, 2), 16)
        self.assertEqual(motzkin_functional(ctx, w, f).derivative(2), 16)
        # three local maxima need a third derivative
        self.assertEqual(motzkin_higher(ctx, parse_word('121211'), f, 2), 0)
        self.assertEqual(higher_moment(ctx, f, 2, prune=True), higher_moment(ctx, f, 2))
        self.assertEqual(higher_moment(ctx, f, 1), 0)


class TestProducts(unittest.TestCase):
    """Test product moments and oracles."""

    def setUp(self):
        """The function is called *every time* before test_*."""
        print('\n' + '=' * 78)

    def test_100_normalize(self):
        """Scalars are absorbed, neighbours of one algebra multiplied."""
        print('INFO: [TEST_100] Normalization')
        f = normalize_alternating([XA, Element.unit('B', 2), XA])
        self.assertEqual(f.elements, (XA * XA,))
        self.assertEqual(f.scale, 2)
        self.assertEqual(normalize_alternating([XA, Element.unit('B', 0)]).elements, ())
        ctx = free_context()
        self.assertEqual(product_moment(ctx, [XA, Element.unit('B', 2), XA]), Jet((4, 6)))
        self.assertEqual(product_moment(ctx, [XA, Element.unit('B', 0)]), Jet.zero(1))
        self.assertEqual(product_moment(ctx, ProductQuery((XA, XA))), Jet((2, 3)))
        with self.assertRaises(ValueError):
            ProductQuery(())
        query = ProductQuery((XA,), ('moment', 'derivative:1', 'derivative:3'))
        self.assertTrue(query.wants_moment)
        self.assertEqual(query.derivative_orders, [1, 3])

    def test_101_free_product(self):
        """phi(a1 b a2) = phi(a1 a2) phi(b) and the two oracles."""
        print('INFO: [TEST_101] Free product moments')
        ctx = free_context()
        self.assertEqual(product_moment(ctx, [XA, XB]), Jet((0, 1)))
        self.assertEqual(product_moment(ctx, [XA, XB, XA]), Jet((2, 7)))
        for factors in ([XA, XB, XA], [XA, XB, XA, XB], [XA + 1, XB, XC, XB - 2, XA]):
            engine = product_moment(ctx, factors)
            self.assertEqual(free_oracle(ctx, factors), engine)
            self.assertEqual(nc_oracle(ctx, factors), engine)
            self.assertEqual(oracle_moment(ctx, factors), engine)

    def test_102_oracle_trace(self):
        """Memoization does not change the value."""
        print('INFO: [TEST_102] Oracle recursion trace')
        ctx = free_context()
        factors = [XA + 1, XB, XA, XB - 2, XA]
        trace = RecursionTrace()
        value = free_oracle(ctx, factors, trace=trace)
        self.assertEqual(free_oracle(ctx, factors, memoize=False), value)
        self.assertGreater(trace.calls, 1)
        self.assertGreaterEqual(trace.max_depth, 1)
        self.assertEqual(set(trace.as_dict()), {'calls', 'cache_hits', 'max_depth', 'terms'})
        print(f'INFO: {trace.as_dict()}')

    def test_103_infinitesimal_free(self):
        """Three equivalent first derivatives."""
        print('INFO: [TEST_103] Infinitesimal free moments')
        ctx = free_context()
        f = [XA, XB - 1, XA]
        self.assertEqual(infinitesimal_moment(ctx, f), 4)
        self.assertEqual(leibniz_free(ctx, f), 4)
        self.assertEqual(characteristic_free(ctx, f), 4)
        self.assertEqual(infinitesimal_moment(ctx, f, prune=True), 4)
        self.assertEqual(free_oracle(ctx, f).derivative(1), 4)
        self.assertEqual(characteristic_free(ctx, [XA, XB - 1, XA, XB - 1]), 0)
        self.assertEqual(word_contributions(ctx, f, 1), [(parse_word('121'), Fraction(4))])
        # every word vanishes at t = 0 on centered factors
        self.assertEqual(word_contributions(ctx, f, 0), [])
        with self.assertRaises(CenteringViolation):
            leibniz_free(ctx, [XB, XA])
        with self.assertRaises(ModeError):
            cfree_closed(ctx, f)
        with self.assertRaises(ModeError):
            word_contributions(ctx, f, 1, kind='psi')

    def test_104_boolean(self):
        """Boolean products multiply the marginals."""
        print('INFO: [TEST_104] Boolean products')
        ctx = free_context()
        f = [XA + 1, XB, XC, XB - 2]
        jet = boolean_moment(ctx, f)
        self.assertEqual(jet, Jet((1, 1)) * Jet((1, 2)) * Jet((2, 0)) * Jet((-1, 2)))
        self.assertEqual(boolean_oracle(ctx, f), jet)
        self.assertEqual(boolean_derivative(ctx, f), jet.derivative(1))
        self.assertEqual(motzkin_derivative_leibniz(ctx, parse_word('1111'), normalize_alternating(f)), jet.derivative(1))
        # one centered slot among units
        units = FactorTuple((Element.unit('A'), XB - 1, Element.unit('C')))
        self.assertEqual(boolean_derivative(ctx, units), 2)
        self.assertEqual(boolean_derivative(ctx, FactorTuple((XA, XB - 1))), 0)

    def test_105_cfree(self):
        """Three c-free factors, first phi-centered and the others psi-centered."""
        print('INFO: [TEST_105] c-free product of three factors')
        ctx = cfree_context()
        f = [XA, XB - 2, XA - 1]
        # phi'(a1) phi(a2) phi(a3) + psi'(a2) phi(a1 a3) = 1 * 1 * (-1) + 7 * 2
        self.assertEqual(cfree_closed(ctx, f), 13)
        self.assertEqual(cfree_leibniz(ctx, f), 13)
        self.assertEqual(infinitesimal_moment(ctx, f), 13)
        self.assertEqual(infinitesimal_moment(ctx, f, prune=True), 13)
        moment = product_moment(ctx, f)
        self.assertIsInstance(moment, CFreeMoment)
        self.assertEqual(moment.phi, Jet((0, 13)))
        # psi side: psi(a1 a3) psi(a2) = (3, -1) * (0, 7)
        self.assertEqual(moment.psi, Jet((0, 21)))
        self.assertEqual(cfree_infinitesimal(ctx, f), CFreeMoment(Fraction(13), Fraction(21)))
        self.assertEqual(cfree_oracle(ctx, f), moment)
        self.assertEqual(oracle_moment(ctx, f), moment)
        self.assertEqual(word_contributions(ctx, f, 1), [(parse_word('111'), Fraction(-1)), (parse_word('121'), Fraction(14))])
        with self.assertRaises(ModeError):
            leibniz_free(ctx, f)
        with self.assertRaises(ModeError):
            cfree_oracle(free_context(), [XA])
        with self.assertRaises(CenteringViolation):
            cfree_leibniz(ctx, [XA, XB, XA - 1])

    def test_106_cfree_words(self):
        """Per-word closed forms agree with the Leibniz rule."""
        print('INFO: [TEST_106] c-free words')
        ctx = cfree_context()
        f = FactorTuple((XA, XB - 2, XA - 1))
        for w in enumerate_words(3):
            self.assertEqual(motzkin_derivative_closed(ctx, w, f), motzkin_derivative_leibniz(ctx, w, f))

    @given(st.integers(min_value=0, max_value=10**6), st.integers(min_value=1, max_value=5))
    @settings(max_examples=25, deadline=None)
    def test_107_random_free(self, seed, n):
        """Decomposition against both oracles on random tables."""
        rng = random.Random(seed)
        inst = random_instance(random_labels(n, rng), 'free', 2, rng)
        engine = product_moment(inst.ctx, inst.factors)
        self.assertEqual(free_oracle(inst.ctx, inst.factors), engine)
        self.assertEqual(nc_oracle(inst.ctx, inst.factors), engine)

    @given(st.integers(min_value=0, max_value=10**6), st.integers(min_value=1, max_value=5))
    @settings(max_examples=25, deadline=None)
    def test_108_random_cfree(self, seed, n):
        """c-free closed form against the oracle on pattern-centered factors."""
        rng = random.Random(seed)
        inst = random_instance(random_labels(n, rng), 'cfree', 1, rng, pattern='cfree')
        closed = cfree_closed(inst.ctx, inst.factors)
        self.assertEqual(cfree_oracle(inst.ctx, inst.factors).phi.derivative(1), closed)
        self.assertEqual(cfree_leibniz(inst.ctx, inst.factors), closed)

    @given(st.integers(min_value=0, max_value=10**6), st.integers(min_value=1, max_value=6))
    @settings(max_examples=20, deadline=None)
    def test_109_cfree_higher(self, seed, n):
        """c-free multinomial rule and pruning against the jet derivatives."""
        rng = random.Random(seed)
        inst = random_instance(random_labels(n, rng), 'cfree', 3, rng, pattern='cfree')
        ctx, f = inst.ctx, inst.factors
        moment = product_moment(ctx, f).phi
        for m in (2, 3):
            for w in enumerate_words(n):
                value = motzkin_higher(ctx, w, f, m)
                self.assertEqual(value, motzkin_functional(ctx, w, f).derivative(m))
                if len(relevant_singletons(ctx, w)) > m:
                    self.assertEqual(value, 0)
            self.assertEqual(higher_moment(ctx, f, m, prune=True), moment.derivative(m))
            self.assertEqual(higher_moment(ctx, f, m), moment.derivative(m))


class TestSuites(unittest.TestCase):
    """Test the verification suites on small parameters."""

    def setUp(self):
        """The function is called *every time* before test_*."""
        print('\n' + '=' * 78)

    def test_200_fixtures(self):
        """Exhaustive suites."""
        print('INFO: [TEST_200] Partition and counting suites')
        for name in ('partitions', 'counting', 'paper-examples'):
            result = run_suite(name, SuiteParams(n_max=6, seed=3))
            self.assertTrue(result.passed, msg=result.counterexample)
            self.assertGreater(result.cases, 0)
            print(f'INFO: {result.as_dict()}')

    def test_201_random(self):
        """Random suites on a few small cases."""
        print('INFO: [TEST_201] Random suites')
        params = SuiteParams(n_max=5, cases=4, seed=11, order=2)
        for name in ('oracle-free', 'pyramid', 'higher', 'boolean', 'cfree-class', 'cfree-leibniz'):
            result = run_suite(name, params)
            self.assertTrue(result.passed, msg=result.counterexample)
            self.assertNotIn('counterexample', result.as_dict())

    def test_202_cfree_class_even(self):
        """c-free classification on words of even and odd length up to 8."""
        print('INFO: [TEST_202] cfree-class up to length 8')
        for seed in (0, 1, 4):
            result = run_suite('cfree-class', SuiteParams(n_max=8, cases=12, seed=seed, order=1))
            self.assertTrue(result.passed, msg=result.counterexample)
            self.assertEqual(result.cases, 12)
        rng = random.Random(0)
        for n in (2, 4, 6, 8):
            inst = random_instance(random_labels(n, rng), 'cfree', 1, rng, pattern='cfree')
            self.assertEqual(len(inst.factors), n)
            for w in enumerate_words(n):
                self.assertEqual(
                    motzkin_derivative_closed(inst.ctx, w, inst.factors), motzkin_derivative_leibniz(inst.ctx, w, inst.factors)
                )

    def test_203_suite_error(self):
        """An error raised inside a suite fails that suite only."""
        print('INFO: [TEST_203] Suite errors')

        def mismatched(params, rng):
            return motzkin_derivative_leibniz(free_context(), parse_word('121'), FactorTuple((XA, XB)))

        with mock.patch.dict(SUITES, {'mismatched': mismatched}):
            result = run_suite('mismatched', SuiteParams(cases=1))
            results = run_suites(['mismatched', 'counting'], lambda name: SuiteParams(n_max=4))
        self.assertFalse(result.passed)
        self.assertEqual(result.cases, 0)
        self.assertEqual(result.counterexample['error'], 'LengthMismatch')
        self.assertIn('applied to 2 factors', result.counterexample['message'])
        self.assertEqual(result.as_dict()['counterexample'], result.counterexample)
        self.assertEqual([r.passed for r in results], [False, True])

    def test_999_the_end(self):
        """Nothing to free"""
        print('INFO: [TEST_999] The end')
        self.assertTrue(True)


if __name__ == '__main__':
    unittest.main()
