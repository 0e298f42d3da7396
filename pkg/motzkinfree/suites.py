#
# This file is part of motzkinfree.
#
# SPDX-License-Identifier: LGPL-3.0-only
#

"""Verification suites.

Every suite draws seeded random instances (or walks exhaustive fixtures)
and compares two or more independent computations of the same quantity.
The first disagreement stops the suite and is reported as a counterexample.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import pairwise, product
from typing import Callable, Dict, List, Optional, Sequence

from motzkinfree.functionals import (
    FactorTuple,
    motzkin_derivative_closed,
    motzkin_derivative_leibniz,
    motzkin_functional,
    motzkin_higher,
    relevant_singletons,
)
from motzkinfree.globals import CFREE, FREE, PHI, PSI, MotzkinError, fraction_str
from motzkinfree.logger import suites_logger as logger
from motzkinfree.motzkin import (
    OTHER,
    PYRAMID,
    classify_path,
    count_by_local_maxima,
    enumerate_words,
    is_adapted,
    level_return_partition,
    local_maxima,
    motzkin_number,
    parse_word,
    two_maxima_closed_form,
)
from motzkinfree.ncalg import AlgebraSpec, Element, FunctionalTable, Jet, SpecContext, center, evaluate
from motzkinfree.oracle import boolean_oracle, cfree_oracle, free_oracle, nc_oracle
from motzkinfree.products import (
    boolean_derivative,
    boolean_moment,
    cfree_closed,
    cfree_leibniz,
    characteristic_free,
    higher_moment,
    infinitesimal_moment,
    leibniz_free,
    product_moment,
)
from motzkinfree.timer import Counter

# Printed counts of words with two local maxima, n = 1..13
TWO_MAXIMA_SEQUENCE = (0, 1, 0, 3, 1, 6, 3, 10, 6, 15, 10, 21, 15)

# Level return partitions of the worked words
PARTITION_FIXTURES = {
    '123332112121': [[1, 7], [2, 6], [3], [4], [5], [8, 10, 12], [9], [11]],
    '112323223211': [[1], [2, 11], [3, 5, 7], [4], [6], [8, 10], [9], [12]],
    '123432334321': [[1, 12], [2, 6, 11], [3, 5], [4], [7], [8, 10], [9]],
}

LOCAL_MAXIMA_FIXTURES = {
    '123332112121': [3, 4, 5, 9, 11],
    '11': [1, 2],
    '1': [1],
}

LABELS = ('A', 'B', 'C')


class Counterexample(Exception):
    """Raised inside a suite on the first disagreement."""

    def __init__(self, message, **payload):
        super().__init__(message)
        self.payload = {'message': message}
        self.payload.update({k: _show(v) for k, v in payload.items()})


def _show(value):
    if isinstance(value, Fraction):
        return fraction_str(value)
    if isinstance(value, Jet):
        return [fraction_str(c) for c in value.coeffs]
    if isinstance(value, (list, tuple)):
        return [_show(v) for v in value]
    if isinstance(value, (int, str, bool)) or value is None:
        return value
    return str(value)


def expect(got, expected, message, **payload):
    if got != expected:
        raise Counterexample(message, got=got, expected=expected, **payload)


@dataclass
class SuiteResult:
    name: str
    passed: bool
    cases: int
    counterexample: Optional[Dict] = None
    seconds: float = 0.0

    def as_dict(self):
        ret = {'name': self.name, 'passed': self.passed, 'cases': self.cases}
        if self.counterexample is not None:
            ret['counterexample'] = self.counterexample
        return ret


@dataclass
class SuiteParams:
    n_max: int = 6
    cases: int = 50
    seed: int = 0
    order: int = 2


@dataclass
class Instance:
    ctx: SpecContext
    factors: FactorTuple
    notes: Dict = field(default_factory=dict)

    def describe(self):
        return {'labels': list(self.factors.labels), 'factors': [str(e) for e in self.factors]}


#####################
# INSTANCE GENERATION
#####################


def random_rational(rng: random.Random, size=3, nonzero=False) -> Fraction:
    while True:
        value = Fraction(rng.randint(-size, size), rng.randint(1, size))
        if value or not nonzero:
            return value


def _words_up_to(generators, degree):
    for length in range(1, degree + 1):
        yield from product(generators, repeat=length)


def random_table(label, generators, degree, order, rng: random.Random, kind=PHI) -> FunctionalTable:
    """Random moment jets for every word of length <= degree; the unit stays normalized."""
    moments = {
        word: Jet(tuple(random_rational(rng) for _ in range(order + 1))) for word in _words_up_to(generators, degree)
    }
    return FunctionalTable(label, kind, order, moments, generator=generators[0])


def random_labels(n, rng: random.Random, pool=LABELS) -> List[str]:
    """Random labels with distinct neighbours."""
    labels = []
    for _ in range(n):
        choices = [label for label in pool if not labels or label != labels[-1]]
        labels.append(rng.choice(choices))
    return labels


def palindromic_labels(n, rng: random.Random, pool=LABELS) -> List[str]:
    """Random labels with i_k = i_{n+1-k} and distinct neighbours (n odd)."""
    half = random_labels((n + 1) // 2, rng, pool)
    return half + half[-2::-1]


def adapted_labels(w, rng: random.Random, pool=LABELS, attempts=50) -> Optional[List[str]]:
    """Labels constant on the blocks of w and adapted to it, or None."""
    partition = level_return_partition(w)
    for _ in range(attempts):
        labels = [None] * len(w)
        for block in partition:
            label = rng.choice(pool)
            for p in block.positions:
                labels[p - 1] = label
        if is_adapted(w, labels).adapted:
            return labels
    return None


def random_element(label, generators, rng: random.Random, max_degree=2) -> Element:
    """A random non scalar polynomial, possibly with a constant term."""
    terms = {}
    for _ in range(rng.randint(1, 2)):
        word = tuple(rng.choice(generators) for _ in range(rng.randint(1, max_degree)))
        terms[word] = random_rational(rng, nonzero=True)
    if rng.random() < 0.5:
        terms[()] = random_rational(rng)
    return Element.from_terms(label, terms)


def random_context(labels, mode, order, rng: random.Random, factor_degree=2, generators=('x',)) -> SpecContext:
    """Tables covering every word the products of the given labels can reach."""
    algebras = {}
    for label in sorted(set(labels)):
        degree = factor_degree * sum(1 for i in labels if i == label)
        phi = random_table(label, generators, degree, order, rng)
        psi = random_table(label, generators, degree, order, rng, kind=PSI) if mode == CFREE else None
        algebras[label] = AlgebraSpec(label, tuple(generators), phi, psi)
    return SpecContext(mode, order, algebras)


def random_instance(labels, mode, order, rng: random.Random, pattern=None, generators=('x',)) -> Instance:
    """Random factors on given labels, centered when a pattern ('free' or 'cfree') is given."""
    ctx = random_context(labels, mode, order, rng, generators=generators)
    elements = []
    for k, label in enumerate(labels):
        e = random_element(label, list(generators), rng)
        if pattern is not None:
            kind = PHI if pattern == FREE or k == 0 else PSI
            e = center(e, ctx.table(label, kind))
        elements.append(e)
    return Instance(ctx, FactorTuple(tuple(elements)))


def degenerate_cfree(ctx: SpecContext) -> SpecContext:
    """C-free context whose psi tables are copies of the phi tables."""
    algebras = {}
    for label, spec in ctx.algebras.items():
        psi = FunctionalTable(label, PSI, ctx.order, dict(spec.phi.moments), spec.phi.law, spec.phi.generator)
        algebras[label] = AlgebraSpec(label, spec.generators, spec.phi, psi)
    return SpecContext(CFREE, ctx.order, algebras)


########
# SUITES
########


def suite_partitions(params: SuiteParams, rng: random.Random) -> int:
    cases = 0
    for text, blocks in PARTITION_FIXTURES.items():
        expect(level_return_partition(parse_word(text)).as_lists(), blocks, 'partition fixture', word=text)
        cases += 1
    for text, maxima in LOCAL_MAXIMA_FIXTURES.items():
        expect(local_maxima(parse_word(text)), maxima, 'local maxima fixture', word=text)
        cases += 1

    for n in range(1, max(params.n_max, 1) + 1):
        for w in enumerate_words(n):
            check_partition(w)
            cases += 1
    return cases


def _linked(w, level, p, q):
    return q - p > 1 and min(w.letters[p : q - 1]) > level


def check_partition(w):
    """All the structural properties of the level return partition of w."""
    partition = level_return_partition(w)
    positions = sorted(p for block in partition for p in block.positions)
    expect(positions, list(range(1, len(w) + 1)), 'blocks do not partition the positions', word=w)
    for block in partition:
        expect({w.letter(p) for p in block.positions}, {block.level}, 'block is not level constant', word=w)
        for p, q in block.gaps():
            expect(_linked(w, block.level, p, q), True, 'gap or return condition fails', word=w, block=block)
    for u, v in product(partition, repeat=2):
        if u is v or u.level != v.level:
            continue
        merged = sorted(u.positions + v.positions)
        if all(_linked(w, u.level, p, q) for p, q in pairwise(merged)):
            raise Counterexample('two blocks can be merged', word=w, blocks=[u, v])
        for a, c in pairwise(u.positions):
            for b, d in pairwise(v.positions):
                if a < b < c < d:
                    raise Counterexample('partition is crossing', word=w, blocks=[u, v])
    singletons = [block.first for block in partition.singletons()]
    expect(singletons, local_maxima(w), 'singletons differ from local maxima', word=w)


def suite_counting(params: SuiteParams, rng: random.Random) -> int:
    cases = 0
    for n in range(1, 13):
        expect(len(enumerate_words(n)), motzkin_number(n - 1), 'word count differs from the Motzkin number', n=n)
        cases += 1
    for n, expected in enumerate(TWO_MAXIMA_SEQUENCE, start=1):
        expect(count_by_local_maxima(n, 2), expected, 'two local maxima count', n=n)
        expect(two_maxima_closed_form(n), expected, 'two local maxima closed form', n=n)
        cases += 1
    return cases


def suite_oracle_free(params: SuiteParams, rng: random.Random) -> int:
    for case in range(params.cases):
        n = rng.randint(1, params.n_max)
        generators = ('x', 'y') if rng.random() < 0.25 else ('x',)
        inst = random_instance(random_labels(n, rng), FREE, params.order, rng, generators=generators)
        engine = product_moment(inst.ctx, inst.factors)
        expect(engine, free_oracle(inst.ctx, inst.factors), 'decomposition differs from the centering oracle', case=case, **inst.describe())
        expect(engine, nc_oracle(inst.ctx, inst.factors), 'decomposition differs from the cumulant oracle', case=case, **inst.describe())
    return params.cases


def suite_pyramid(params: SuiteParams, rng: random.Random) -> int:
    order = max(params.order, 1)
    for case in range(params.cases):
        n = rng.randint(1, params.n_max)
        labels = palindromic_labels(n, rng) if n % 2 and rng.random() < 0.5 else random_labels(n, rng)
        inst = random_instance(labels, FREE, order, rng, pattern=FREE)
        ctx, f = inst.ctx, inst.factors
        for w in enumerate_words(n):
            if not is_adapted(w, f.labels).adapted:
                continue
            leibniz = motzkin_derivative_leibniz(ctx, w, f)
            kind = classify_path(w)
            if kind.kind != PYRAMID and not kind.pyramid_compatible:
                expect(leibniz, Fraction(0), 'non-pyramid word carries a first derivative', case=case, word=w, **inst.describe())
            expect(motzkin_derivative_closed(ctx, w, f), leibniz, 'closed form differs from the Leibniz rule', case=case, word=w, **inst.describe())
        engine = infinitesimal_moment(ctx, f)
        expect(leibniz_free(ctx, f), engine, 'Leibniz definition differs from the decomposition', case=case, **inst.describe())
        expect(characteristic_free(ctx, f), engine, 'characteristic formula differs', case=case, **inst.describe())
        if n <= 6:
            expect(free_oracle(ctx, f).derivative(1), engine, 'oracle derivative differs', case=case, **inst.describe())
    return params.cases


def suite_higher(params: SuiteParams, rng: random.Random) -> int:
    order = max(params.order, 3)
    n_max = min(params.n_max, 8)
    for case in range(params.cases):
        n = rng.randint(1, n_max)
        # the c-free instances stop at length 7
        for mode in (FREE, CFREE):
            length = n if mode == FREE else min(n, 7)
            inst = random_instance(random_labels(length, rng), mode, order, rng, pattern=mode)
            _check_higher(inst, case)
    return params.cases


def _check_higher(inst, case):
    """Multinomial formula and pruning against the jet derivatives, for m = 2, 3."""
    ctx, f = inst.ctx, inst.factors
    for m in (2, 3):
        for w in enumerate_words(len(f)):
            if not is_adapted(w, f.labels).adapted:
                continue
            value = motzkin_higher(ctx, w, f, m)
            expect(value, motzkin_functional(ctx, w, f).derivative(m), 'multinomial formula differs from the jet', case=case, word=w, m=m, **inst.describe())
            if len(relevant_singletons(ctx, w)) > m:
                expect(value, Fraction(0), 'too many relevant singletons but nonzero', case=case, word=w, m=m, **inst.describe())
        expect(higher_moment(ctx, f, m, prune=True), higher_moment(ctx, f, m), 'pruning changed the sum', case=case, m=m, **inst.describe())


def suite_boolean(params: SuiteParams, rng: random.Random) -> int:
    order = max(params.order, 1)
    for case in range(params.cases):
        n = rng.randint(1, params.n_max)
        inst = random_instance(random_labels(n, rng), FREE, order, rng)
        ctx, f = inst.ctx, inst.factors
        jet = boolean_moment(ctx, f)
        expect(jet, boolean_oracle(ctx, f), 'Boolean product differs from the oracle', case=case, **inst.describe())
        expect(jet.derivative(1), boolean_derivative(ctx, f), 'Boolean Leibniz sum differs', case=case, **inst.describe())
        expect(motzkin_derivative_leibniz(ctx, parse_word('1' * n), f), jet.derivative(1), 'flat word derivative differs', case=case, **inst.describe())

        # one centered slot among units gives its derivative, two centered slots give zero
        centered = [center(e, ctx.table(e.label)) for e in f.elements]
        slots = rng.sample(range(n), min(n, rng.randint(1, 2)))
        mixed = FactorTuple(tuple(e if k in slots else Element.unit(e.label) for k, e in enumerate(centered)))
        expected = evaluate(ctx.table(mixed.factor(slots[0] + 1).label), centered[slots[0]]).derivative(1)
        expect(boolean_derivative(ctx, mixed), expected if len(slots) == 1 else Fraction(0), 'single centered slot rule', case=case, slots=slots)
    return params.cases


def suite_cfree_class(params: SuiteParams, rng: random.Random) -> int:
    order = max(params.order, 1)
    n_max = min(params.n_max, 8)
    for case in range(params.cases):
        n = rng.randint(1, n_max)
        labels = palindromic_labels(n, rng) if n % 2 and rng.random() < 0.5 else random_labels(n, rng)
        if n > 2 and rng.random() < 0.5:
            # symmetric pyramid part followed by a free tail
            length = 2 * rng.randint(2, (n + 1) // 2) - 1
            head = palindromic_labels(length, rng)
            labels = head + random_labels(n - length + 1, rng)[1:]
            labels = _repair(labels, rng)
        inst = random_instance(labels, CFREE, order, rng, pattern=CFREE)
        ctx, f = inst.ctx, inst.factors
        for w in enumerate_words(n):
            leibniz = motzkin_derivative_leibniz(ctx, w, f)
            kind = classify_path(w).kind
            if kind == OTHER:
                expect(leibniz, Fraction(0), 'unclassified word carries a first derivative', case=case, word=w, **inst.describe())
            expect(motzkin_derivative_closed(ctx, w, f), leibniz, 'closed form differs from the Leibniz rule', case=case, word=w, **inst.describe())
    return params.cases


def _repair(labels, rng):
    """Fix adjacent repeats left by gluing two label lists."""
    for k in range(1, len(labels)):
        if labels[k] == labels[k - 1]:
            labels[k] = rng.choice([label for label in LABELS if label != labels[k - 1] and (k + 1 == len(labels) or label != labels[k + 1])])
    return labels


def suite_cfree_leibniz(params: SuiteParams, rng: random.Random) -> int:
    order = max(params.order, 1)
    n_max = min(params.n_max, 7)
    for case in range(params.cases):
        n = rng.randint(1, n_max)
        labels = palindromic_labels(n, rng) if n % 2 and rng.random() < 0.5 else random_labels(n, rng)
        inst = random_instance(labels, CFREE, order, rng, pattern=CFREE)
        ctx, f = inst.ctx, inst.factors
        closed = cfree_closed(ctx, f)
        expect(cfree_leibniz(ctx, f), closed, 'c-free Leibniz definition differs from the closed form', case=case, **inst.describe())
        expect(infinitesimal_moment(ctx, f), closed, 'decomposition differs from the closed form', case=case, **inst.describe())
        if n <= 5:
            expect(cfree_oracle(ctx, f).phi.derivative(1), closed, 'oracle derivative differs', case=case, **inst.describe())

        # psi = phi collapses c-freeness to freeness
        plain = random_instance(random_labels(min(n, 5), rng), FREE, order, rng)
        twin = degenerate_cfree(plain.ctx)
        expect(product_moment(twin, plain.factors).phi, product_moment(plain.ctx, plain.factors), 'degenerate c-free product differs from the free one', case=case, **plain.describe())
        expect(cfree_oracle(twin, plain.factors).phi, free_oracle(plain.ctx, plain.factors), 'degenerate c-free oracle differs', case=case, **plain.describe())
    return params.cases


#################
# WORKED EXAMPLES
#################


def _phi(ctx, f, *positions, kind=PHI):
    """Order-0 value of the product of the given factors, zero across algebras."""
    if len({f.factor(p).label for p in positions}) > 1:
        return Fraction(0)
    e = f.factor(positions[0])
    for p in positions[1:]:
        e = e * f.factor(p)
    return evaluate(ctx.table(e.label, kind), e).value


def _dphi(ctx, f, position, kind=PHI):
    e = f.factor(position)
    return evaluate(ctx.table(e.label, kind), e).derivative(1)


def _delta(labels, *pairs):
    return int(all(labels[p - 1] == labels[q - 1] for p, q in pairs))


def worked_three_factor_word(rng):
    """Phi_121 of arbitrary factors is the pair cumulant times the middle moment."""
    inst = random_instance(['A', 'B', 'A'], FREE, 1, rng)
    ctx, f = inst.ctx, inst.factors
    pair = _phi(ctx, f, 1, 3) - _phi(ctx, f, 1) * _phi(ctx, f, 3)
    expect(motzkin_functional(ctx, parse_word('121'), f).value, pair * _phi(ctx, f, 2), 'Phi_121', **inst.describe())


def worked_free_pyramid(rng):
    """n = 5: only 12321 carries a first derivative."""
    for labels in (['A', 'B', 'C', 'B', 'A'], ['A', 'B', 'C', 'B', 'C'], ['A', 'B', 'A', 'B', 'A']):
        inst = random_instance(labels, FREE, 1, rng, pattern=FREE)
        ctx, f = inst.ctx, inst.factors
        expected = _delta(labels, (1, 5), (2, 4)) * _phi(ctx, f, 1, 5) * _phi(ctx, f, 2, 4) * _dphi(ctx, f, 3)
        expect(infinitesimal_moment(ctx, f), expected, 'free n=5 derivative', **inst.describe())
        for w, value in word_first_derivatives(ctx, f):
            if str(w) != '12321':
                expect(value, Fraction(0), 'non-pyramid word contributes', word=w, **inst.describe())


def word_first_derivatives(ctx, f):
    return [(w, motzkin_derivative_leibniz(ctx, w, f)) for w in enumerate_words(len(f))]


# second derivative of the six words of length 6 with two local maxima:
# (word, label equalities, pair moments, singletons)
SECOND_ORDER_WORDS = (
    ('123321', ((1, 6), (2, 5)), ((1, 6), (2, 5)), (3, 4)),
    ('112321', ((2, 6), (3, 5)), ((2, 6), (3, 5)), (1, 4)),
    ('123211', ((1, 5), (2, 4)), ((1, 5), (2, 4)), (3, 6)),
    ('122321', ((1, 6), (3, 5)), ((1, 6), (3, 5)), (2, 4)),
    ('123221', ((1, 6), (2, 4)), ((1, 6), (2, 4)), (3, 5)),
    ('121121', ((1, 3), (4, 6)), ((1, 3), (4, 6)), (2, 5)),
)


def _second_order_term(ctx, f, pairs, singletons):
    value = Fraction(2)
    for p, q in pairs:
        value *= _phi(ctx, f, p, q)
    for p in singletons:
        value *= _dphi(ctx, f, p)
    return value


def worked_second_order(rng):
    """n = 6 has no pyramid; the six two-maxima words give the second derivative."""
    for text, _, pairs, singletons in SECOND_ORDER_WORDS:
        w = parse_word(text)
        labels = adapted_labels(w, rng)
        expect(labels is not None, True, 'no adapted labels found', word=w)
        inst = random_instance(labels, FREE, 2, rng, pattern=FREE)
        ctx, f = inst.ctx, inst.factors
        expect(motzkin_higher(ctx, w, f, 2), _second_order_term(ctx, f, pairs, singletons), 'second order word', word=w, **inst.describe())

    for labels in (['A', 'B', 'A', 'B', 'A', 'B'], random_labels(6, rng)):
        inst = random_instance(labels, FREE, 2, rng, pattern=FREE)
        ctx, f = inst.ctx, inst.factors
        expected = sum(
            (_delta(labels, *equal) * _second_order_term(ctx, f, pairs, singletons) for _, equal, pairs, singletons in SECOND_ORDER_WORDS),
            Fraction(0),
        )
        expect(higher_moment(ctx, f, 2), expected, 'n=6 second derivative', **inst.describe())


def worked_cfree_words(rng):
    """n = 5, c-free: the flat word, 12111 and 12321."""
    for labels in (['A', 'B', 'A', 'B', 'A'], ['A', 'B', 'C', 'B', 'A'], ['A', 'B', 'C', 'A', 'B']):
        inst = random_instance(labels, CFREE, 1, rng, pattern=CFREE)
        ctx, f = inst.ctx, inst.factors
        flat = _dphi(ctx, f, 1) * _phi(ctx, f, 2) * _phi(ctx, f, 3) * _phi(ctx, f, 4) * _phi(ctx, f, 5)
        step = _dphi(ctx, f, 2, PSI) * _phi(ctx, f, 1, 3) * _phi(ctx, f, 4) * _phi(ctx, f, 5)
        pyramid = _dphi(ctx, f, 3, PSI) * _phi(ctx, f, 1, 5) * _phi(ctx, f, 2, 4, kind=PSI)
        expected = {
            '11111': flat,
            '12111': _delta(labels, (1, 3)) * step,
            '12321': _delta(labels, (1, 5), (2, 4)) * pyramid,
        }
        for w, value in word_first_derivatives(ctx, f):
            expect(value, expected.get(str(w), Fraction(0)), 'c-free word derivative', word=w, **inst.describe())


def _cfree_display(ctx, f, labels):
    """First derivative of the c-free product of 3, 4 or 5 pattern-centered factors."""
    n = len(labels)
    value = _dphi(ctx, f, 1)
    for k in range(2, n + 1):
        value *= _phi(ctx, f, k)
    tail = Fraction(1)
    for k in range(4, n + 1):
        tail *= _phi(ctx, f, k)
    value += _delta(labels, (1, 3)) * _phi(ctx, f, 1, 3) * _dphi(ctx, f, 2, PSI) * tail
    if n == 5:
        value += _delta(labels, (1, 5), (2, 4)) * _phi(ctx, f, 1, 5) * _phi(ctx, f, 2, 4, kind=PSI) * _dphi(ctx, f, 3, PSI)
    return value


def worked_cfree_moments(rng):
    """c-free first derivatives for n = 3, 4, 5."""
    for labels in (['A', 'B', 'A'], ['A', 'B', 'C'], ['A', 'B', 'A', 'C'], ['A', 'B', 'A', 'B', 'A'], ['A', 'B', 'C', 'B', 'A']):
        inst = random_instance(labels, CFREE, 1, rng, pattern=CFREE)
        ctx, f = inst.ctx, inst.factors
        expected = _cfree_display(ctx, f, labels)
        expect(infinitesimal_moment(ctx, f), expected, 'c-free display', **inst.describe())
        expect(cfree_leibniz(ctx, f), expected, 'c-free Leibniz', **inst.describe())


WORKED = {
    'three-factor-word': worked_three_factor_word,
    'free-pyramid': worked_free_pyramid,
    'second-order': worked_second_order,
    'cfree-words': worked_cfree_words,
    'cfree-moments': worked_cfree_moments,
}


def suite_worked_examples(params: SuiteParams, rng: random.Random) -> int:
    """Worked identities, on fixed random tables."""
    for name, check in WORKED.items():
        try:
            check(random.Random(params.seed))
        except Counterexample as err:
            err.payload['example'] = name
            raise
    return len(WORKED)


SUITES: Dict[str, Callable[[SuiteParams, random.Random], int]] = {
    'partitions': suite_partitions,
    'counting': suite_counting,
    'oracle-free': suite_oracle_free,
    'pyramid': suite_pyramid,
    'higher': suite_higher,
    'boolean': suite_boolean,
    'cfree-class': suite_cfree_class,
    'cfree-leibniz': suite_cfree_leibniz,
    'paper-examples': suite_worked_examples,
}


def run_suite(name: str, params: SuiteParams) -> SuiteResult:
    """Run one suite and catch its first counterexample or error."""
    counter = Counter()
    rng = random.Random(params.seed)
    try:
        cases = SUITES[name](params, rng)
    except Counterexample as err:
        logger.error(f'Suite {name} failed: {err.payload}')
        return SuiteResult(name, False, 0, err.payload, counter.get())
    except MotzkinError as err:
        # a suite that cannot build or evaluate its instances fails with the error
        payload = {'message': str(err), 'error': type(err).__name__}
        logger.error(f'Suite {name} raised {payload["error"]}: {err}')
        return SuiteResult(name, False, 0, payload, counter.get())
    result = SuiteResult(name, True, cases, None, counter.get())
    logger.info(f'Suite {name} passed ({cases} cases in {result.seconds:.2f}s)')
    return result


def run_suites(names: Sequence[str], params_for: Callable[[str], SuiteParams]) -> List[SuiteResult]:
    return [run_suite(name, params_for(name)) for name in names]
