#
# This file is part of motzkinfree.
#
# SPDX-License-Identifier: LGPL-3.0-only
#

"""Moments of free, Boolean and c-free products.

Product moments are sums of Motzkin functionals over all reduced Motzkin
words of the length of the (normalized) factor tuple. The Leibniz and
characteristic forms of the infinitesimal moments are provided next to the
decomposition so that they can be compared with it.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, NamedTuple, Sequence, Tuple, Union

from motzkinfree.functionals import (
    FactorTuple,
    check_centered,
    cfree_pyramid_term,
    motzkin_functional,
    motzkin_higher,
    relevant_singletons,
)
from motzkinfree.globals import CFREE, FREE, PHI, PSI, ModeError, OrderMismatch
from motzkinfree.logger import logger
from motzkinfree.motzkin import MotzkinWord, enumerate_words
from motzkinfree.ncalg import Element, Jet, SpecContext, evaluate

MOMENT = 'moment'
DERIVATIVE = 'derivative'


class CFreeMoment(NamedTuple):
    """phi-side and psi-side of a c-free product value (jets or scalars)."""

    phi: object
    psi: object


@dataclass(frozen=True)
class ProductQuery:
    """Factors of a product (not necessarily alternating) and the requested outputs.

    outputs holds 'moment' and 'derivative:k' entries.
    """

    factors: Tuple[Element, ...]
    outputs: Tuple[str, ...] = (MOMENT,)

    def __post_init__(self):
        object.__setattr__(self, 'factors', tuple(self.factors))
        object.__setattr__(self, 'outputs', tuple(self.outputs))
        if not self.factors:
            raise ValueError('a product query needs at least one factor')

    @property
    def derivative_orders(self) -> List[int]:
        ret = []
        for output in self.outputs:
            if output.startswith(DERIVATIVE + ':'):
                ret.append(int(output.split(':', 1)[1]))
        return ret

    @property
    def wants_moment(self):
        return MOMENT in self.outputs


def normalize_alternating(elements: Sequence[Element], scale=Fraction(1)) -> FactorTuple:
    """Absorb scalar factors and multiply adjacent factors of the same algebra."""
    merged: List[Element] = []
    for e in elements:
        if e.is_scalar:
            scale = scale * e.scalar_part
            continue
        if merged and merged[-1].label == e.label:
            merged[-1] = merged[-1] * e
        else:
            merged.append(e)
    if not scale:
        return FactorTuple((), scale)
    return FactorTuple(tuple(merged), scale)


def as_factors(q: Union[ProductQuery, FactorTuple, Sequence[Element]]) -> FactorTuple:
    if isinstance(q, FactorTuple):
        return q
    if isinstance(q, ProductQuery):
        return normalize_alternating(q.factors)
    return normalize_alternating(q)


def _words(f: FactorTuple) -> List[MotzkinWord]:
    return enumerate_words(len(f))


def _check_order(ctx, m):
    if m < 0 or m > ctx.order:
        raise OrderMismatch(f'derivative of order {m} with jet order {ctx.order}')


def _free_sum(ctx: SpecContext, f: FactorTuple) -> Jet:
    if not f.elements:
        return Jet.unit(ctx.order) * f.scale
    total = Jet.zero(ctx.order)
    for w in _words(f):
        total = total + motzkin_functional(ctx, w, f)
    return total


def product_moment(ctx: SpecContext, q) -> Union[Jet, CFreeMoment]:
    """Jet of the product moment (a CFreeMoment of jets in c-free mode)."""
    f = as_factors(q)
    if ctx.mode == FREE:
        return _free_sum(ctx, f)
    return CFreeMoment(_free_sum(ctx, f), _free_sum(ctx.psi_context(), f))


def higher_moment(ctx: SpecContext, q, m: int, prune=False, override=False) -> Fraction:
    """m-th derivative of the phi-side product moment, summed word by word.

    With prune=True the factors must be centered (all phi-centered in free
    mode, first phi and the rest psi-centered in c-free mode) and the words
    with more relevant singletons than m are skipped.
    """
    _check_order(ctx, m)
    f = as_factors(q)
    if not f.elements:
        return Jet.unit(ctx.order).derivative(m) * f.scale
    if prune and m >= 1:
        check_centered(ctx, f, override=override)
        total = Fraction(0)
        skipped = 0
        for w in _words(f):
            if len(relevant_singletons(ctx, w)) > m:
                skipped += 1
                continue
            total += motzkin_higher(ctx, w, f, m, override=True)
        logger.debug(f'Pruned {skipped} words of length {len(f)} for a derivative of order {m}')
        return total
    return sum((motzkin_functional(ctx, w, f).derivative(m) for w in _words(f)), Fraction(0))


def infinitesimal_moment(ctx: SpecContext, q, prune=False, override=False) -> Fraction:
    return higher_moment(ctx, q, 1, prune=prune, override=override)


def cfree_infinitesimal(ctx: SpecContext, q, m=1) -> CFreeMoment:
    """m-th derivatives of both sides of a c-free product moment."""
    if ctx.mode != CFREE:
        raise ModeError('cfree_infinitesimal needs a cfree context')
    return CFreeMoment(higher_moment(ctx, q, m), higher_moment(ctx.psi_context(), q, m))


def word_contributions(ctx: SpecContext, q, m=0, kind=PHI) -> List[Tuple[MotzkinWord, Fraction]]:
    """Nonzero per-word m-th derivatives of Phi_w, in lexicographic word order."""
    _check_order(ctx, m)
    f = as_factors(q)
    if kind == PSI:
        ctx = ctx.psi_context()
    ret = []
    for w in _words(f):
        value = motzkin_functional(ctx, w, f).derivative(m)
        if value:
            ret.append((w, value))
    return ret


def _require_mode(ctx, mode, name):
    if ctx.mode != mode:
        raise ModeError(f'{name} needs a {mode} context, got {ctx.mode}')


def _without(f: FactorTuple, k: int) -> FactorTuple:
    """Factors with slot k (1-based) removed, normalized again."""
    return normalize_alternating(f.elements[: k - 1] + f.elements[k:], f.scale)


def leibniz_free(ctx: SpecContext, q, override=False) -> Fraction:
    """phi'(a_1...a_n) = sum_k phi'(a_k) phi(a_1...a_{k-1} a_{k+1}...a_n)."""
    _require_mode(ctx, FREE, 'leibniz_free')
    f = as_factors(q)
    check_centered(ctx, f, override=override)
    total = Fraction(0)
    for k, e in enumerate(f.elements, start=1):
        derivative = evaluate(ctx.table(e.label), e).derivative(1)
        if derivative:
            total += derivative * product_moment(ctx, _without(f, k)).value
    return total


def characteristic_free(ctx: SpecContext, q, override=False) -> Fraction:
    """Infinitesimal alternating moment of centered factors by the pairing rule."""
    _require_mode(ctx, FREE, 'characteristic_free')
    f = as_factors(q)
    check_centered(ctx, f, override=override)
    n = len(f)
    if n == 0 or n % 2 == 0:
        return Fraction(0)
    labels = f.labels
    if any(labels[k] != labels[n - 1 - k] for k in range(n // 2)):
        return Fraction(0)
    middle = (n + 1) // 2
    value = evaluate(ctx.table(labels[middle - 1]), f.factor(middle)).derivative(1)
    for k in range(1, middle):
        value *= evaluate(ctx.table(labels[k - 1]), f.factor(k) * f.factor(n + 1 - k)).value
    return value * f.scale


def boolean_moment(ctx: SpecContext, q) -> Jet:
    """Boolean product moment: product of the marginal moment jets."""
    f = as_factors(q)
    total = Jet.unit(ctx.order) * f.scale
    for e in f.elements:
        total = total * evaluate(ctx.table(e.label), e)
    return total


def boolean_derivative(ctx: SpecContext, q) -> Fraction:
    """sum_k phi(a_1)...phi'(a_k)...phi(a_n) for the Boolean product."""
    if ctx.order < 1:
        raise OrderMismatch('first derivatives need a jet order of at least 1')
    f = as_factors(q)
    jets = [evaluate(ctx.table(e.label), e) for e in f.elements]
    total = Fraction(0)
    for k, jet in enumerate(jets):
        term = jet.derivative(1)
        for i, other in enumerate(jets):
            if i != k:
                term *= other.value
        total += term
    return total * f.scale


def cfree_leibniz(ctx: SpecContext, q, override=False) -> Fraction:
    """phi'(a_1) phi(a_2...a_n) + sum_{m>=2} psi'(a_m) phi(a_1...a_{m-1} a_{m+1}...a_n)."""
    _require_mode(ctx, CFREE, 'cfree_leibniz')
    f = as_factors(q)
    check_centered(ctx, f, override=override)
    total = Fraction(0)
    for k, e in enumerate(f.elements, start=1):
        kind = PHI if k == 1 else PSI
        derivative = evaluate(ctx.table(e.label, kind), e).derivative(1)
        if derivative:
            total += derivative * product_moment(ctx, _without(f, k)).phi.value
    return total


def cfree_closed(ctx: SpecContext, q, override=False) -> Fraction:
    """Infinitesimal c-free moment of pattern-centered factors in closed form.

    The flat term plus one pyramid term for every apex m >= 2 with
    2m - 1 <= n whose labels are symmetric on the pyramid.
    """
    _require_mode(ctx, CFREE, 'cfree_closed')
    f = as_factors(q)
    check_centered(ctx, f, override=override)
    n = len(f)
    if n == 0:
        return Fraction(0)
    labels = f.labels
    total = evaluate(ctx.table(labels[0]), f.factor(1)).derivative(1)
    for k in range(2, n + 1):
        total *= evaluate(ctx.table(labels[k - 1]), f.factor(k)).value
    middle = 2
    while 2 * middle - 1 <= n:
        length = 2 * middle - 1
        if all(labels[k] == labels[length - 1 - k] for k in range(middle - 1)):
            total += cfree_pyramid_term(ctx, f, middle)
        middle += 1
    return total * f.scale
