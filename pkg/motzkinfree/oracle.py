#
# This file is part of motzkinfree.
#
# SPDX-License-Identifier: LGPL-3.0-only
#

"""Brute-force product moments.

These computations do not use Motzkin words. They only serve to check the
decomposition engine of the products module.

The centering recursion writes every factor as its centered part plus a
jet-valued scalar, a_k = a_k° + phi_t(a_k) 1. The term where every factor is
centered vanishes by freeness (or c-freeness); all the other terms have
fewer factors once the units are dropped and the newly adjacent factors of
one algebra are multiplied.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from motzkinfree.functionals import FactorTuple
from motzkinfree.globals import CFREE, FREE, PHI, PSI, ModeError
from motzkinfree.logger import logger
from motzkinfree.ncalg import Element, Jet, SpecContext, evaluate, free_cumulant, noncrossing_partitions
from motzkinfree.products import CFreeMoment, as_factors


@dataclass
class RecursionTrace:
    """Counters filled by the centering recursion when asked for."""

    calls: int = 0
    cache_hits: int = 0
    max_depth: int = 0
    terms: int = 0

    def enter(self, depth):
        self.calls += 1
        self.max_depth = max(self.max_depth, depth)

    def as_dict(self):
        return {'calls': self.calls, 'cache_hits': self.cache_hits, 'max_depth': self.max_depth, 'terms': self.terms}


def _merge(elements: Sequence[Element]) -> Tuple[Tuple[Element, ...], object]:
    """Drop scalar factors into a scale and multiply adjacent factors of one algebra."""
    scale = 1
    merged: List[Element] = []
    for e in elements:
        if e.is_scalar:
            scale = e.scalar_part * scale
            continue
        if merged and merged[-1].label == e.label:
            merged[-1] = merged[-1] * e
        else:
            merged.append(e)
    return tuple(merged), scale


class _CenteringRecursion:
    """phi_t of alternating products by the centering recursion.

    kinds(k, n) gives the functional centering slot k of n factors.
    """

    def __init__(self, ctx: SpecContext, kinds, memoize=True, trace=None):
        self.ctx = ctx
        self.kinds = kinds
        self.memoize = memoize
        self.trace = trace
        self.cache: Dict[Tuple[Element, ...], Jet] = {}

    def __call__(self, elements: Tuple[Element, ...], depth=0) -> Jet:
        if self.trace is not None:
            self.trace.enter(depth)
        order = self.ctx.order
        if not elements:
            return Jet.unit(order)
        if self.memoize and elements in self.cache:
            if self.trace is not None:
                self.trace.cache_hits += 1
            return self.cache[elements]

        n = len(elements)
        if n == 1:
            value = evaluate(self.ctx.table(elements[0].label, self.kinds(0, 1)), elements[0])
        else:
            scalars = [evaluate(self.ctx.table(e.label, self.kinds(k, n)), e) for k, e in enumerate(elements)]
            centered = [e - Element.unit(e.label, c) for e, c in zip(elements, scalars)]
            value = Jet.zero(order)
            # subsets of slots replaced by their scalar part, the empty one vanishes
            for size in range(1, n + 1):
                for slots in combinations(range(n), size):
                    coeff = Jet.unit(order)
                    for k in slots:
                        coeff = coeff * scalars[k]
                    if not coeff:
                        continue
                    rest, scale = _merge([centered[k] for k in range(n) if k not in slots])
                    if self.trace is not None:
                        self.trace.terms += 1
                    value = value + coeff * scale * self(rest, depth + 1)

        if self.memoize:
            self.cache[elements] = value
        return value


def _lifted(ctx: SpecContext, q) -> Tuple[Tuple[Element, ...], object]:
    f = as_factors(q)
    return tuple(e.lift(ctx.order) for e in f.elements), f.scale


def free_oracle(ctx: SpecContext, q, memoize=True, trace: Optional[RecursionTrace] = None, kind=PHI) -> Jet:
    """phi_t (or psi_t with kind='psi') of the free product by the centering recursion."""
    elements, scale = _lifted(ctx, q)
    recursion = _CenteringRecursion(ctx, lambda k, n: kind, memoize=memoize, trace=trace)
    value = recursion(elements) * scale
    if trace is not None:
        logger.debug(f'Free oracle on {len(elements)} factors: {trace.as_dict()}')
    return value


def cfree_oracle(ctx: SpecContext, q, memoize=True, trace: Optional[RecursionTrace] = None) -> CFreeMoment:
    """phi_t and psi_t of the c-free product.

    The phi-side recursion centers the first factor under phi and the other
    ones under psi; the psi-side is the free product of the psi tables.
    """
    if ctx.mode != CFREE:
        raise ModeError('cfree_oracle needs a cfree context')
    elements, scale = _lifted(ctx, q)
    recursion = _CenteringRecursion(ctx, lambda k, n: PHI if k == 0 else PSI, memoize=memoize, trace=trace)
    phi = recursion(elements) * scale
    psi = free_oracle(ctx, FactorTuple(elements, scale), memoize=memoize, kind=PSI)
    return CFreeMoment(phi, psi)


def nc_oracle(ctx: SpecContext, q, kind=PHI) -> Jet:
    """Sum over noncrossing partitions with blocks inside one algebra of free cumulant products."""
    f = as_factors(q)
    order = ctx.order
    if not f.elements:
        return Jet.unit(order) * f.scale
    labels = f.labels
    total = Jet.zero(order)
    for partition in noncrossing_partitions(len(f)):
        if any(len({labels[i] for i in block}) > 1 for block in partition):
            continue
        term = Jet.unit(order)
        for block in partition:
            table = ctx.table(labels[block[0]], kind)
            term = term * free_cumulant(table, [f.elements[i] for i in block])
            if not term:
                break
        total = total + term
    return total * f.scale


def boolean_oracle(ctx: SpecContext, q) -> Jet:
    """Product of the marginal moments, computed monomial by monomial."""
    f = as_factors(q)
    order = ctx.order
    coeffs = [f.scale] + [0] * order
    value = Jet(tuple(coeffs))
    for e in f.elements:
        table = ctx.table(e.label, PHI)
        factor = Jet.zero(order)
        for word, coeff in e.terms:
            factor = factor + Jet(tuple(coeff * c for c in table.moment(word).coeffs))
        value = value * factor
    return value


def oracle_moment(ctx: SpecContext, q, memoize=True):
    """The centering-recursion value matching products.product_moment."""
    if ctx.mode == FREE:
        return free_oracle(ctx, q, memoize=memoize)
    return cfree_oracle(ctx, q, memoize=memoize)
