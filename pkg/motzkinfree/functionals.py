#
# This file is part of motzkinfree.
#
# SPDX-License-Identifier: LGPL-3.0-only
#

"""Motzkin functionals.

For a word w and factors a_1, ..., a_n, the Motzkin functional is the
product over the blocks of the level return partition of Boolean cumulants
of the factors sitting on each block (zero when the labels are not
adapted). In c-free mode, blocks at level 1 use phi and deeper blocks use
psi. Derivatives are taken at t = 0.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod
from typing import Iterator, List, Sequence, Tuple

from motzkinfree.globals import (
    CFREE,
    FREE,
    PHI,
    PSI,
    CenteringViolation,
    LabelMismatch,
    LengthMismatch,
    MotzkinError,
    OrderMismatch,
)
from motzkinfree.logger import logger
from motzkinfree.motzkin import (
    FLAT,
    PYRAMID,
    PYRAMID_THEN_FLAT,
    Block,
    MotzkinWord,
    classify_path,
    is_adapted,
    level_return_partition,
)
from motzkinfree.ncalg import Element, Jet, SpecContext, boolean_cumulant, evaluate


@dataclass(frozen=True)
class FactorTuple:
    """Alternating factors a_1, ..., a_n times a scalar.

    An empty tuple with scale c stands for c * 1.
    """

    elements: Tuple[Element, ...] = ()
    scale: object = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, 'elements', tuple(self.elements))
        for k in range(1, len(self.elements)):
            if self.elements[k - 1].label == self.elements[k].label:
                raise LabelMismatch(f"factors {k} and {k + 1} both belong to '{self.elements[k].label}'")

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def labels(self):
        return tuple(e.label for e in self.elements)

    def factor(self, position):
        """Return a_position (1-based)."""
        return self.elements[position - 1]


@dataclass(frozen=True)
class GammaSelector:
    """Which functional evaluates a block, from its level."""

    mode: str = FREE

    def __call__(self, level):
        if self.mode == CFREE and level > 1:
            return PSI
        return PHI


def _check_length(w, f):
    if len(w) != len(f):
        raise LengthMismatch(f'word of length {len(w)} applied to {len(f)} factors')


def block_cumulants(ctx: SpecContext, w: MotzkinWord, f: FactorTuple) -> List[Tuple[Block, Jet]]:
    """Selected Boolean cumulant jet of the factors sitting on each block."""
    _check_length(w, f)
    selector = GammaSelector(ctx.mode)
    ret = []
    for block in level_return_partition(w):
        table = ctx.table(f.factor(block.first).label, selector(block.level))
        ret.append((block, boolean_cumulant(table, [f.factor(p) for p in block.positions])))
    return ret


def motzkin_functional(ctx: SpecContext, w: MotzkinWord, f: FactorTuple) -> Jet:
    """Jet of Phi_{w,t}(a_1, ..., a_n)."""
    _check_length(w, f)
    if not is_adapted(w, f.labels).adapted:
        return Jet.zero(ctx.order)
    jets = [jet for _, jet in block_cumulants(ctx, w, f)]
    return prod(jets, start=Jet.unit(ctx.order)) * f.scale


def motzkin_derivative_leibniz(ctx: SpecContext, w: MotzkinWord, f: FactorTuple) -> Fraction:
    """First derivative of Phi_w by the Leibniz rule over blocks."""
    _check_length(w, f)
    if ctx.order < 1:
        raise OrderMismatch('first derivatives need a jet order of at least 1')
    if not is_adapted(w, f.labels).adapted:
        return Fraction(0)
    jets = [jet for _, jet in block_cumulants(ctx, w, f)]
    total = Fraction(0)
    for k, jet in enumerate(jets):
        total += jet.derivative(1) * prod((other.value for i, other in enumerate(jets) if i != k), start=Fraction(1))
    total *= f.scale

    expected = motzkin_functional(ctx, w, f).derivative(1)
    if total != expected:
        raise MotzkinError(f'Leibniz expansion of word {w} gives {total}, the jet gives {expected}')
    return total


def check_centered(ctx: SpecContext, f: FactorTuple, pattern=None, override=False) -> bool:
    """Check the order-0 centering of the factors.

    pattern 'free' asks every factor to be phi-centered, pattern 'cfree'
    asks the first factor to be phi-centered and the others psi-centered.
    Return True when the hypotheses hold. A violation raises
    CenteringViolation, or with override=True is logged and gives False.
    """
    pattern = pattern or ctx.mode
    for k, e in enumerate(f.elements, start=1):
        kind = PHI if pattern == FREE or k == 1 else PSI
        value = evaluate(ctx.table(e.label, kind), e).value
        if value != 0:
            if override:
                logger.warning(f'Factor {k} is not {kind}-centered; result is outside the formula hypotheses')
                return False
            raise CenteringViolation(k, kind, value)
    return True


def relevant_singletons(ctx: SpecContext, w: MotzkinWord) -> List[int]:
    """Singleton positions that must carry a derivative.

    Every singleton in free mode. In c-free mode the singletons at levels
    above 1, plus position 1 when it is a singleton.
    """
    singletons = [block.first for block in level_return_partition(w).singletons()]
    if ctx.mode == FREE:
        return singletons
    return [p for p in singletons if w.letter(p) > 1 or p == 1]


def _compositions(total: int, minima: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    """Tuples (m_1, ..., m_r) with m_i >= minima[i] summing to total."""
    if not minima:
        if total == 0:
            yield ()
        return
    rest = sum(minima[1:])
    for m in range(minima[0], total - rest + 1):
        for tail in _compositions(total - m, minima[1:]):
            yield (m,) + tail


def motzkin_higher(ctx: SpecContext, w: MotzkinWord, f: FactorTuple, m: int, override=False) -> Fraction:
    """m-th derivative of Phi_w by the multinomial formula on centered factors."""
    _check_length(w, f)
    if m < 1 or m > ctx.order:
        raise OrderMismatch(f'derivative of order {m} with jet order {ctx.order}')
    check_centered(ctx, f, override=override)
    if not is_adapted(w, f.labels).adapted:
        return Fraction(0)
    relevant = set(relevant_singletons(ctx, w))
    if len(relevant) > m:
        return Fraction(0)

    blocks = block_cumulants(ctx, w, f)
    minima = [1 if block.is_singleton and block.first in relevant else 0 for block, _ in blocks]
    total = Fraction(0)
    for orders in _compositions(m, minima):
        weight = Fraction(factorial(m), prod(factorial(k) for k in orders))
        total += weight * prod((jet.derivative(k) for (_, jet), k in zip(blocks, orders)), start=Fraction(1))
    return total * f.scale


def _first_derivative(ctx, label, kind, e):
    return evaluate(ctx.table(label, kind), e).derivative(1)


def _value(ctx, label, kind, e):
    return evaluate(ctx.table(label, kind), e).value


def _pyramid_adapted(labels, length):
    return all(labels[k] == labels[length - 1 - k] for k in range(length // 2))


def motzkin_derivative_closed(ctx: SpecContext, w: MotzkinWord, f: FactorTuple, override=False) -> Fraction:
    """First derivative of Phi_w by the closed formulas on centered factors.

    Free mode: only pyramid words contribute, with the paired moments of
    the factors placed symmetrically around the apex times the derivative
    at the apex. C-free mode: flat words, pyramids and pyramids followed by
    a flat tail contribute.
    """
    _check_length(w, f)
    if ctx.order < 1:
        raise OrderMismatch('first derivatives need a jet order of at least 1')
    check_centered(ctx, f, override=override)
    path = classify_path(w)
    labels = f.labels
    a = f.factor
    n = len(w)

    if ctx.mode == FREE:
        if n == 1:
            return _first_derivative(ctx, labels[0], PHI, a(1)) * f.scale
        if path.kind != PYRAMID or not _pyramid_adapted(labels, n):
            return Fraction(0)
        middle = path.middle
        value = _first_derivative(ctx, labels[middle - 1], PHI, a(middle))
        for k in range(1, middle):
            value *= _value(ctx, labels[k - 1], PHI, a(k) * a(n + 1 - k))
        return value * f.scale

    if path.kind == FLAT:
        value = _first_derivative(ctx, labels[0], PHI, a(1))
        for k in range(2, n + 1):
            value *= _value(ctx, labels[k - 1], PHI, a(k))
        return value * f.scale
    if path.kind not in (PYRAMID, PYRAMID_THEN_FLAT):
        return Fraction(0)

    middle, length = path.middle, path.pyramid_length
    if not _pyramid_adapted(labels, length):
        return Fraction(0)
    return cfree_pyramid_term(ctx, f, middle) * f.scale


def cfree_pyramid_term(ctx: SpecContext, f: FactorTuple, middle: int) -> Fraction:
    """phi(a_1 a_L) prod psi(a_k a_{L+1-k}) psi'(a_m) prod_{k>L} phi(a_k), L = 2m-1."""
    labels = f.labels
    a = f.factor
    length = 2 * middle - 1
    value = _value(ctx, labels[0], PHI, a(1) * a(length))
    for k in range(2, middle):
        value *= _value(ctx, labels[k - 1], PSI, a(k) * a(length + 1 - k))
    value *= _first_derivative(ctx, labels[middle - 1], PSI, a(middle))
    for k in range(length + 1, len(f) + 1):
        value *= _value(ctx, labels[k - 1], PHI, a(k))
    return value

