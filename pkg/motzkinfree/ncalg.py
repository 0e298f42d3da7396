#
# This file is part of motzkinfree.
#
# SPDX-License-Identifier: LGPL-3.0-only
#

"""Exact noncommutative algebra.

Jets (truncated Taylor series in the deformation parameter t), elements of
the free algebras generated by named generators, moment tables of the
deformed functionals and their Boolean and free cumulants.

A jet stores Taylor coefficients c_k = f^(k)(0) / k!, so the m-th
derivative at t = 0 is m! * c_m.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from motzkinfree.globals import (
    CFREE,
    FREE,
    PHI,
    PSI,
    LabelMismatch,
    MissingMoment,
    ModeError,
    OrderMismatch,
    UnknownLaw,
)
from motzkinfree.logger import logger

Word = Tuple[str, ...]
Scalar = Union[int, Fraction]


######
# JETS
######


@dataclass(frozen=True)
class Jet:
    """Truncated Taylor series c_0 + c_1 t + ... + c_M t^M."""

    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise OrderMismatch('a jet has at least the order-0 coefficient')
        object.__setattr__(self, 'coeffs', tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def zero(cls, order):
        return cls((Fraction(0),) * (order + 1))

    @classmethod
    def constant(cls, value, order):
        return cls((Fraction(value),) + (Fraction(0),) * order)

    @classmethod
    def unit(cls, order):
        return cls.constant(1, order)

    @classmethod
    def from_derivatives(cls, values: Sequence):
        """Build a jet from f(0), f'(0), f''(0), ..."""
        return cls(tuple(Fraction(v) / factorial(k) for k, v in enumerate(values)))

    @property
    def order(self):
        return len(self.coeffs) - 1

    @property
    def value(self):
        """Order-0 coefficient f(0)."""
        return self.coeffs[0]

    def _coerce(self, other):
        if isinstance(other, Jet):
            if other.order != self.order:
                raise OrderMismatch(f'jets of order {self.order} and {other.order}')
            return other
        if isinstance(other, (int, Fraction)):
            return Jet.constant(other, self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Jet(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Jet(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Jet(tuple(c * other for c in self.coeffs))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        return Jet(tuple(sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(self.order + 1)))

    __rmul__ = __mul__

    def __bool__(self):
        return any(self.coeffs)

    def __str__(self):
        return '(' + ', '.join(str(c) for c in self.coeffs) + ')'

    def derivative(self, m):
        """Return the m-th derivative at t = 0."""
        if m < 0 or m > self.order:
            raise OrderMismatch(f'derivative of order {m} requested from a jet of order {self.order}')
        return factorial(m) * self.coeffs[m]

    def truncate(self, order):
        if order > self.order:
            raise OrderMismatch(f'can not truncate a jet of order {self.order} to order {order}')
        return Jet(self.coeffs[: order + 1])


def jet_multiply(a: Jet, b: Jet) -> Jet:
    return a * b


def jet_add(a: Jet, b: Jet) -> Jet:
    return a + b


def jet_scale(a: Jet, c: Scalar) -> Jet:
    return a * Fraction(c)


def jet_truncate(a: Jet, order: int) -> Jet:
    return a.truncate(order)


def jet_derivative(a: Jet, m: int) -> Fraction:
    return a.derivative(m)


def jet_sum(jets: Iterable[Jet], order: int) -> Jet:
    total = Jet.zero(order)
    for j in jets:
        total = total + j
    return total


##########
# ELEMENTS
##########


def _is_zero(coeff):
    return not coeff


@dataclass(frozen=True)
class Element:
    """A noncommutative polynomial of one algebra.

    terms is a tuple of (word, coefficient) pairs sorted by word, without
    zero coefficients. Coefficients are rationals, or jets once an element
    has been centered against a deformed functional.
    """

    label: str
    terms: Tuple[Tuple[Word, object], ...] = ()

    @classmethod
    def from_terms(cls, label, terms: Union[Mapping, Iterable]):
        items = terms.items() if isinstance(terms, Mapping) else terms
        collected: Dict[Word, object] = {}
        for word, coeff in items:
            word = tuple(word)
            coeff = Fraction(coeff) if isinstance(coeff, int) else coeff
            collected[word] = collected[word] + coeff if word in collected else coeff
        return cls(label, tuple(sorted((w, c) for w, c in collected.items() if not _is_zero(c))))

    @classmethod
    def unit(cls, label, coeff=1):
        return cls.from_terms(label, {(): coeff})

    @classmethod
    def generator(cls, label, name, coeff=1):
        return cls.from_terms(label, {(name,): coeff})

    @classmethod
    def monomial(cls, label, word, coeff=1):
        return cls.from_terms(label, {tuple(word): coeff})

    def __str__(self):
        if not self.terms:
            return f'0[{self.label}]'
        return ' + '.join(f'{c}*{".".join(w) or "1"}' for w, c in self.terms) + f' [{self.label}]'

    def _check(self, other):
        if other.label != self.label:
            raise LabelMismatch(f"elements of algebras '{self.label}' and '{other.label}' do not combine")

    def __add__(self, other):
        if isinstance(other, Element):
            self._check(other)
            return Element.from_terms(self.label, self.terms + other.terms)
        return self + Element.unit(self.label, other)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.label, tuple((w, -c) for w, c in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Element):
            self._check(other)
            return Element.from_terms(
                self.label, [(u + v, a * b) for u, a in self.terms for v, b in other.terms]
            )
        return Element.from_terms(self.label, [(w, c * other) for w, c in self.terms])

    def __rmul__(self, other):
        return Element.from_terms(self.label, [(w, other * c) for w, c in self.terms])

    def __bool__(self):
        return bool(self.terms)

    @property
    def is_zero(self):
        return not self.terms

    @property
    def is_scalar(self):
        """True for c * 1 (including the zero element)."""
        return all(not w for w, _ in self.terms)

    @property
    def scalar_part(self):
        for w, c in self.terms:
            if not w:
                return c
        return Fraction(0)

    @property
    def degree(self):
        return max((len(w) for w, _ in self.terms), default=0)

    def lift(self, order):
        """Return the same element with every rational coefficient made a constant jet."""
        return Element(
            self.label, tuple((w, c if isinstance(c, Jet) else Jet.constant(c, order)) for w, c in self.terms)
        )


def element_multiply(e1: Element, e2: Element) -> Element:
    return e1 * e2


def element_product(elements: Sequence[Element]) -> Element:
    ret = elements[0]
    for e in elements[1:]:
        ret = ret * e
    return ret


######
# LAWS
######


def catalan(k):
    return comb(2 * k, k) // (k + 1)


class Law:
    """Moment sequence of a single generator under the undeformed functional."""

    name = None

    def __init__(self, **params):
        self.params = params

    def moment(self, k: int) -> Optional[Fraction]:
        raise NotImplementedError

    def __repr__(self):
        return f'{self.__class__.__name__}({self.params})'


class SemicircleLaw(Law):
    name = 'semicircle'

    def __init__(self, variance=1, **params):
        super().__init__(variance=variance, **params)
        self.variance = Fraction(variance)

    def moment(self, k):
        if k % 2:
            return Fraction(0)
        return catalan(k // 2) * self.variance ** (k // 2)


class BernoulliSymmetricLaw(Law):
    name = 'bernoulli_symmetric'

    def moment(self, k):
        return Fraction(0) if k % 2 else Fraction(1)


class PointMassLaw(Law):
    name = 'point_mass'

    def __init__(self, c=0, **params):
        super().__init__(c=c, **params)
        self.c = Fraction(c)

    def moment(self, k):
        return self.c**k


class CustomLaw(Law):
    """Finite moment list m_1, m_2, ... (m_0 = 1 implied)."""

    name = 'custom'

    def __init__(self, moments=(), **params):
        super().__init__(moments=list(moments), **params)
        self.moments = [Fraction(m) for m in moments]

    def moment(self, k):
        if k == 0:
            return Fraction(1)
        if k <= len(self.moments):
            return self.moments[k - 1]
        return None


class ZeroDerivativesLaw(Law):
    """A base law whose deformation streams are all forced to zero."""

    name = 'zero_derivatives'

    def __init__(self, base='semicircle', **params):
        super().__init__(base=base, **params)
        if base == self.name or base not in LAWS:
            raise UnknownLaw(f"unknown base law '{base}'")
        self.base = LAWS[base](**params)

    def moment(self, k):
        return self.base.moment(k)


LAWS = {
    law.name: law for law in (SemicircleLaw, BernoulliSymmetricLaw, PointMassLaw, CustomLaw, ZeroDerivativesLaw)
}


def make_law(name, params=None) -> Law:
    if name not in LAWS:
        raise UnknownLaw(f"unknown law '{name}' (available: {', '.join(sorted(LAWS))})")
    try:
        return LAWS[name](**(params or {}))
    except (TypeError, ValueError, ZeroDivisionError) as err:
        raise UnknownLaw(f"bad parameters for law '{name}': {err}") from err


################
# MOMENT TABLES
################


@dataclass
class FunctionalTable:
    """Deformed functional of one algebra, as a table of moment jets.

    Entries of `moments` win over the law; the law only gives order-0
    values for words in its single generator, with zero higher terms.
    The unit always evaluates to the unit jet.
    """

    label: str
    kind: str
    order: int
    moments: Dict[Word, Jet] = field(default_factory=dict)
    law: Optional[Law] = None
    generator: Optional[str] = None

    def __post_init__(self):
        for word, jet in self.moments.items():
            if jet.order != self.order:
                raise OrderMismatch(f"moment '{'.'.join(word)}' of '{self.label}' has order {jet.order}")

    def moment(self, word: Sequence[str]) -> Jet:
        word = tuple(word)
        if not word:
            return Jet.unit(self.order)
        if word in self.moments:
            return self.moments[word]
        if self.law is not None and all(g == self.generator for g in word):
            value = self.law.moment(len(word))
            if value is not None:
                return Jet.constant(value, self.order)
        raise MissingMoment(self.label, word, self.kind)

    def with_derivatives(self, derivatives: Mapping[Word, Mapping[int, Scalar]]):
        """Return a copy where given words carry the supplied derivative values.

        derivatives maps a word to {k: phi^(k)(word)}; the order-0 value is
        kept from the table unless k = 0 is given.
        """
        if isinstance(self.law, ZeroDerivativesLaw) and derivatives:
            logger.debug(f"Ignoring derivative entries of '{self.label}' ({self.law.name} law)")
            return self
        moments = dict(self.moments)
        for word, values in derivatives.items():
            word = tuple(word)
            coeffs = list(self.moment(word).coeffs) if 0 not in values else [Fraction(0)] * (self.order + 1)
            for k, value in values.items():
                if k > self.order:
                    raise OrderMismatch(f"derivative of order {k} for '{'.'.join(word)}' exceeds jet order {self.order}")
                coeffs[k] = Fraction(value) / factorial(k)
            moments[word] = Jet(tuple(coeffs))
        return FunctionalTable(self.label, self.kind, self.order, moments, self.law, self.generator)


def builtin_law(name, params=None, label='a', generator='x', order=0, kind=PHI) -> FunctionalTable:
    """Return a table of a built-in single generator law."""
    return FunctionalTable(label, kind, order, law=make_law(name, params), generator=generator)


def evaluate(table: FunctionalTable, e: Element) -> Jet:
    """Apply a deformed functional to an element (linear extension)."""
    if e.label != table.label:
        raise LabelMismatch(f"element of '{e.label}' evaluated by the table of '{table.label}'")
    total = Jet.zero(table.order)
    for word, coeff in e.terms:
        total = total + table.moment(word) * coeff
    return total


def center(e: Element, table: FunctionalTable, deformed=False) -> Element:
    """Subtract the scalar part seen by the functional.

    By default only the order-0 value is removed. With deformed=True the
    whole moment jet is removed, giving jet coefficients.
    """
    value = evaluate(table, e)
    if deformed:
        return e - Element.unit(e.label, value)
    return e - Element.unit(e.label, value.value)


#####################
# PROBLEM CONTEXT
#####################


@dataclass
class AlgebraSpec:
    label: str
    generators: Tuple[str, ...]
    phi: FunctionalTable
    psi: Optional[FunctionalTable] = None


@dataclass
class SpecContext:
    """A problem instance: product mode, jet order and the marginal algebras."""

    mode: str
    order: int
    algebras: Dict[str, AlgebraSpec]

    def __post_init__(self):
        if self.mode not in (FREE, CFREE):
            raise ModeError(f"unknown mode '{self.mode}'")
        for spec in self.algebras.values():
            for table in (spec.phi, spec.psi):
                if table is not None and table.order != self.order:
                    raise OrderMismatch(f"table of '{spec.label}' has order {table.order}, expected {self.order}")
            if self.mode == CFREE and spec.psi is None:
                raise ModeError(f"algebra '{spec.label}' has no psi table in cfree mode")

    def table(self, label, kind=PHI) -> FunctionalTable:
        if label not in self.algebras:
            raise LabelMismatch(f"unknown algebra '{label}'")
        if kind == PSI:
            if self.mode != CFREE:
                raise ModeError('psi tables are only available in cfree mode')
            return self.algebras[label].psi
        return self.algebras[label].phi

    def psi_context(self) -> 'SpecContext':
        """Free-mode context whose phi tables are the psi tables."""
        algebras = {
            label: AlgebraSpec(label, spec.generators, self.table(label, PSI)) for label, spec in self.algebras.items()
        }
        return SpecContext(FREE, self.order, algebras)


###########
# CUMULANTS
###########


def interval_partitions(n: int) -> List[Tuple[Tuple[int, ...], ...]]:
    """All partitions of range(n) into intervals (compositions of n)."""
    ret = []
    for mask in range(2 ** max(n - 1, 0)):
        blocks, start = [], 0
        for cut in range(1, n):
            if mask >> (cut - 1) & 1:
                blocks.append(tuple(range(start, cut)))
                start = cut
        blocks.append(tuple(range(start, n)))
        ret.append(tuple(blocks))
    return ret


def _set_partitions(n):
    """Restricted growth strings of length n, as block tuples."""
    if n == 0:
        yield ()
        return

    def grow(prefix, top):
        if len(prefix) == n:
            blocks = [[] for _ in range(top + 1)]
            for i, b in enumerate(prefix):
                blocks[b].append(i)
            yield tuple(tuple(block) for block in blocks)
            return
        for b in range(top + 2):
            yield from grow(prefix + [b], max(top, b))

    yield from grow([0], 0)


def is_noncrossing(partition) -> bool:
    """No a < b < c < d with a, c in one block and b, d in another."""
    owner = {i: k for k, block in enumerate(partition) for i in block}
    n = len(owner)
    for a in range(n):
        for b in range(a + 1, n):
            if owner[b] == owner[a]:
                continue
            for c in range(b + 1, n):
                if owner[c] != owner[a]:
                    continue
                for d in range(c + 1, n):
                    if owner[d] == owner[b]:
                        return False
    return True


@lru_cache(maxsize=None)
def noncrossing_partitions(n: int) -> Tuple[Tuple[Tuple[int, ...], ...], ...]:
    """All noncrossing partitions of range(n)."""
    return tuple(p for p in _set_partitions(n) if is_noncrossing(p))


def _segment_moments(table, args):
    """Moments of every contiguous product args[i:j], i < j."""
    ret = {}
    for i in range(len(args)):
        e = args[i]
        ret[(i, i + 1)] = evaluate(table, e)
        for j in range(i + 1, len(args)):
            e = e * args[j]
            ret[(i, j + 1)] = evaluate(table, e)
    return ret


def boolean_cumulant(table: FunctionalTable, args: Sequence[Element]) -> Jet:
    """beta_n(a_1, ..., a_n) by the prefix recursion."""
    n = len(args)
    if n == 0:
        raise ValueError('Boolean cumulants need at least one argument')
    moments = _segment_moments(table, args)
    betas = {}
    for k in range(1, n + 1):
        beta = moments[(0, k)]
        for j in range(1, k):
            beta = beta - betas[j] * moments[(j, k)]
        betas[k] = beta
    return betas[n]


def boolean_cumulant_mobius(table: FunctionalTable, args: Sequence[Element]) -> Jet:
    """beta_n as the signed sum over interval partitions."""
    n = len(args)
    if n == 0:
        raise ValueError('Boolean cumulants need at least one argument')
    moments = _segment_moments(table, args)
    total = Jet.zero(table.order)
    for sigma in interval_partitions(n):
        term = prod((moments[(block[0], block[-1] + 1)] for block in sigma), start=Jet.unit(table.order))
        total = total + term * (-1) ** (len(sigma) - 1)
    return total


def free_cumulant(table: FunctionalTable, args: Sequence[Element]) -> Jet:
    """kappa_n by Moebius inversion over noncrossing partitions."""
    n = len(args)
    if n == 0:
        raise ValueError('free cumulants need at least one argument')
    cache: Dict[Tuple[int, ...], Jet] = {}

    def kappa(indices):
        if indices in cache:
            return cache[indices]
        value = evaluate(table, element_product([args[i] for i in indices]))
        for partition in noncrossing_partitions(len(indices)):
            if len(partition) == 1:
                continue
            term = Jet.unit(table.order)
            for block in partition:
                term = term * kappa(tuple(indices[i] for i in block))
            value = value - term
        cache[indices] = value
        return value

    return kappa(tuple(range(n)))


def moment_from_cumulants(kind: str, table: FunctionalTable, args: Sequence[Element]) -> Jet:
    """Rebuild phi_t(a_1...a_n) from 'boolean' (interval) or 'free' (noncrossing) cumulants."""
    n = len(args)
    if kind == 'boolean':
        partitions, cumulant = interval_partitions(n), boolean_cumulant
    elif kind == 'free':
        partitions, cumulant = noncrossing_partitions(n), free_cumulant
    else:
        raise ValueError(f"unknown cumulant kind '{kind}'")
    total = Jet.zero(table.order)
    for partition in partitions:
        term = Jet.unit(table.order)
        for block in partition:
            term = term * cumulant(table, [args[i] for i in block])
        total = total + term
    return total
