#
# This file is part of motzkinfree.
#
# SPDX-License-Identifier: LGPL-3.0-only
#

"""Problem documents.

A problem document is a JSON object:

    {
        "mode": "free" | "cfree",
        "jet_order": 2,
        "algebras": [
            {
                "label": "A",
                "generators": ["x"],
                "phi": {"law": "semicircle", "params": {"variance": "1"},
                        "moments": {"x.x": "1"}, "derivatives": {"1": {"x": "1/2"}}},
                "psi": {...}
            }
        ],
        "queries": [
            {"factors": [{"label": "A", "poly": [{"coeff": "1", "word": "x"}]}],
             "compute": ["moment", "derivative:1"]}
        ]
    }

Words are generator names joined with '.', the empty word is the unit.
Rationals are integers or 'p/q' strings, never floats. The derivatives
table maps k to the values of the k-th derivative phi^(k).
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Annotated, Any, Dict, List, Literal, Optional

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, ValidationError, field_validator

from motzkinfree.globals import (
    CFREE,
    PHI,
    PSI,
    DocumentSyntaxError,
    DuplicateLabel,
    SchemaError,
    fraction_str,
    json_loads,
    to_fraction,
)
from motzkinfree.logger import logger
from motzkinfree.ncalg import AlgebraSpec, Element, FunctionalTable, Jet, SpecContext, make_law
from motzkinfree.products import ProductQuery

COMPUTE_RE = re.compile(r'^(moment|derivative:[0-9]+)$')
NUMERIC_RE = re.compile(r'^\s*[+-]?[0-9.]')

Rational = Annotated[Fraction, BeforeValidator(to_fraction)]


def _exact_param(value):
    """Law parameters that are numbers, or strings starting like one, go through to_fraction.

    Other strings (a base law name) are kept as they are.
    """
    if isinstance(value, list):
        return [_exact_param(v) for v in value]
    if isinstance(value, bool):
        return value
    if isinstance(value, (int, float, Fraction)) or (isinstance(value, str) and NUMERIC_RE.match(value)):
        return to_fraction(value)
    return value


class _Model(BaseModel):
    model_config = ConfigDict(extra='forbid', arbitrary_types_allowed=True)


class TermModel(_Model):
    coeff: Rational = Fraction(1)
    word: str = ''


class FactorModel(_Model):
    label: str
    poly: List[TermModel] = Field(min_length=1)


class QueryModel(_Model):
    factors: List[FactorModel] = Field(min_length=1)
    compute: List[str] = ['moment']

    @field_validator('compute')
    @classmethod
    def check_compute(cls, value):
        for item in value:
            if not COMPUTE_RE.match(item):
                raise ValueError(f"unknown output '{item}' (expected 'moment' or 'derivative:k')")
        return value


class FunctionalModel(_Model):
    law: Optional[str] = None
    params: Dict[str, Any] = {}
    moments: Dict[str, Rational] = {}
    derivatives: Dict[int, Dict[str, Rational]] = {}

    @field_validator('params')
    @classmethod
    def check_params(cls, value):
        return {k: _exact_param(v) for k, v in value.items()}


class AlgebraModel(_Model):
    label: str
    generators: List[str] = Field(min_length=1)
    phi: FunctionalModel
    psi: Optional[FunctionalModel] = None


class ProblemModel(_Model):
    mode: Literal['free', 'cfree']
    jet_order: Optional[int] = Field(default=None, ge=0)
    algebras: List[AlgebraModel] = Field(min_length=1)
    queries: List[QueryModel] = []


@dataclass
class ProblemDocument:
    """A validated problem: the context and the product queries."""

    model: ProblemModel
    ctx: SpecContext
    queries: List[ProductQuery]

    @property
    def mode(self):
        return self.ctx.mode

    @property
    def jet_order(self):
        return self.ctx.order


def _path(loc) -> str:
    """Render a pydantic location ('algebras', 0, 'psi') as algebras[0].psi."""
    ret = ''
    for item in loc:
        if isinstance(item, int):
            ret += f'[{item}]'
        else:
            ret += f'.{item}' if ret else str(item)
    return ret or '$'


def _word(text: str):
    return tuple(text.split('.')) if text else ()


def _check_word(word, generators, path):
    for g in word:
        if g not in generators:
            raise SchemaError(path, f"generator '{g}' is not declared")


def _build_table(label, generators, model: FunctionalModel, kind, order, path) -> FunctionalTable:
    law = None
    if model.law is not None:
        if len(generators) != 1:
            raise SchemaError(f'{path}.law', 'built-in laws need an algebra with exactly one generator')
        law = make_law(model.law, model.params)

    moments = {}
    for text, value in model.moments.items():
        word = _word(text)
        _check_word(word, generators, f'{path}.moments')
        if not word:
            if value != 1:
                raise SchemaError(f'{path}.moments', f'the unit must have moment 1, got {fraction_str(value)}')
            continue
        moments[word] = Jet.constant(value, order)
    if law is None and not moments:
        logger.warning(f"Algebra '{label}' declares neither a law nor moments for {kind}")

    table = FunctionalTable(label, kind, order, moments, law, generators[0])

    derivatives: Dict[tuple, Dict[int, Fraction]] = {}
    for k, values in model.derivatives.items():
        if k < 1 or k > order:
            raise SchemaError(f'{path}.derivatives', f'derivative order {k} outside 1..{order}')
        for text, value in values.items():
            word = _word(text)
            _check_word(word, generators, f'{path}.derivatives')
            if not word:
                if value != 0:
                    raise SchemaError(f'{path}.derivatives', 'derivatives of the unit must vanish')
                continue
            derivatives.setdefault(word, {})[k] = value
    return table.with_derivatives(derivatives)


def build_problem(model: ProblemModel, default_order=2) -> ProblemDocument:
    """Turn a validated model into the engine context and queries."""
    order = model.jet_order if model.jet_order is not None else default_order

    algebras = {}
    for i, algebra in enumerate(model.algebras):
        if algebra.label in algebras:
            raise DuplicateLabel(f"algebra label '{algebra.label}' is declared twice (algebras[{i}])")
        generators = tuple(algebra.generators)
        if len(set(generators)) != len(generators):
            raise SchemaError(f'algebras[{i}].generators', 'generators must be distinct')
        if model.mode == CFREE and algebra.psi is None:
            raise SchemaError(f'algebras[{i}].psi', 'a psi functional is required in cfree mode')
        phi = _build_table(algebra.label, generators, algebra.phi, PHI, order, f'algebras[{i}].phi')
        psi = None
        if algebra.psi is not None:
            if model.mode == CFREE:
                psi = _build_table(algebra.label, generators, algebra.psi, PSI, order, f'algebras[{i}].psi')
            else:
                logger.info(f"Ignoring the psi functional of '{algebra.label}' in free mode")
        algebras[algebra.label] = AlgebraSpec(algebra.label, generators, phi, psi)

    ctx = SpecContext(model.mode, order, algebras)

    queries = []
    for q, query in enumerate(model.queries):
        for j, output in enumerate(query.compute):
            if output.startswith('derivative:') and int(output.split(':')[1]) > order:
                raise SchemaError(f'queries[{q}].compute[{j}]', f"'{output}' exceeds the jet order {order}")
        factors = []
        for k, factor in enumerate(query.factors):
            path = f'queries[{q}].factors[{k}]'
            if factor.label not in algebras:
                raise SchemaError(f'{path}.label', f"unknown algebra '{factor.label}'")
            terms = []
            for t, term in enumerate(factor.poly):
                word = _word(term.word)
                _check_word(word, algebras[factor.label].generators, f'{path}.poly[{t}].word')
                terms.append((word, term.coeff))
            factors.append(Element.from_terms(factor.label, terms))
        queries.append(ProductQuery(tuple(factors), tuple(query.compute)))

    return ProblemDocument(model, ctx, queries)


def parse_problem(document, default_order=2) -> ProblemDocument:
    """Parse and validate a JSON problem document (text, bytes or dict)."""
    if isinstance(document, (str, bytes, bytearray)):
        try:
            data = json_loads(document)
        except ValueError as err:
            raise DocumentSyntaxError(f'problem document is not valid JSON: {err}') from err
    else:
        data = document
    try:
        model = ProblemModel.model_validate(data)
    except ValidationError as err:
        first = err.errors()[0]
        raise SchemaError(_path(first['loc']), first['msg']) from err
    logger.debug(f'Problem document with {len(model.algebras)} algebras and {len(model.queries)} queries')
    return build_problem(model, default_order)


def _canonical(value):
    if isinstance(value, Fraction):
        return fraction_str(value)
    if isinstance(value, dict):
        return {str(k): _canonical(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_canonical(v) for v in value]
    return value


def echo(problem: ProblemDocument) -> Dict[str, Any]:
    """The document with every rational in canonical form."""
    data = problem.model.model_dump(exclude_none=True)
    data['jet_order'] = problem.jet_order
    return _canonical(data)
