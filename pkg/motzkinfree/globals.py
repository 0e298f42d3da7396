# ruff: noqa: F401
#
# This file is part of motzkinfree.
#
# SPDX-License-Identifier: LGPL-3.0-only
#

"""Common objects shared by all motzkinfree modules."""

################
# GLOBAL IMPORTS
################

import errno
import functools
import os
from fractions import Fraction
from typing import Any, Dict, List, Union

# Prefer faster libs for JSON (de)serialization
# Preference Order: orjson > json (builtin)
try:
    import orjson as json

    json.dumps = functools.partial(json.dumps, option=json.OPT_NON_STR_KEYS)
except ImportError:
    # Need to log info but importing logger will cause cyclic imports
    pass

if 'json' not in globals():
    import json

##############
# GLOBALS VARS
##############

# Set the package and default configuration path
work_path = os.path.realpath(os.path.dirname(__file__))
conf_path = os.path.realpath(os.path.join(work_path, '..', 'conf'))

# Types
text_type = str
binary_type = bytes

# Functional kinds: the state functional phi and the companion psi (c-free)
PHI = 'phi'
PSI = 'psi'

# Product modes
FREE = 'free'
CFREE = 'cfree'


############
# EXCEPTIONS
############


class MotzkinError(Exception):
    """Base class for every error raised by motzkinfree."""


class WordError(MotzkinError):
    """A sequence of integers is not a reduced Motzkin word."""

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class EmptyWord(WordError):
    pass


class BadEndpoint(WordError):
    pass


class BadStep(WordError):
    pass


class NonPositive(WordError):
    pass


class LengthMismatch(MotzkinError):
    pass


class LabelMismatch(MotzkinError):
    pass


class OrderMismatch(MotzkinError):
    pass


class ModeError(MotzkinError):
    pass


class UnknownLaw(MotzkinError):
    pass


class DuplicateLabel(MotzkinError):
    pass


class MissingMoment(MotzkinError):
    """A moment table has no entry for a monomial."""

    def __init__(self, label, word, kind=PHI):
        self.label = label
        self.word = tuple(word)
        self.kind = kind
        super().__init__(f"{kind} table of algebra '{label}' has no moment for '{'.'.join(self.word) or '1'}'")


class CenteringViolation(MotzkinError):
    """A closed formula was called outside its centering hypotheses."""

    def __init__(self, slot, kind, value):
        self.slot = slot
        self.kind = kind
        self.value = value
        super().__init__(f"factor {slot} is not {kind}-centered ({kind}(a_{slot}) = {value})")


class SchemaError(MotzkinError):
    """The problem document does not match the schema."""

    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}")


class DocumentSyntaxError(MotzkinError):
    pass


###################
# GLOBALS FUNCTIONS
###################


def printandflush(string):
    """Print and flush (used by the report outputs modules)"""
    print(string, flush=True)


def b(s, errors='replace'):
    if isinstance(s, binary_type):
        return s
    return s.encode('utf-8', errors=errors)


def nativestr(s, errors='replace'):
    if isinstance(s, text_type):
        return s
    return s.decode('utf-8', errors=errors)


def safe_makedirs(path):
    """A safe function for creating a directory tree."""
    try:
        os.makedirs(path)
    except OSError as err:
        if err.errno == errno.EEXIST:
            if not os.path.isdir(path):
                raise
        else:
            raise


def json_dumps(data) -> bytes:
    """Return the object data in a JSON format (always bytes)."""
    return b(json.dumps(data))


def json_loads(data: Union[str, bytes, bytearray]) -> Union[Dict, List]:
    """Load a JSON buffer into memory as a Python object"""
    return json.loads(data)


def to_fraction(value: Any) -> Fraction:
    """Parse an integer or a 'p/q' string into a reduced Fraction.

    Floats are refused: every value entering the engine must be exact.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise ValueError(f"not an exact rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if '.' in text or 'e' in text.lower():
            raise ValueError(f"not an exact rational: {value!r}")
        try:
            return Fraction(text)
        except ZeroDivisionError as err:
            raise ValueError(f"zero denominator in {value!r}") from err
    raise ValueError(f"not an exact rational: {value!r}")


def fraction_str(value: Fraction) -> str:
    """Render a rational in canonical 'p/q' (or 'p') form."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f'{value.numerator}/{value.denominator}'
