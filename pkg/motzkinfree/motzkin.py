#
# This file is part of motzkinfree.
#
# SPDX-License-Identifier: LGPL-3.0-only
#

"""Reduced Motzkin words.

A reduced Motzkin word j_1...j_n is a sequence of positive integers with
j_1 = j_n = 1 and steps of size at most one. It encodes a Motzkin lattice
path whose heights are shifted by one. Positions are 1-based everywhere in
this module.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import pairwise
from math import comb
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from motzkinfree.globals import BadEndpoint, BadStep, EmptyWord, LengthMismatch, NonPositive, WordError
from motzkinfree.logger import logger

# Step letters used by the U/H/D notation
UP = 'U'
HORIZONTAL = 'H'
DOWN = 'D'

# Path classes
FLAT = 'flat'
PYRAMID = 'pyramid'
PYRAMID_THEN_FLAT = 'pyramid_then_flat'
OTHER = 'other'

# Adaptedness violation kinds
ADJACENCY = 'adjacency'
UNIFORMITY = 'uniformity'
ALTERNATION = 'alternation'


@dataclass(frozen=True)
class MotzkinWord:
    """A validated reduced Motzkin word (use validate_word to build one)."""

    letters: Tuple[int, ...]

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __str__(self):
        if all(j <= 9 for j in self.letters):
            return ''.join(str(j) for j in self.letters)
        return ','.join(str(j) for j in self.letters)

    def letter(self, position):
        """Return j_position (1-based)."""
        return self.letters[position - 1]

    @property
    def height(self):
        return max(self.letters)


@dataclass(frozen=True)
class Block:
    level: int
    positions: Tuple[int, ...]

    def __len__(self):
        return len(self.positions)

    def __contains__(self, position):
        return position in self.positions

    def __str__(self):
        return '{' + ','.join(str(p) for p in self.positions) + '}'

    @property
    def is_singleton(self):
        return len(self.positions) == 1

    @property
    def first(self):
        return self.positions[0]

    @property
    def last(self):
        return self.positions[-1]

    def gaps(self):
        """Consecutive position pairs (p, q) of the block."""
        return list(pairwise(self.positions))


@dataclass(frozen=True)
class LevelReturnPartition:
    blocks: Tuple[Block, ...]
    word_length: int
    _owner: Dict[int, Block] = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        owner = {p: block for block in self.blocks for p in block.positions}
        object.__setattr__(self, '_owner', owner)

    def __iter__(self):
        return iter(self.blocks)

    def __len__(self):
        return len(self.blocks)

    def __str__(self):
        return '{' + ','.join(str(block) for block in self.blocks) + '}'

    def block_of(self, position):
        """Return the block holding a position."""
        return self._owner[position]

    def singletons(self):
        """Return the singleton blocks, by increasing position."""
        return [block for block in self.blocks if block.is_singleton]

    def as_lists(self):
        return [list(block.positions) for block in self.blocks]


@dataclass(frozen=True)
class AdaptednessViolation:
    """What made a label tuple fail the adaptedness test.

    kind is one of 'adjacency', 'uniformity' or 'alternation'.
    """

    kind: str
    block: Optional[Block] = None
    nested: Optional[Block] = None
    positions: Tuple[int, ...] = ()

    def describe(self):
        if self.kind == ADJACENCY:
            return f'adjacent positions {self.positions[0]} and {self.positions[1]} carry the same label'
        if self.kind == UNIFORMITY:
            return f'labels are not constant on block {self.block}'
        return f'block {self.nested} nested in the excursion {self.positions} of block {self.block} repeats its label'

    def as_dict(self):
        ret = {'kind': self.kind, 'positions': list(self.positions)}
        if self.block is not None:
            ret['block'] = list(self.block.positions)
        if self.nested is not None:
            ret['nested'] = list(self.nested.positions)
        return ret


@dataclass(frozen=True)
class AdaptednessReport:
    adapted: bool
    violation: Optional[AdaptednessViolation] = None

    def __bool__(self):
        return self.adapted


@dataclass(frozen=True)
class PathClass:
    kind: str
    middle: Optional[int] = None
    split: Optional[int] = None
    pyramid_compatible: bool = False

    @property
    def pyramid_length(self):
        """Word length 2m-1 of the pyramid part (None without one)."""
        if self.middle is None:
            return None
        return 2 * self.middle - 1


def validate_word(seq: Iterable[int]) -> MotzkinWord:
    """Check the reduced Motzkin word constraints and return the word.

    The first violated constraint is reported: emptiness, then
    positivity, then the endpoints, then the step sizes.
    """
    letters = tuple(int(j) for j in seq)
    if not letters:
        raise EmptyWord('a Motzkin word has at least one letter')
    for position, j in enumerate(letters, start=1):
        if j < 1:
            raise NonPositive(f'letter {j} at position {position} is not positive', position)
    if letters[0] != 1:
        raise BadEndpoint(f'first letter is {letters[0]}, expected 1', 1)
    if letters[-1] != 1:
        raise BadEndpoint(f'last letter is {letters[-1]}, expected 1', len(letters))
    for position, (j, k) in enumerate(pairwise(letters), start=2):
        if abs(k - j) > 1:
            raise BadStep(f'step from {j} to {k} at position {position} is larger than 1', position)
    return MotzkinWord(letters)


def parse_word(text: str) -> MotzkinWord:
    """Parse a digit string ('12321') or comma separated integers ('1,2,1')."""
    text = text.strip()
    if not text:
        raise EmptyWord('a Motzkin word has at least one letter')
    try:
        if ',' in text:
            letters = [int(j) for j in text.split(',')]
        else:
            letters = [int(j) for j in text]
    except ValueError as err:
        raise WordError(f"can not read '{text}' as a word: {err}") from err
    return validate_word(letters)


def step_word(w: MotzkinWord) -> str:
    """Return the U/H/D step word of length n-1."""
    steps = {1: UP, 0: HORIZONTAL, -1: DOWN}
    return ''.join(steps[k - j] for j, k in pairwise(w.letters))


def from_step_word(steps: str) -> MotzkinWord:
    """Build a word from its U/H/D steps (the empty step word gives '1')."""
    moves = {UP: 1, HORIZONTAL: 0, DOWN: -1}
    letters = [1]
    for position, step in enumerate(steps.strip().upper(), start=2):
        if step not in moves:
            raise WordError(f"unknown step '{step}' at position {position}", position)
        letters.append(letters[-1] + moves[step])
    return validate_word(letters)


@lru_cache(maxsize=None)
def _enumerate(n: int) -> Tuple[MotzkinWord, ...]:
    words = []

    def extend(prefix):
        k = len(prefix)
        if k == n:
            if prefix[-1] == 1:
                words.append(MotzkinWord(tuple(prefix)))
            return
        last = prefix[-1]
        for j in (last - 1, last, last + 1):
            # the path must still be able to come back to 1 at position n
            if j >= 1 and j - 1 <= n - (k + 1):
                prefix.append(j)
                extend(prefix)
                prefix.pop()

    extend([1])
    logger.debug(f'Enumerated {len(words)} reduced Motzkin words of length {n}')
    return tuple(words)


def enumerate_words(n: int) -> List[MotzkinWord]:
    """All reduced Motzkin words of length n, in lexicographic order."""
    if n < 1:
        raise ValueError(f'word length must be positive, got {n}')
    return list(_enumerate(n))


@lru_cache(maxsize=None)
def motzkin_number(k: int) -> int:
    """Motzkin number M_k (number of Motzkin paths with k steps)."""
    if k < 0:
        raise ValueError(f'negative path length {k}')
    if k < 2:
        return 1
    return motzkin_number(k - 1) + sum(motzkin_number(i) * motzkin_number(k - 2 - i) for i in range(k - 1))


def height(w: MotzkinWord) -> int:
    return w.height


def local_maxima(w: MotzkinWord) -> List[int]:
    """Weak local maxima j_{k-1} <= j_k >= j_{k+1}, one-sided at the ends."""
    letters = w.letters
    n = len(letters)
    ret = []
    for k in range(n):
        left = k == 0 or letters[k - 1] <= letters[k]
        right = k == n - 1 or letters[k] >= letters[k + 1]
        if left and right:
            ret.append(k + 1)
    return ret


def excursions(w: MotzkinWord, level: int) -> List[Tuple[int, int]]:
    """Pairs (s, t) with j_s = j_t = level, t - s > 1 and j_k > level in between."""
    positions = [k for k, j in enumerate(w.letters, start=1) if j == level]
    ret = []
    for s, t in pairwise(positions):
        if t - s > 1 and min(w.letters[s : t - 1]) > level:
            ret.append((s, t))
    return ret


@lru_cache(maxsize=4096)
def level_return_partition(w: MotzkinWord) -> LevelReturnPartition:
    """Return the partition of [n] into maximal level return blocks."""
    blocks = []
    for level in range(1, w.height + 1):
        positions = [k for k, j in enumerate(w.letters, start=1) if j == level]
        if not positions:
            continue
        linked = set(excursions(w, level))
        run = [positions[0]]
        for s, t in pairwise(positions):
            if (s, t) in linked:
                run.append(t)
            else:
                blocks.append(Block(level, tuple(run)))
                run = [t]
        blocks.append(Block(level, tuple(run)))
    blocks.sort(key=lambda block: block.first)
    return LevelReturnPartition(tuple(blocks), len(w))


def is_adapted(w: MotzkinWord, labels: Sequence) -> AdaptednessReport:
    """Test whether the level return partition of w is adapted to labels."""
    labels = tuple(labels)
    if len(labels) != len(w):
        raise LengthMismatch(f'{len(labels)} labels for a word of length {len(w)}')

    for k, (a, b) in enumerate(pairwise(labels), start=1):
        if a == b:
            return AdaptednessReport(False, AdaptednessViolation(ADJACENCY, positions=(k, k + 1)))

    partition = level_return_partition(w)
    for block in partition:
        if len({labels[p - 1] for p in block.positions}) > 1:
            return AdaptednessReport(False, AdaptednessViolation(UNIFORMITY, block=block))

    for block in partition:
        label = labels[block.first - 1]
        for p, q in block.gaps():
            for nested in partition:
                if nested.level != block.level + 1 or not (p < nested.first and nested.last < q):
                    continue
                if labels[nested.first - 1] == label:
                    violation = AdaptednessViolation(ALTERNATION, block=block, nested=nested, positions=(p, q))
                    return AdaptednessReport(False, violation)

    return AdaptednessReport(True)


def adapted_words(n: int, labels: Sequence) -> List[MotzkinWord]:
    """Words of length n whose level return partition is adapted to labels."""
    return [w for w in enumerate_words(n) if is_adapted(w, labels).adapted]


def _pyramid_apex(letters: Sequence[int]) -> Optional[int]:
    """Return m if letters start with the pyramid 1,2,...,m,...,2,1 (m >= 2)."""
    m = 1
    while m < len(letters) and letters[m] == m + 1:
        m += 1
    if m < 2:
        return None
    length = 2 * m - 1
    if length > len(letters):
        return None
    for k in range(m, length):
        if letters[k] != length - k:
            return None
    return m


def classify_path(w: MotzkinWord) -> PathClass:
    """Classify w as flat, pyramid, pyramid followed by a flat tail, or other."""
    letters = w.letters
    n = len(letters)
    if all(j == 1 for j in letters):
        if n == 1:
            return PathClass(FLAT, middle=1, pyramid_compatible=True)
        return PathClass(FLAT)

    m = _pyramid_apex(letters)
    if m is None:
        return PathClass(OTHER)
    length = 2 * m - 1
    if length == n:
        return PathClass(PYRAMID, middle=m, pyramid_compatible=True)
    if all(j == 1 for j in letters[length:]):
        return PathClass(PYRAMID_THEN_FLAT, middle=m, split=length + 1)
    return PathClass(OTHER)


def count_by_local_maxima(n: int, k: int) -> int:
    """Number of words of length n having exactly k local maxima."""
    return sum(1 for w in enumerate_words(n) if len(local_maxima(w)) == k)


def two_maxima_closed_form(n: int) -> int:
    """Closed formula for count_by_local_maxima(n, 2)."""
    if n < 1:
        raise ValueError(f'word length must be positive, got {n}')
    m, odd = divmod(n, 2)
    if odd:
        return comb(m, 2)
    return comb(m + 1, 2)
