"""Finite sets of non-negative integers stored as bitmasks.

A :class:`LabelSet` is an immutable, non-empty set backed by a Python ``int``
whose bit ``i`` is set when ``i`` is a member. Sumsets are computed by
OR-ing shifted copies of one mask, so the cost is linear in the size of the
smaller operand.
"""

from __future__ import annotations

from functools import total_ordering
from typing import Iterable, Iterator

MAX_ELEM = 63

# Returned by arithmetic_progression_difference for sets with fewer than two
# elements; such a set is a progression of every common difference.
WILDCARD = 0


def _bits(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


@total_ordering
class LabelSet:
    """Immutable non-empty set of non-negative integers.

    Elements may go up to ``2 * MAX_ELEM`` so that sumsets of two vertex
    labels are representable. Whether a label fits a ground set is checked
    by the labeling layer, not here.

    Ordering compares the ascending element tuples, so ``{0,1} < {0,2} < {1}``.
    """

    __slots__ = ("mask", "_elements")

    def __init__(self, elements: Iterable[int]):
        mask = 0
        for x in elements:
            x = int(x)
            if x < 0:
                raise ValueError(f"negative element {x}")
            if x > 2 * MAX_ELEM:
                raise ValueError(f"element {x} exceeds 2*MAX_ELEM={2 * MAX_ELEM}")
            mask |= 1 << x
        if not mask:
            raise ValueError("a LabelSet must be non-empty")
        self.mask = mask
        self._elements = tuple(_bits(mask))

    @classmethod
    def from_mask(cls, mask: int) -> LabelSet:
        if mask <= 0:
            raise ValueError("a LabelSet must be non-empty")
        obj = cls.__new__(cls)
        obj.mask = mask
        obj._elements = tuple(_bits(mask))
        return obj

    @property
    def elements(self) -> tuple[int, ...]:
        return self._elements

    def __len__(self) -> int:
        return len(self._elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self._elements)

    def __contains__(self, x) -> bool:
        return isinstance(x, int) and x >= 0 and bool(self.mask >> x & 1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LabelSet):
            return NotImplemented
        return self.mask == other.mask

    def __lt__(self, other: LabelSet) -> bool:
        if not isinstance(other, LabelSet):
            return NotImplemented
        return self._elements < other._elements

    def __hash__(self) -> int:
        return hash(self.mask)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self._elements)) + "}"

    def __repr__(self) -> str:
        return f"LabelSet({str(self)})"

    def issubset(self, other: LabelSet) -> bool:
        return self.mask & ~other.mask == 0


def label_set(*elements: int) -> LabelSet:
    """Shorthand: ``label_set(0, 2, 4)`` is ``{0,2,4}``."""
    return LabelSet(elements)


def ground_range(lo: int, hi: int) -> LabelSet:
    """The ground set ``{lo, ..., hi}`` (inclusive), bounded by MAX_ELEM."""
    if not 0 <= lo <= hi <= MAX_ELEM:
        raise ValueError(f"ground range {lo}..{hi} must satisfy 0 <= lo <= hi <= {MAX_ELEM}")
    return LabelSet.from_mask(((1 << (hi - lo + 1)) - 1) << lo)


def sumset_mask(a: int, b: int) -> int:
    if a.bit_count() > b.bit_count():
        a, b = b, a
    out = 0
    shift = 0
    while a:
        if a & 1:
            out |= b << shift
        a >>= 1
        shift += 1
    return out


def sumset(a: LabelSet, b: LabelSet) -> LabelSet:
    """Return ``{x + y : x in a, y in b}``."""
    return LabelSet.from_mask(sumset_mask(a.mask, b.mask))


def difference_mask(a: int) -> int:
    """Bitmask of positive differences between distinct members of mask ``a``."""
    out = 0
    rest = a
    while rest:
        low = rest & -rest
        shift = low.bit_length() - 1
        out |= a >> shift
        rest ^= low
    return out & ~1


def difference_set(a: LabelSet) -> frozenset[int]:
    """Return ``{|x - y| : x, y in a, x != y}``; empty for a singleton."""
    return frozenset(_bits(difference_mask(a.mask)))


def is_strong_pair(a: LabelSet, b: LabelSet) -> bool:
    """True iff ``|a + b| == |a| * |b|``.

    Equivalent to the difference sets of ``a`` and ``b`` being disjoint; the
    equivalence is asserted (disabled under ``python -O``).
    """
    strong = sumset_mask(a.mask, b.mask).bit_count() == len(a) * len(b)
    assert strong == (difference_mask(a.mask) & difference_mask(b.mask) == 0), (a, b)
    return strong


def arithmetic_progression_difference(a: LabelSet) -> int | None:
    """Common difference of ``a`` if it is an arithmetic progression.

    Returns WILDCARD for singletons and None when the gaps are unequal.
    """
    xs = a.elements
    if len(xs) < 2:
        return WILDCARD
    d = xs[1] - xs[0]
    for p, q in zip(xs[1:], xs[2:]):
        if q - p != d:
            return None
    return d


def compatible_differences(d1: int | None, d2: int | None) -> int | None:
    """Merge two progression differences, honouring WILDCARD.

    Returns the merged difference (possibly WILDCARD) or None on conflict.
    """
    if d1 is None or d2 is None:
        return None
    if d1 == WILDCARD:
        return d2
    if d2 == WILDCARD or d1 == d2:
        return d1
    return None


def parity(a: LabelSet) -> str:
    """``"odd"`` or ``"even"`` according to the cardinality of ``a``."""
    return "odd" if len(a) % 2 else "even"
