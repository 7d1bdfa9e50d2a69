"""Class-count vectors and the total order used to rank paths.

A path is summarized by a length-K tuple counting how many of its edges
fall in each semantic class (class 1 is the most favorable, class K the
least). Two orderings over these vectors are supported:

* TOP_CLASS ranks a vector by its least favorable class and the number of
  edges of that class only; anything below the top class is ignored.
* FULL_LEX compares counts lexicographically from class K down to class 1.

The sentinel UNREACHED stands in for "no path known yet" and compares
greater than every finite vector.
"""

from __future__ import annotations

from enum import Enum
from typing import Tuple, Union


class _Unreached:
    """Singleton sentinel for an unreached node (compares worst)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNREACHED"


UNREACHED = _Unreached()

ClassVector = Union[Tuple[int, ...], _Unreached]

LESS = -1
EQUAL = 0
GREATER = 1


class OrderMode(Enum):
    TOP_CLASS = "top"
    FULL_LEX = "lex"


def zero(num_classes: int) -> Tuple[int, ...]:
    return (0,) * num_classes


def one_hot(k: int, num_classes: int) -> Tuple[int, ...]:
    """Vector with a single edge of class k."""
    if not 1 <= k <= num_classes:
        raise ValueError(f"class {k} out of range 1..{num_classes}")
    return tuple(1 if i == k else 0 for i in range(1, num_classes + 1))


def add(a: ClassVector, b: ClassVector) -> ClassVector:
    """Elementwise sum; UNREACHED absorbs."""
    if a is UNREACHED or b is UNREACHED:
        return UNREACHED
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    return tuple(x + y for x, y in zip(a, b))


def top_key(counts: Tuple[int, ...]) -> Tuple[int, int]:
    """(least favorable class present, count at that class); (0, 0) if empty."""
    for idx in range(len(counts) - 1, -1, -1):
        if counts[idx] > 0:
            return (idx + 1, counts[idx])
    return (0, 0)


def sort_key(theta: Tuple[int, ...], mode: OrderMode) -> Tuple[int, ...]:
    """A tuple whose lexicographic order realizes the chosen path order."""
    if mode is OrderMode.TOP_CLASS:
        return top_key(theta)
    return tuple(reversed(theta))


def compare(a: ClassVector, b: ClassVector, mode: OrderMode = OrderMode.TOP_CLASS) -> int:
    """Return LESS, EQUAL or GREATER for a versus b under the given mode."""
    if a is UNREACHED and b is UNREACHED:
        return EQUAL
    if a is UNREACHED:
        return GREATER
    if b is UNREACHED:
        return LESS
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    ka, kb = sort_key(a, mode), sort_key(b, mode)
    if ka < kb:
        return LESS
    if ka > kb:
        return GREATER
    return EQUAL
