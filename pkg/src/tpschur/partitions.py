"""Integer partitions, constrained enumeration and the factorial constants
attached to them."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

from .errors import DomainError


class Partition(tuple):
    """Weakly decreasing tuple of positive integers, stored without zeros.

    Trailing zeros are stripped on construction, so ``Partition((2, 1, 0))``
    equals ``Partition((2, 1))``.
    """

    def __new__(cls, parts=()):
        if isinstance(parts, int):
            parts = (parts,)
        parts = tuple(int(p) for p in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise DomainError(f"parts must be weakly decreasing: {parts}")
        if parts and parts[-1] < 0:
            raise DomainError(f"parts must be nonnegative: {parts}")
        return super().__new__(cls, parts)

    def size(self) -> int:
        return sum(self)

    def length(self) -> int:
        return len(self)

    def padded(self, width: int) -> tuple:
        if len(self) > width:
            raise DomainError(f"partition {tuple(self)} has more than {width} parts")
        return tuple(self) + (0,) * (width - len(self))

    def __repr__(self):
        return f"Partition({tuple(self)})"

    def to_json(self) -> list:
        return list(self)

    @classmethod
    def from_json(cls, data) -> "Partition":
        return cls(data)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse ``"2,1"`` (or ``""`` for the empty partition)."""
        text = text.strip().strip("()[]")
        if not text:
            return cls()
        return cls(int(t) for t in text.split(",") if t.strip())


def is_even_type(lam, n: int) -> bool:
    """Membership in the even class for width ``n``: every ``λ_l + n - l`` even."""
    lam = Partition(lam)
    if len(lam) > n:
        return False
    return all((p + n - l) % 2 == 0 for l, p in enumerate(lam.padded(n), start=1))


@dataclass(frozen=True)
class PartitionFilter:
    max_size: Optional[int] = None
    max_length: Optional[int] = None
    max_part: Optional[int] = None
    even_type_n: Optional[int] = None

    def is_finite(self) -> bool:
        return self.max_size is not None or (
            self.max_length is not None and self.max_part is not None
        )

    def size_bound(self) -> int:
        bounds = []
        if self.max_size is not None:
            bounds.append(self.max_size)
        if self.max_length is not None and self.max_part is not None:
            bounds.append(self.max_length * self.max_part)
        return min(bounds)

    def accepts(self, lam) -> bool:
        lam = Partition(lam)
        if self.max_size is not None and lam.size() > self.max_size:
            return False
        if self.max_length is not None and len(lam) > self.max_length:
            return False
        if self.max_part is not None and lam and lam[0] > self.max_part:
            return False
        if self.even_type_n is not None and not is_even_type(lam, self.even_type_n):
            return False
        return True


def _of_size(k: int, max_part: int, max_length: Optional[int]) -> Iterator[tuple]:
    # lexicographically descending
    if k == 0:
        yield ()
        return
    if max_length == 0:
        return
    rest_len = None if max_length is None else max_length - 1
    for first in range(min(k, max_part), 0, -1):
        if rest_len is not None and first * (rest_len + 1) < k:
            break
        for tail in _of_size(k - first, first, rest_len):
            yield (first,) + tail


def partitions_of(k: int, max_part: Optional[int] = None, max_length: Optional[int] = None):
    """Partitions of exactly ``k``, lexicographically descending."""
    if k < 0:
        return
    mp = k if max_part is None else min(max_part, k)
    for parts in _of_size(k, mp, max_length):
        yield Partition(parts)


def enumerate_partitions(filt: PartitionFilter = None, **kwargs) -> Iterator[Partition]:
    """Yield every partition passing ``filt``: ascending size, then
    lexicographically descending within a size.

    >>> list(enumerate_partitions(max_size=2))
    [Partition(()), Partition((1,)), Partition((2,)), Partition((1, 1))]
    """
    if filt is None:
        filt = PartitionFilter(**kwargs)
    elif kwargs:
        raise TypeError("pass either a PartitionFilter or keyword bounds, not both")
    if not filt.is_finite():
        raise DomainError("filter defines an infinite set: bound max_size or both max_length and max_part")
    for k in range(filt.size_bound() + 1):
        yield from graded_partitions(k, filt)


def graded_partitions(k: int, filt: PartitionFilter) -> Iterator[Partition]:
    """One grade of :func:`enumerate_partitions` (no finiteness needed)."""
    for lam in partitions_of(k, filt.max_part, filt.max_length):
        if filt.even_type_n is None or is_even_type(lam, filt.even_type_n):
            yield lam


@lru_cache(maxsize=None)
def factorial(k: int) -> int:
    return math.factorial(k)


def staircase_indices(lam, j: int) -> tuple:
    """``(λ_1 + j - 1, λ_2 + j - 2, ..., λ_j)`` for ``λ`` padded to ``j`` parts."""
    if j < 1:
        raise DomainError("width must be positive")
    padded = Partition(lam).padded(j)
    return tuple(p + j - m for m, p in enumerate(padded, start=1))


def from_staircase(indices) -> Partition:
    """Inverse of :func:`staircase_indices`; indices must be strictly decreasing."""
    j = len(indices)
    if any(a <= b for a, b in zip(indices, indices[1:])) or (indices and indices[-1] < 0):
        raise DomainError(f"not a strictly decreasing nonnegative sequence: {indices}")
    return Partition(k - (j - m) for m, k in enumerate(indices, start=1))


def c_lambda(lam, j: int) -> int:
    """Product of ``(λ_m + j - m)!`` over ``m = 1..j``."""
    return math.prod(factorial(k) for k in staircase_indices(lam, j))
