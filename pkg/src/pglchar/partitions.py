"""Integer partitions and the statistics consumed by the multiplicity formulas.

A partition is a weakly decreasing tuple of positive integers; the empty
partition is allowed and has size 0.  Everything here is exact integer
arithmetic and independent of q.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Iterable

from .errors import CapacityError

PARTITIONS_OF_BOUND = 30


@dataclass(frozen=True)
class LengthStats:
    """Cycle-length counts: total, even, odd, and the mod-4 split of the evens."""

    ell: int
    ell0: int
    ell1: int
    ell0mod4: int
    ell2mod4: int


class Partition(tuple):
    """Weakly decreasing tuple of positive integers."""

    def __new__(cls, parts: Iterable[int] = ()) -> "Partition":
        parts = tuple(int(x) for x in parts)
        for i, x in enumerate(parts):
            if x < 1:
                raise ValueError(f"partition parts must be positive, got {x}")
            if i and parts[i - 1] < x:
                raise ValueError(f"partition parts must be weakly decreasing, got {parts}")
        return super().__new__(cls, parts)

    def size(self) -> int:
        return sum(self)

    def transpose(self) -> "Partition":
        if not self:
            return Partition()
        cols = [0] * self[0]
        for part in self:
            for j in range(part):
                cols[j] += 1
        return Partition(cols)

    def multiplicity(self, i: int) -> int:
        """Number of parts equal to i."""
        if i < 1:
            raise ValueError("parts are >= 1")
        return sum(1 for part in self if part == i)

    def multiplicities(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for part in self:
            out[part] = out.get(part, 0) + 1
        return out

    def is_even(self) -> bool:
        """True iff every part is even (vacuously true for the empty partition)."""
        return all(part % 2 == 0 for part in self)

    def length_stats(self) -> LengthStats:
        ell0mod4 = sum(1 for p in self if p % 4 == 0)
        ell2mod4 = sum(1 for p in self if p % 4 == 2)
        ell1 = sum(1 for p in self if p % 2 == 1)
        return LengthStats(len(self), ell0mod4 + ell2mod4, ell1, ell0mod4, ell2mod4)

    def centralizer_order(self) -> int:
        """Order of the centralizer in S_|p| of a permutation of this cycle type."""
        z = 1
        for i, m in self.multiplicities().items():
            z *= i**m * factorial(m)
        return z

    def sign(self) -> int:
        """Sign of a permutation of this cycle type: (-1)^(number of even parts)."""
        return -1 if self.length_stats().ell0 % 2 else 1

    def __str__(self) -> str:
        return "[" + ",".join(str(p) for p in self) + "]"

    def __repr__(self) -> str:
        return f"Partition({list(self)})"

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse the text form ``[3,1,1]``; the empty partition is ``[]``."""
        text = text.strip()
        if not (text.startswith("[") and text.endswith("]")):
            raise ValueError(f"partition must look like [a,b,...], got {text!r}")
        inner = text[1:-1].strip()
        if not inner:
            return cls()
        try:
            return cls(int(tok) for tok in inner.split(","))
        except ValueError as exc:
            raise ValueError(f"cannot parse partition {text!r}: {exc}") from None


@lru_cache(maxsize=None)
def _partitions_of(m: int, cap: int) -> tuple[Partition, ...]:
    if m == 0:
        return (Partition(),)
    out = []
    for first in range(min(m, cap), 0, -1):
        for rest in _partitions_of(m - first, first):
            out.append(Partition((first,) + tuple(rest)))
    return tuple(out)


def partitions_of(m: int, *, bound: int = PARTITIONS_OF_BOUND) -> tuple[Partition, ...]:
    """All partitions of m, in reverse-lexicographic order: (m) first, (1^m) last."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m > bound:
        raise CapacityError(f"partitions_of({m}) exceeds the bound {bound}")
    return _partitions_of(m, m if m else 1)
