"""Bipartitions of a party set.

Parties are 0-based internally. Labels and JSON use 1-based indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import InputError, InvalidPartitionError, TooFewPartiesError


@dataclass(frozen=True, order=True)
class Bipartition:
    """An ordered split ``left | right`` of party indices."""

    left: tuple[int, ...]
    right: tuple[int, ...]

    def __post_init__(self):
        left = tuple(sorted(self.left))
        right = tuple(sorted(self.right))
        if not left or not right:
            raise InvalidPartitionError("both sides of a bipartition must be nonempty")
        if set(left) & set(right):
            raise InvalidPartitionError(f"sides overlap: {left} / {right}")
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    @property
    def parties(self) -> tuple[int, ...]:
        return tuple(sorted(self.left + self.right))

    def swapped(self) -> Bipartition:
        return Bipartition(self.right, self.left)

    def unordered_key(self) -> frozenset:
        return frozenset((self.left, self.right))

    def check(self, n: int) -> None:
        """Raise unless this is a split of exactly ``{0..n-1}``."""
        if self.parties != tuple(range(n)):
            raise InvalidPartitionError(
                f"{self.label()} is not a bipartition of {n} parties"
            )

    def label(self) -> str:
        sep = "," if max(self.parties) >= 9 else ""
        left = sep.join(str(i + 1) for i in self.left)
        right = sep.join(str(i + 1) for i in self.right)
        return f"{left}|{right}"

    def to_json(self) -> dict:
        return {"left": [i + 1 for i in self.left], "right": [i + 1 for i in self.right]}

    @classmethod
    def from_json(cls, obj: dict) -> Bipartition:
        try:
            return cls(
                tuple(int(i) - 1 for i in obj["left"]),
                tuple(int(i) - 1 for i in obj["right"]),
            )
        except (KeyError, TypeError) as exc:
            raise InputError(f"bad bipartition object: {obj!r}") from exc

    def __str__(self) -> str:
        return self.label()


def bipartition(left: Iterable[int], right: Iterable[int]) -> Bipartition:
    """Build a bipartition from 1-based party indices."""
    return Bipartition(tuple(i - 1 for i in left), tuple(i - 1 for i in right))


def _unordered_over(parties: Sequence[int]) -> list[Bipartition]:
    parties = tuple(sorted(parties))
    n = len(parties)
    out = []
    for size in range(1, n // 2 + 1):
        for left in combinations(parties, size):
            # equal halves: keep only the orientation holding the first party
            if 2 * size == n and parties[0] not in left:
                continue
            right = tuple(p for p in parties if p not in left)
            out.append(Bipartition(left, right))
    return out


def enumerate_unordered(n: int) -> list[Bipartition]:
    """All ``2**(n-1) - 1`` bipartitions of ``n`` parties, smaller side on the left."""
    if n < 2:
        raise TooFewPartiesError(f"need at least 2 parties, got {n}")
    return _unordered_over(range(n))


def enumerate_ordered(n: int) -> list[Bipartition]:
    """Both orientations of every bipartition of ``n`` parties."""
    out = []
    for part in enumerate_unordered(n):
        out.append(part)
        out.append(part.swapped())
    return out


def nested(part_left: Iterable[int]) -> list[Bipartition]:
    """Unordered bipartitions of a subset; empty when the subset is one party."""
    parties = tuple(sorted(set(part_left)))
    if len(parties) < 2:
        return []
    return _unordered_over(parties)
