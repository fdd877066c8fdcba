"""Graded vector spaces and graded Q[U]-modules built from towers and U-torsion."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence


@dataclass(frozen=True)
class GradedVectorSpace:
    """Finite-dimensional Z-graded rational vector space, stored by rank only.

    ``ranks`` holds ``(degree, rank)`` pairs with rank > 0, sorted by degree.
    """

    ranks: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        clean = {}
        for d, r in self.ranks:
            if r < 0:
                raise ValueError(f"negative rank {r} in degree {d}")
            if r:
                clean[int(d)] = clean.get(int(d), 0) + int(r)
        object.__setattr__(self, "ranks", tuple(sorted(clean.items())))

    @classmethod
    def from_mapping(cls, ranks: Mapping[int, int]) -> "GradedVectorSpace":
        return cls(tuple(ranks.items()))

    @classmethod
    def from_sequence(cls, seq: Sequence[int], start: int = 0) -> "GradedVectorSpace":
        return cls(tuple((start + i, r) for i, r in enumerate(seq)))

    def rank(self, degree: int) -> int:
        return dict(self.ranks).get(degree, 0)

    @property
    def total(self) -> int:
        return sum(r for _, r in self.ranks)

    @property
    def degrees(self) -> list[int]:
        return [d for d, _ in self.ranks]

    def sequence(self, start: int, stop: int) -> tuple[int, ...]:
        """Ranks in degrees ``start..stop`` inclusive."""
        lookup = dict(self.ranks)
        return tuple(lookup.get(d, 0) for d in range(start, stop + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** (d % 2) * r for d, r in self.ranks)

    def as_dict(self) -> dict[int, int]:
        return dict(self.ranks)


@dataclass(frozen=True)
class GradedUModule:
    """Direct sum of towers T+<d> and U-torsion summands Q[U]/U^l.

    A tower is recorded by its bottom degree and occupies d, d+2, d+4, ...
    A torsion summand is recorded by ``(top_degree, u_length)`` and occupies
    top, top-2, ..., top-2(l-1).  Canonical order: towers descending,
    torsion ascending by (degree, u_length).
    """

    towers: tuple[int, ...] = ()
    torsion: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        towers = tuple(sorted((int(d) for d in self.towers), reverse=True))
        torsion = []
        for d, ell in self.torsion:
            if ell < 1:
                raise ValueError(f"torsion summand needs u_length >= 1, got {ell}")
            torsion.append((int(d), int(ell)))
        object.__setattr__(self, "towers", towers)
        object.__setattr__(self, "torsion", tuple(sorted(torsion)))

    def shift(self, s: int) -> "GradedUModule":
        return GradedUModule(
            tuple(d + s for d in self.towers),
            tuple((d + s, ell) for d, ell in self.torsion),
        )

    def __add__(self, other: "GradedUModule") -> "GradedUModule":
        return GradedUModule(self.towers + other.towers, self.torsion + other.torsion)

    @property
    def tower_count(self) -> int:
        return len(self.towers)

    def tower_profile(self) -> list[tuple[int, int]]:
        """``(degree, multiplicity)`` of tower bottoms, degrees descending."""
        return sorted(Counter(self.towers).items(), reverse=True)

    def torsion_profile(self) -> list[tuple[int, int, int]]:
        """``(degree, u_length, rank)``, degrees descending."""
        c = Counter(self.torsion)
        return sorted(((d, ell, r) for (d, ell), r in c.items()), key=lambda t: (-t[0], t[1]))

    def rank_in_degree(self, degree: int) -> int:
        n = sum(1 for d in self.towers if degree >= d and (degree - d) % 2 == 0)
        n += sum(
            1
            for top, ell in self.torsion
            if top - 2 * (ell - 1) <= degree <= top and (top - degree) % 2 == 0
        )
        return n

    @property
    def is_zero(self) -> bool:
        return not self.towers and not self.torsion


def umod_shift(m: GradedUModule, s: int) -> GradedUModule:
    return m.shift(s)


def umod_sum(*mods: GradedUModule) -> GradedUModule:
    out = GradedUModule()
    for m in mods:
        out = out + m
    return out


def umod_equal(a: GradedUModule, b: GradedUModule) -> bool:
    return a == b


def poincare_report(m: GradedUModule, window: Iterable[int] | tuple[int, int]) -> list[tuple[int, int]]:
    """Nonzero ranks of ``m`` over an inclusive degree window ``(lo, hi)``."""
    lo, hi = window
    if lo > hi:
        raise ValueError(f"empty degree window [{lo}, {hi}]")
    out = []
    for d in range(lo, hi + 1):
        r = m.rank_in_degree(d)
        if r:
            out.append((d, r))
    return out
