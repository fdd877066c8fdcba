"""Floer homology engines for the torus of flat connections.

Given the pair T_- in T (the bottom filtration piece of the torus of flat
spin-c connections and the whole torus), the long exact sequence splits
into I- (image of H(T_-)), I+ (its quotient) and E (kernel of i_*, moved up
one degree by the connecting map).  For a simplest-type datum the
Q[U]-module HM-to is read off from the cone of the triple-cup contraction
I+<-2> -> I- plus a U-torsion copy of E<-2>.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Literal, Sequence

from .algebra import linalg
from .algebra.exterior import CupForm, contraction_homology, contraction_matrix, exterior_dims
from .algebra.graded import GradedUModule, GradedVectorSpace

log = logging.getLogger(__name__)

GradingMode = Literal["relative", "paper_absolute"]


class DatumError(ValueError):
    """Malformed SimplestTypeDatum (shapes, ranks)."""


class ConsistencyError(ValueError):
    """The datum is not simplest-type-consistent."""


@dataclass(frozen=True)
class SimplestTypeDatum:
    """Input to the simplest-type computation.

    ``inclusion[k]`` is the matrix of i_*: H_k(T_-) -> Lambda^k Q^b1 with
    ``C(b1, k)`` rows and ``h_minus.rank(k)`` columns, row-major.
    """

    b1: int
    cup: CupForm
    h_minus: GradedVectorSpace
    inclusion: dict[int, list[list[Fraction]]] = field(default_factory=dict)
    label: str = ""

    def __post_init__(self):
        if self.b1 < 1:
            raise DatumError("b1 must be positive")
        if self.cup.b1 != self.b1:
            raise DatumError(f"cup form lives on b1={self.cup.b1}, datum has b1={self.b1}")
        for d in self.h_minus.degrees:
            if d < 0 or d > self.b1:
                raise DatumError(f"H(T_-) has rank in degree {d}, outside 0..{self.b1}")
        fixed = {}
        for k in sorted(set(self.inclusion) | set(self.h_minus.degrees)):
            cols = self.h_minus.rank(k)
            rows = comb(self.b1, k) if 0 <= k <= self.b1 else 0
            m = self.inclusion.get(k, [])
            if cols == 0:
                if any(len(r) for r in m):
                    raise DatumError(f"degree {k}: H_k(T_-) = 0 but inclusion matrix is nonempty")
                continue
            if len(m) != rows or any(len(r) != cols for r in m):
                got = f"{len(m)}x{len(m[0]) if m else 0}"
                raise DatumError(f"degree {k}: inclusion matrix is {got}, expected {rows}x{cols}")
            fixed[k] = [[Fraction(x) for x in r] for r in m]
        object.__setattr__(self, "inclusion", fixed)

    def inclusion_at(self, k: int) -> list[list[Fraction]]:
        return self.inclusion.get(k, [])


@dataclass(frozen=True)
class LesSplit:
    """Ranks of I+, I-, E plus the matrices that realize them.

    ``i_minus_basis[k]`` holds columns spanning I-_k inside Lambda^k,
    ``complement_basis[k]`` the standard vectors completing it (a lift of
    I+_k), and ``induced[k]`` the matrix of the map I+_k -> I-_(k-3) in
    those bases.
    """

    i_plus: GradedVectorSpace
    i_minus: GradedVectorSpace
    e: GradedVectorSpace
    i_minus_basis: dict[int, list[list[Fraction]]]
    complement_basis: dict[int, list[list[Fraction]]]
    induced: dict[int, list[list[Fraction]]]


@dataclass(frozen=True)
class SimplestResult:
    total: GradedUModule
    tower_part: GradedUModule
    reduced: GradedUModule
    mode: GradingMode


def hm_bar(cup: CupForm) -> GradedVectorSpace:
    """One U-period of HM-bar: homology of the contraction on Lambda^*."""
    return contraction_homology(cup)


def _check_consistency(datum: SimplestTypeDatum) -> None:
    b1 = datum.b1
    for k in range(3, b1 + 1):
        inc = datum.inclusion_at(k)
        if not inc:
            continue
        iota = contraction_matrix(datum.cup, k)
        prod = linalg.matmul(iota, inc, inner=comb(b1, k), ncols=len(inc[0]))
        if not linalg.is_zero(prod):
            raise ConsistencyError(
                f"not simplest-type-consistent: contraction does not kill i_*(H_{k}(T_-))"
            )


def split_les(datum: SimplestTypeDatum) -> LesSplit:
    b1 = datum.b1
    cup = datum.cup
    _check_consistency(datum)
    minus_basis, comp_basis = {}, {}
    i_minus, i_plus, e = {}, {}, {}
    for k in range(b1 + 1):
        dim = comb(b1, k)
        inc = datum.inclusion_at(k)
        cols = linalg.column_basis(inc, dim) if inc else []
        minus_basis[k] = cols
        comp_basis[k] = linalg.complete_basis(cols, dim)
        i_minus[k] = len(cols)
        i_plus[k] = dim - len(cols)
    for k in range(b1 + 2):
        inc = datum.inclusion_at(k - 1)
        if inc:
            e[k] = datum.h_minus.rank(k - 1) - linalg.rank(inc)

    induced = {}
    for k in range(3, b1 + 1):
        lifts = comp_basis[k]
        target = minus_basis[k - 3]
        iota = contraction_matrix(cup, k)
        images = linalg.matmul(iota, linalg.columns_to_matrix(lifts, comb(b1, k)),
                               inner=comb(b1, k), ncols=len(lifts))
        if not lifts:
            induced[k] = []
            continue
        if linalg.is_zero(images):
            induced[k] = linalg.zeros(len(target), len(lifts))
            continue
        coords = None
        if target:
            coords = linalg.solve(linalg.columns_to_matrix(target, comb(b1, k - 3)), images, len(target))
        if coords is None:
            raise ConsistencyError(
                f"not simplest-type-consistent: contraction of I+_{k} does not land in I-_{k - 3}"
            )
        induced[k] = coords
    return LesSplit(
        i_plus=GradedVectorSpace.from_mapping(i_plus),
        i_minus=GradedVectorSpace.from_mapping(i_minus),
        e=GradedVectorSpace.from_mapping(e),
        i_minus_basis=minus_basis,
        complement_basis=comp_basis,
        induced=induced,
    )


def cone_towers(split: LesSplit, b1: int) -> tuple[GradedUModule, GradedUModule]:
    """Relative-graded tower and reduced parts of the cone I+<-2> -> I-."""
    towers: list[int] = []
    image_rank = {}
    for k in range(b1 + 1):
        f = split.induced.get(k, [])
        r = linalg.rank(f) if f else 0
        image_rank[k - 3] = r
        towers += [k - 2] * (split.i_plus.rank(k) - r)
    for m in range(b1 + 1):
        towers += [m] * (split.i_minus.rank(m) - image_rank.get(m, 0))
    reduced = [(k - 2, 1) for k, r in split.e.ranks for _ in range(r)]
    return GradedUModule(tuple(towers)), GradedUModule((), tuple(reduced))


def normalize_grading(
    tower_part: GradedUModule, reduced: GradedUModule, mode: GradingMode = "relative"
) -> tuple[GradedUModule, GradedUModule]:
    """Shift both parts so the topmost tower sits at 0 (relative) or -1 (paper_absolute)."""
    if not tower_part.towers:
        if mode == "paper_absolute":
            raise ValueError("paper_absolute grading needs at least one tower")
        return tower_part, reduced
    target = 0 if mode == "relative" else -1
    s = target - max(tower_part.towers)
    return tower_part.shift(s), reduced.shift(s)


def simplest_hm(datum: SimplestTypeDatum, mode: GradingMode = "relative") -> SimplestResult:
    split = split_les(datum)
    towers, reduced = cone_towers(split, datum.b1)
    towers, reduced = normalize_grading(towers, reduced, mode)
    log.debug("simplest_hm %s: %d towers, %d reduced", datum.label, towers.tower_count, len(reduced.torsion))
    return SimplestResult(towers + reduced, towers, reduced, mode)


@dataclass(frozen=True)
class FiltrationDatum:
    """Relative homologies H_*(T_j, T_(j-1)) for j = 0..k."""

    relative_homologies: tuple[GradedVectorSpace, ...]

    def __post_init__(self):
        if not self.relative_homologies:
            raise ValueError("filtration needs at least one level")
        object.__setattr__(self, "relative_homologies", tuple(self.relative_homologies))


def e1_page(filtration: FiltrationDatum | Sequence[GradedVectorSpace]) -> GradedUModule:
    """Towers of the E^1 page: level j contributes H_*(T_j, T_(j-1))<-2j>."""
    levels = (
        filtration.relative_homologies if isinstance(filtration, FiltrationDatum) else tuple(filtration)
    )
    towers = [d - 2 * j for j, h in enumerate(levels) for d, r in h.ranks for _ in range(r)]
    return GradedUModule(tuple(towers))


def palindrome_check(tower_part: GradedUModule) -> bool:
    if not tower_part.towers:
        return True
    hi, lo = max(tower_part.towers), min(tower_part.towers)
    counts = dict(tower_part.tower_profile())
    seq = [counts.get(d, 0) for d in range(hi, lo - 1, -1)]
    return seq == seq[::-1]


def palindrome_sequence(seq: Sequence[int]) -> bool:
    return list(seq) == list(seq)[::-1]


__all__ = [
    "ConsistencyError",
    "DatumError",
    "FiltrationDatum",
    "LesSplit",
    "SimplestResult",
    "SimplestTypeDatum",
    "cone_towers",
    "e1_page",
    "exterior_dims",
    "hm_bar",
    "normalize_grading",
    "palindrome_check",
    "palindrome_sequence",
    "simplest_hm",
    "split_les",
]
