"""Exterior algebra on Q^b1, alternating 3-forms and contraction by them.

Basis of Lambda^k is indexed by k-subsets of {1..b1} in colexicographic
order (sort by largest element, then next largest, ...).  The contraction
of a 3-form w against e_S is

    i_w(e_S) = sum over 3-subsets T of S of  sign(T, S) * w(T) * e_{S - T}

where sign(T, S) is the Koszul sign of moving T (in increasing order) to
the front of S.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from . import linalg
from .graded import GradedVectorSpace


class CupFormError(ValueError):
    """Malformed cup form input; ``position`` is a 0-based character offset."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        where = f" at position {position}" if position is not None else ""
        super().__init__(message + where)


@lru_cache(maxsize=None)
def basis(b1: int, k: int) -> tuple[tuple[int, ...], ...]:
    """k-subsets of {1..b1} in colex order."""
    if k < 0 or k > b1:
        return ()
    return tuple(sorted(combinations(range(1, b1 + 1), k), key=lambda s: s[::-1]))


def basis_index(subset: Sequence[int]) -> int:
    """Colex rank of an increasing subset (combinatorial number system)."""
    return sum(comb(s - 1, i + 1) for i, s in enumerate(subset))


def exterior_dims(b1: int) -> GradedVectorSpace:
    if b1 < 0:
        raise ValueError("b1 must be >= 0")
    return GradedVectorSpace.from_sequence([comb(b1, k) for k in range(b1 + 1)])


def permutation_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq``; 0 on a repeated entry."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def koszul_sign(t: Sequence[int], s: Sequence[int]) -> int:
    rest = [x for x in s if x not in t]
    moves = sum(1 for x in t for y in rest if y < x)
    return -1 if moves % 2 else 1


@dataclass(frozen=True)
class CupForm:
    """Alternating integer 3-form on Z^b1, stored by increasing index triples."""

    b1: int
    terms: tuple[tuple[tuple[int, int, int], int], ...] = ()

    def __post_init__(self):
        if self.b1 < 0:
            raise ValueError("b1 must be >= 0")
        seen = set()
        clean = []
        for triple, c in self.terms:
            triple = tuple(int(i) for i in triple)
            if len(triple) != 3 or not (triple[0] < triple[1] < triple[2]):
                raise CupFormError(f"index triple {triple} must be strictly increasing")
            if triple[0] < 1 or triple[2] > self.b1:
                raise CupFormError(f"index triple {triple} out of range 1..{self.b1}")
            if triple in seen:
                raise CupFormError(f"index triple {triple} repeated")
            seen.add(triple)
            if c:
                clean.append((triple, int(c)))
        object.__setattr__(self, "terms", tuple(sorted(clean)))

    @classmethod
    def parse(cls, text: str, b1: int) -> "CupForm":
        return parse_cup(text, b1)

    def coefficient(self, triple: Sequence[int]) -> int:
        """w(e_i, e_j, e_k) for any ordering of distinct indices."""
        sign = permutation_sign(triple)
        if not sign:
            return 0
        return sign * dict(self.terms).get(tuple(sorted(triple)), 0)

    def to_text(self) -> str:
        return "; ".join(f"{i},{j},{k}:{c}" for (i, j, k), c in self.terms)

    def pullback(self, g: Sequence[Sequence[int]]) -> "CupForm":
        """The form (v1, v2, v3) -> w(g v1, g v2, g v3) for an integer matrix g."""
        n = self.b1
        out = []
        for tgt in combinations(range(n), 3):
            total = 0
            for (a, b, c), w in self.terms:
                rows = (a - 1, b - 1, c - 1)
                minor = [[g[r][col] for col in tgt] for r in rows]
                total += w * _det3(minor)
            if total:
                out.append((tuple(x + 1 for x in tgt), total))
        return CupForm(n, tuple(out))

    @property
    def is_zero(self) -> bool:
        return not self.terms


def _det3(m) -> int:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


_TERM = re.compile(r"\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*:\s*([+-]?\d+)\s*$")


def parse_cup(text: str, b1: int) -> CupForm:
    """Parse ``"i,j,k:c; ..."``; indices are 1-based and need not be sorted.

    An unsorted triple is reordered and its coefficient multiplied by the
    sign of the sorting permutation.
    """
    terms: dict[tuple[int, int, int], int] = {}
    pos = 0
    for chunk in text.split(";"):
        start = pos
        pos += len(chunk) + 1
        if not chunk.strip():
            continue
        m = _TERM.match(chunk)
        if not m:
            offset = start + len(chunk) - len(chunk.lstrip())
            raise CupFormError(f"cannot parse term {chunk.strip()!r}, expected 'i,j,k:c'", offset)
        idx = [int(m.group(i)) for i in (1, 2, 3)]
        coeff = int(m.group(4))
        for g, i in zip((1, 2, 3), idx):
            if not 1 <= i <= b1:
                raise CupFormError(f"index {i} out of range 1..{b1}", start + m.start(g))
        sign = permutation_sign(idx)
        if not sign:
            raise CupFormError(f"repeated index in term {chunk.strip()!r}", start + m.start(1))
        key = tuple(sorted(idx))
        if key in terms:
            raise CupFormError(f"triple {key} appears twice", start + m.start(1))
        terms[key] = sign * coeff
    return CupForm(b1, tuple(terms.items()))


@lru_cache(maxsize=256)
def _contraction_cached(cup: CupForm, k: int) -> tuple[tuple[int, ...], ...]:
    src = basis(cup.b1, k)
    tgt_dim = comb(cup.b1, k - 3) if k >= 3 else 0
    rows = [[0] * len(src) for _ in range(tgt_dim)]
    weights = dict(cup.terms)
    for col, s in enumerate(src):
        for t in combinations(s, 3):
            w = weights.get(t)
            if not w:
                continue
            rest = tuple(x for x in s if x not in t)
            rows[basis_index(rest)][col] += koszul_sign(t, s) * w
    return tuple(tuple(r) for r in rows)


def contraction_matrix(cup: CupForm, k: int) -> list[list[int]]:
    """Integer matrix of the contraction Lambda^k -> Lambda^(k-3).

    Shape is ``C(b1, k-3) x C(b1, k)``; for k < 3 it has no rows.
    """
    if not 0 <= k <= cup.b1:
        raise ValueError(f"degree k={k} outside 0..{cup.b1}")
    return [list(r) for r in _contraction_cached(cup, k)]


def contraction_homology(cup: CupForm) -> GradedVectorSpace:
    """Ranks of ker/im for the contraction differential on Lambda^* Q^b1."""
    b1 = cup.b1
    ranks = [0] * (b1 + 4)
    for k in range(3, b1 + 1):
        ranks[k] = linalg.rank(contraction_matrix(cup, k))
    out = {}
    for k in range(b1 + 1):
        kernel = comb(b1, k) - ranks[k]
        image = ranks[k + 3] if k + 3 <= b1 else 0
        out[k] = kernel - image
    return GradedVectorSpace.from_mapping(out)


def vector_from_terms(b1: int, k: int, terms: Iterable[tuple[Sequence[int], Fraction | int]]) -> list[Fraction]:
    """Coordinates in the colex basis of Lambda^k of sum c * e_(i1) ^ ... ^ e_(ik).

    Index tuples may be unsorted or repeated; the wedge sign is applied.
    """
    v = [Fraction(0)] * comb(b1, k)
    for idx, c in terms:
        sign = permutation_sign(idx)
        if sign:
            v[basis_index(sorted(idx))] += sign * Fraction(c)
    return v
