"""Exact rational matrix kernels.

Matrices are plain lists of rows. Entries may be ``int`` or ``Fraction``;
nothing here touches floats.  ``matmul`` keeps integer inputs integral,
the elimination routines return ``Fraction`` entries.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


def as_matrix(rows: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    out = [[Fraction(x) for x in row] for row in rows]
    if ncols is None:
        ncols = len(out[0]) if out else 0
    for row in out:
        if len(row) != ncols:
            raise ValueError(f"ragged matrix: expected {ncols} columns, got {len(row)}")
    return out


def zeros(nrows: int, ncols: int) -> Matrix:
    return [[Fraction(0)] * ncols for _ in range(nrows)]


def shape(m: Matrix, ncols: int = 0) -> tuple[int, int]:
    # empty row lists lose their column count; callers pass it explicitly
    return (len(m), len(m[0]) if m else ncols)


def matmul(a: Sequence[Sequence], b: Sequence[Sequence], inner: int | None = None, ncols: int | None = None) -> list[list]:
    """Product ``a @ b``; ``inner``/``ncols`` disambiguate zero-sized operands."""
    n = len(a)
    k = len(b) if inner is None else inner
    m = (len(b[0]) if b else 0) if ncols is None else ncols
    if a and len(a[0]) != k:
        raise ValueError(f"shape mismatch: {n}x{len(a[0])} @ {k}x{m}")
    # int inputs stay int; Fractions propagate on their own
    out = [[0] * m for _ in range(n)]
    for i, row in enumerate(a):
        acc = out[i]
        for t, x in enumerate(row):
            if x:
                brow = b[t]
                for j in range(m):
                    if brow[j]:
                        acc[j] += x * brow[j]
    return out


def transpose(m: Matrix, ncols: int = 0) -> Matrix:
    nr, nc = shape(m, ncols)
    return [[m[i][j] for i in range(nr)] for j in range(nc)]


def is_zero(m: Sequence[Sequence]) -> bool:
    return all(not x for row in m for x in row)


def rref(m: Sequence[Sequence], ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot column indices."""
    a = as_matrix(m, ncols)
    nr = len(a)
    nc = len(a[0]) if a else 0
    pivots: list[int] = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        p = next((i for i in range(r, nr) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        prow = a[r]
        for i in range(nr):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], prow)]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: Sequence[Sequence]) -> int:
    if not m or not m[0]:
        return 0
    return len(rref(m)[1])


def nullspace(m: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{x : m x = 0}`` as a list of column vectors."""
    if not m:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    r, pivots = rref(m, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(r, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def column_basis(m: Sequence[Sequence], nrows: int) -> list[list[Fraction]]:
    """Independent columns of ``m`` spanning its column space."""
    if not m or not m[0]:
        return []
    _, pivots = rref(m)
    return [[Fraction(m[i][c]) for i in range(nrows)] for c in pivots]


def columns_to_matrix(cols: Sequence[Sequence], nrows: int) -> Matrix:
    return [[Fraction(cols[j][i]) for j in range(len(cols))] for i in range(nrows)]


def complete_basis(cols: Sequence[Sequence], dim: int) -> list[list[Fraction]]:
    """Standard basis vectors extending independent ``cols`` to a basis of Q^dim."""
    extra = []
    current = [list(c) for c in cols]
    cur_rank = len(current)
    for i in range(dim):
        e = [Fraction(int(j == i)) for j in range(dim)]
        trial = current + [e]
        if rank(columns_to_matrix(trial, dim)) > cur_rank:
            current = trial
            cur_rank += 1
            extra.append(e)
        if cur_rank == dim:
            break
    return extra


def solve(a: Sequence[Sequence], b: Sequence[Sequence], ncols: int) -> Matrix | None:
    """Some ``x`` with ``a x = b`` (``b`` has columns), or None if inconsistent."""
    nr = len(a)
    nb = len(b[0]) if b else 0
    aug = [list(a[i]) + list(b[i]) for i in range(nr)]
    r, pivots = rref(aug, ncols + nb)
    if any(p >= ncols for p in pivots):
        return None
    x = zeros(ncols, nb)
    for row, pc in zip(r, pivots):
        x[pc] = row[ncols:]
    return x
