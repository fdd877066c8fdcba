"""Twisted Dirac operators on the flat unit torus R^3/Z^3.

The flat spin-c connection with holonomy beta has spectrum
{ +|2 pi n + beta|, -|2 pi n + beta| : n in Z^3 } on the rank-2 spinor
bundle, so D_beta - delta has kernel exactly on the spheres of radius
delta around the lattice 2 pi Z^3.  For 0 < delta < pi these spheres are
disjoint and the kernel locus in the torus is a single two-sphere around
the spin structure s0 = (0, 0, 0).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Literal, Sequence

TWO_PI = 2 * math.pi
TOL = 1e-12

Side = Literal["inside", "on", "outside"]


class PerturbationError(ValueError):
    """delta outside (0, pi): the kernel sphere would meet its translates."""


class LocusError(ValueError):
    """A path endpoint or vertex lies on the kernel locus."""


@dataclass(frozen=True)
class Real:
    """``coeff`` or ``coeff * pi`` kept exactly alongside its float value."""

    coeff: Fraction
    pi: bool = False

    def __float__(self) -> float:
        return float(self.coeff) * (math.pi if self.pi else 1.0)

    @classmethod
    def of(cls, x) -> "Real":
        if isinstance(x, Real):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(Fraction(x))
        if isinstance(x, float):
            return cls(Fraction(repr(x)))
        return parse_real(str(x))


_REAL = re.compile(r"^\s*([+-]?)\s*(\d+(?:\.\d*)?|\.\d+)?(?:\s*(?:/\s*(\d+)))?\s*\*?\s*(pi|π)?\s*(?:/\s*(\d+))?\s*$")


def parse_real(text: str) -> Real:
    """Parse ``0.3``, ``-pi``, ``0.5pi``, ``pi/2``, ``3/4*pi``."""
    m = _REAL.match(text)
    if not m or (m.group(2) is None and m.group(4) is None):
        raise ValueError(f"cannot parse real number {text!r}")
    sign, num, den1, pi, den2 = m.groups()
    if den1 and den2:
        raise ValueError(f"cannot parse real number {text!r}")
    c = Fraction(num) if num is not None else Fraction(1)
    if den1:
        c /= int(den1)
    if den2:
        c /= int(den2)
    if sign == "-":
        c = -c
    return Real(c, pi is not None)


def parse_point(text: str) -> tuple[Real, Real, Real]:
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError(f"expected three comma-separated coordinates, got {text!r}")
    return tuple(parse_real(p) for p in parts)  # type: ignore[return-value]


def parse_path(text: str) -> list[tuple[Real, Real, Real]]:
    """Vertices separated by ``;``."""
    return [parse_point(v) for v in text.split(";") if v.strip()]


@dataclass(frozen=True)
class FlatPoint:
    """Holonomy vector reduced to [0, 2pi)^3; exact coordinates kept when known."""

    beta: tuple[float, float, float]
    exact: tuple[Real, Real, Real] | None = None

    @classmethod
    def make(cls, coords: Sequence) -> "FlatPoint":
        if len(coords) != 3:
            raise ValueError("flat points have three coordinates")
        exact = tuple(Real.of(c) for c in coords)
        reduced = []
        for e in exact:
            if e.pi:
                reduced.append(Real(e.coeff % 2, True))
            elif e.coeff == 0:
                reduced.append(e)
            else:
                reduced.append(None)
        beta = tuple(float(x) % TWO_PI for x in exact)
        keep = tuple(reduced) if all(r is not None for r in reduced) else None
        if any(isinstance(c, float) for c in coords):
            return cls(beta, None)  # type: ignore[arg-type]
        if keep is None and all(not e.pi for e in exact):
            # plain rationals: exact only if already in the fundamental domain
            if all(0 <= float(e) < TWO_PI for e in exact):
                keep = exact
        return cls(beta, keep)  # type: ignore[arg-type]


def _check_delta(delta: float) -> None:
    if not 0 < float(delta) < math.pi:
        raise PerturbationError(f"perturbation not small: delta={float(delta)} must lie in (0, pi)")


def _nearest_center_dist(p: Sequence[float]) -> float:
    return math.sqrt(sum((x - TWO_PI * round(x / TWO_PI)) ** 2 for x in p))


def dirac_spectrum(p: FlatPoint, delta: float, radius: float) -> list[tuple[float, int]]:
    """Eigenvalues of D_beta - delta in [-radius, radius] with multiplicities."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    delta = float(delta)
    beta = p.beta
    bound = radius + abs(delta)
    counts: dict[float, int] = {}
    ranges = [
        range(math.floor((-bound - b) / TWO_PI) - 1, math.ceil((bound - b) / TWO_PI) + 2) for b in beta
    ]
    for n in product(*ranges):
        norm = math.sqrt(sum((TWO_PI * ni + bi) ** 2 for ni, bi in zip(n, beta)))
        if norm > bound + 1e-9:
            continue
        for lam in (norm - delta, -norm - delta):
            if abs(lam) <= radius + TOL:
                key = round(lam, 12) + 0.0
                counts[key] = counts.get(key, 0) + 1
    return sorted(counts.items())


def _exact_side(p: FlatPoint, delta: Real) -> Side | None:
    if p.exact is None:
        return None
    kinds = {e.pi for e in p.exact if e.coeff != 0}
    if delta.pi:
        kinds.add(True)
    else:
        kinds.add(False)
    if len(kinds) != 1:
        return None
    if kinds == {True}:
        # reduced coefficients in [0, 2); nearest lattice offset per axis
        d2 = sum(min(e.coeff, 2 - e.coeff) ** 2 for e in p.exact)
    else:
        if any(abs(float(e)) > math.pi for e in p.exact):
            return None
        d2 = sum(e.coeff ** 2 for e in p.exact)
    r2 = delta.coeff ** 2
    return "inside" if d2 < r2 else "on" if d2 == r2 else "outside"


def kernel_locus_membership(p: FlatPoint, delta) -> Side:
    """Position of ``p`` relative to the sphere where D_beta - delta has kernel.

    Exact comparison when ``p`` and ``delta`` are exact (rationals, or
    rational multiples of pi); Python floats use a 1e-12 tolerance.
    """
    inexact = isinstance(delta, float)
    delta = Real.of(delta)
    _check_delta(float(delta))
    side = None if inexact else _exact_side(p, delta)
    if side is not None:
        return side
    diff = _nearest_center_dist(p.beta) - float(delta)
    if abs(diff) <= TOL:
        return "on"
    return "inside" if diff < 0 else "outside"


def _lift(v) -> tuple[float, float, float]:
    return tuple(float(Real.of(x)) for x in v)  # type: ignore[return-value]


def _side_of_lift(v: Sequence[float], delta: float) -> Side:
    diff = _nearest_center_dist(v) - delta
    if abs(diff) <= TOL:
        return "on"
    return "inside" if diff < 0 else "outside"


def _segment_flow(a: Sequence[float], b: Sequence[float], delta: float) -> int:
    d = [bi - ai for ai, bi in zip(a, b)]
    dd = sum(x * x for x in d)
    if dd == 0:
        return 0
    lo = [min(ai, bi) - delta for ai, bi in zip(a, b)]
    hi = [max(ai, bi) + delta for ai, bi in zip(a, b)]
    ranges = [range(math.floor(l / TWO_PI), math.ceil(h / TWO_PI) + 1) for l, h in zip(lo, hi)]
    flow = 0
    for n in product(*ranges):
        c = [TWO_PI * ni for ni in n]
        w = [ai - ci for ai, ci in zip(a, c)]
        # |w + t d|^2 = delta^2
        bq = 2 * sum(wi * di for wi, di in zip(w, d))
        cq = sum(wi * wi for wi in w) - delta * delta
        disc = bq * bq - 4 * dd * cq
        if disc <= 0:
            continue  # missed or tangent: no sign change of |beta| - delta
        root = math.sqrt(disc)
        t_in = (-bq - root) / (2 * dd)
        t_out = (-bq + root) / (2 * dd)
        if 0 < t_in < 1:
            flow -= 1
        if 0 < t_out < 1:
            flow += 1
    return flow


def spectral_flow(path: Sequence[Sequence], delta) -> int:
    """Signed count of kernel-sphere crossings along a polyline lift in R^3.

    Leaving a ball (the small eigenvalue |beta| - delta rising through 0)
    counts +1, entering counts -1.
    """
    delta = float(Real.of(delta))
    _check_delta(delta)
    verts = [_lift(v) for v in path]
    if len(verts) < 2:
        raise ValueError("a path needs at least two vertices")
    for i, (a, b) in enumerate(zip(verts, verts[1:])):
        if max(abs(x - y) for x, y in zip(a, b)) > TWO_PI:
            raise ValueError(f"vertices {i} and {i + 1} are more than one period apart")
    for i, v in enumerate(verts):
        if _side_of_lift(v, delta) == "on":
            kind = "endpoint" if i in (0, len(verts) - 1) else "vertex"
            raise LocusError(f"path {kind} {i} lies on the kernel locus")
    return sum(_segment_flow(a, b, delta) for a, b in zip(verts, verts[1:]))


@dataclass(frozen=True)
class SpinPoint:
    point: FlatPoint
    side: Side
    is_s0: bool


def spin_points(delta) -> list[SpinPoint]:
    """The eight spin structures {0, pi}^3 and their side of the kernel sphere."""
    _check_delta(float(Real.of(delta)))
    out = []
    for bits in product((0, 1), repeat=3):
        p = FlatPoint.make([Real(Fraction(b), True) for b in bits])
        out.append(SpinPoint(p, kernel_locus_membership(p, delta), not any(bits)))
    return out


def hermitian2_stratum(a, b, z) -> int:
    """Kernel dimension of [[a, conj z], [z, b]]; the nonzero kernel locus is ab = |z|^2."""
    if isinstance(z, complex):
        zr, zi = z.real, z.imag
    elif isinstance(z, (tuple, list)):
        zr, zi = z
    else:
        zr, zi = z, 0
    vals = [a, b, zr, zi]
    if all(isinstance(v, (int, Fraction)) for v in vals):
        a, b, zr, zi = (Fraction(v) for v in vals)
        if a == b == zr == zi == 0:
            return 2
        return 1 if a * b - zr * zr - zi * zi == 0 else 0
    a, b, zr, zi = (float(v) for v in vals)
    scale = max(1.0, abs(a), abs(b), abs(zr), abs(zi))
    if max(abs(a), abs(b), abs(zr), abs(zi)) <= TOL:
        return 2
    return 1 if abs(a * b - zr * zr - zi * zi) <= TOL * scale * scale else 0
