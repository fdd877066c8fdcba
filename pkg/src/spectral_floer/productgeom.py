"""Geometry of S^1 x Sigma: coexact spectra, symmetric products, presets.

Coexact 1-form spectrum on the product with circle R/2piLZ: every surface
eigenvalue lambda_n > 0 gives lambda_n + m^2/L^2 for all m in Z, and the
2g harmonic 1-forms of Sigma give m^2/L^2 for m != 0.  Everything is kept
as exact rationals when inputs are decimal.
"""

from __future__ import annotations

import json
import os
from collections import Counter
from dataclasses import asdict, dataclass
from fractions import Fraction
from math import comb, isqrt
from pathlib import Path
from typing import Iterable, Sequence

from .algebra.exterior import CupForm, basis, vector_from_terms
from .algebra.graded import GradedVectorSpace
from .floercore import SimplestTypeDatum

PRESET_PATH_ENV = "SPECTRAL_FLOER_PRESET_PATH"

# Sum of the two smallest Ricci eigenvalues of S^1 x (hyperbolic surface):
# Ricci = diag(0, -1, -1), so s~ = -2 everywhere.
HYPERBOLIC_PRODUCT_S_TILDE = Fraction(-2)


class PresetError(ValueError):
    pass


def to_rational(x) -> Fraction:
    """Exact rational from an int, Fraction, decimal string or float (via its repr)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(str(x).strip())


@dataclass(frozen=True)
class SurfaceSpectralData:
    name: str
    genus: int
    lambda1: Fraction
    hyperelliptic: bool = False
    source: str = ""
    lambda1_upper: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "lambda1", to_rational(self.lambda1))
        if self.lambda1_upper is not None:
            object.__setattr__(self, "lambda1_upper", to_rational(self.lambda1_upper))
        if self.lambda1 <= 0:
            raise PresetError(f"{self.name}: lambda1 must be positive")
        if self.genus < 1:
            raise PresetError(f"{self.name}: genus must be positive")

    def to_json(self) -> dict:
        d = asdict(self)
        d["lambda1"] = float(self.lambda1)
        if self.lambda1_upper is None:
            del d["lambda1_upper"]
        else:
            d["lambda1_upper"] = float(self.lambda1_upper)
        return d


BUILTIN_SURFACES: dict[str, SurfaceSpectralData] = {
    s.name: s
    for s in (
        SurfaceSpectralData("bolza", 2, Fraction("3.84"), True, "Strohmaier-Uski numerics, approx 3.84"),
        SurfaceSpectralData("klein", 3, Fraction("2.68"), False, "Cook thesis numerics, approx 2.68"),
        SurfaceSpectralData("bring", 4, Fraction("1.92"), False, "Cook thesis numerics, approx 1.92"),
        SurfaceSpectralData(
            "fricke-macbeath", 7, Fraction("1.23"), False,
            "Lee interval bound [1.23, 1.26]; lower end stored", Fraction("1.26"),
        ),
    )
}


def parse_preset(obj: dict) -> SurfaceSpectralData:
    required = ("name", "genus", "lambda1", "hyperelliptic", "source")
    missing = [k for k in required if k not in obj]
    if missing:
        raise PresetError(f"preset missing fields: {', '.join(missing)}")
    lam = obj["lambda1"]
    upper = obj.get("lambda1_upper")
    if isinstance(lam, list):
        if len(lam) != 2:
            raise PresetError("lambda1 interval must be [low, high]")
        lam, upper = lam
    if not isinstance(obj["genus"], int) or isinstance(obj["genus"], bool):
        raise PresetError("genus must be an integer")
    try:
        return SurfaceSpectralData(
            name=str(obj["name"]),
            genus=obj["genus"],
            lambda1=to_rational(lam),
            hyperelliptic=bool(obj["hyperelliptic"]),
            source=str(obj["source"]),
            lambda1_upper=None if upper is None else to_rational(upper),
        )
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise PresetError(str(exc)) from exc


def load_preset_file(path: str | os.PathLike) -> list[SurfaceSpectralData]:
    """Presets from a JSON file holding one object or a list of objects."""
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise PresetError(f"cannot read preset file {path}: {exc}") from exc
    items = data if isinstance(data, list) else [data]
    if not all(isinstance(o, dict) for o in items):
        raise PresetError(f"{path}: expected an object or a list of objects")
    return [parse_preset(o) for o in items]


def preset_table(extra_files: Iterable[str | os.PathLike] = ()) -> dict[str, SurfaceSpectralData]:
    """Built-ins, then every *.json under the env search path, then ``extra_files``."""
    table = dict(BUILTIN_SURFACES)
    files: list[Path] = []
    for d in filter(None, os.environ.get(PRESET_PATH_ENV, "").split(os.pathsep)):
        files += sorted(Path(d).glob("*.json"))
    files += [Path(f) for f in extra_files]
    for f in files:
        for s in load_preset_file(f):
            table[s.name] = s
    return table


@dataclass(frozen=True)
class ProductSpectrumQuery:
    eigenvalues: tuple[Fraction, ...]
    genus: int
    L: Fraction
    count: int = 10

    def __post_init__(self):
        eig = tuple(sorted(to_rational(x) for x in self.eigenvalues))
        object.__setattr__(self, "eigenvalues", eig)
        object.__setattr__(self, "L", to_rational(self.L))
        if self.L <= 0:
            raise ValueError("circle parameter L must be positive")
        if not eig:
            raise ValueError("need at least one surface eigenvalue")
        if eig[0] <= 0:
            raise ValueError("surface eigenvalues must be positive")
        if self.genus < 0:
            raise ValueError("genus must be >= 0")
        if self.count < 1:
            raise ValueError("count must be positive")

    @classmethod
    def for_surface(cls, surface: SurfaceSpectralData, L, count: int = 10) -> "ProductSpectrumQuery":
        return cls((surface.lambda1,), surface.genus, L, count)


def _floor_sqrt(x: Fraction) -> int:
    if x < 0:
        return -1
    return isqrt(x.numerator * x.denominator) // x.denominator


def _values_up_to(q: ProductSpectrumQuery, cutoff: Fraction) -> list[Fraction]:
    inv = 1 / (q.L * q.L)
    out = []
    for lam in q.eigenvalues:
        if lam > cutoff:
            break
        mmax = _floor_sqrt((cutoff - lam) * q.L * q.L)
        out += [lam + m * m * inv for m in range(-mmax, mmax + 1)]
    mmax = _floor_sqrt(cutoff * q.L * q.L)
    for m in range(1, mmax + 1):
        out += [m * m * inv] * (4 * q.genus)  # +m and -m, 2g harmonic forms each
    return out


def coexact_spectrum(q: ProductSpectrumQuery) -> list[tuple[Fraction, int]]:
    """The ``count`` smallest coexact eigenvalues, grouped as (value, multiplicity)."""
    inv = 1 / (q.L * q.L)
    cutoff = min(q.eigenvalues[0], inv if q.genus else q.eigenvalues[0])
    while True:
        vals = _values_up_to(q, cutoff)
        if len(vals) >= q.count:
            break
        cutoff = 2 * cutoff + inv
    head = sorted(vals)[: q.count]
    return sorted(Counter(head).items())


def lambda1_star(q: ProductSpectrumQuery) -> Fraction:
    return coexact_spectrum(ProductSpectrumQuery(q.eigenvalues, q.genus, q.L, 1))[0][0]


def spectrally_large(lambda1_star_value, s_tilde_inf) -> bool:
    """lambda1* > -inf(s~)/2, strict."""
    return to_rational(lambda1_star_value) > -to_rational(s_tilde_inf) / 2


def sym_product_homology(genus: int, n: int) -> GradedVectorSpace:
    """Rational Betti numbers of Sym^n of a closed genus-g surface.

    Coefficient of u^n in (1 + t u)^(2g) / ((1 - u)(1 - t^2 u)).
    """
    if genus < 0 or n < 0:
        raise ValueError("genus and symmetric power must be >= 0")
    ranks: Counter[int] = Counter()
    for a in range(min(n, 2 * genus) + 1):
        for c in range(n - a + 1):
            ranks[a + 2 * c] += comb(2 * genus, a)
    return GradedVectorSpace.from_mapping(ranks)


def _theta_cup(g: int) -> CupForm:
    # basis z, x1, y1, ..., xg, yg -> indices 1, 2, 3, ..., 2g, 2g+1
    return CupForm(2 * g + 1, tuple(((1, 2 * i, 2 * i + 1), 1) for i in range(1, g + 1)))


def _symplectic_form_terms(g: int) -> list[tuple[tuple[int, int], int]]:
    return [((2 * i, 2 * i + 1), 1) for i in range(1, g + 1)]


def theta_datum(g: int) -> SimplestTypeDatum:
    """Datum for S^1 x Sigma_g with T_- a disk bundle over the theta divisor."""
    if g >= 4:
        raise PresetError(f"theta divisor singular for genus {g} >= 4; no simplest-type preset")
    if g not in (2, 3):
        raise PresetError(f"no theta-divisor preset for genus {g}")
    b1 = 2 * g + 1
    h1 = list(range(2, b1 + 1))  # x1, y1, ..., xg, yg
    w = _symplectic_form_terms(g)

    def cols(vectors: Sequence[list[Fraction]], k: int) -> list[list[Fraction]]:
        rows = len(basis(b1, k))
        return [[v[i] for v in vectors] for i in range(rows)]

    inc: dict[int, list[list[Fraction]]] = {0: [[Fraction(1)]]}
    inc[1] = cols([vector_from_terms(b1, 1, [((i,), 1)]) for i in h1], 1)
    if g == 2:
        h_minus = sym_product_homology(2, 1)
        inc[2] = cols([vector_from_terms(b1, 2, w)], 2)
    else:
        h_minus = sym_product_homology(3, 2)
        pairs = [(a, b) for a in h1 for b in h1 if a < b]
        two = [vector_from_terms(b1, 2, [(p, 1)]) for p in pairs]
        two.append([Fraction(0)] * len(basis(b1, 2)))  # the extra Q summand dies
        inc[2] = cols(two, 2)
        inc[3] = cols([vector_from_terms(b1, 3, [((x, *p), c) for p, c in w]) for x in h1], 3)
        w2_half = [(p + q, 1) for i, (p, _) in enumerate(w) for (q, _) in w[i + 1:]]
        inc[4] = cols([vector_from_terms(b1, 4, w2_half)], 4)
    names = {2: "bolza", 3: "klein"}
    return SimplestTypeDatum(b1, _theta_cup(g), h_minus, inc, f"S1xSigma{g} ({names[g]})")


def t3_flat_datum() -> SimplestTypeDatum:
    """Flat T^3: T_- is the small ball around the parallel-spinor point."""
    return SimplestTypeDatum(
        3,
        CupForm(3, (((1, 2, 3), 1),)),
        GradedVectorSpace.from_sequence([1]),
        {0: [[Fraction(1)]]},
        "T3 flat",
    )


DATUM_PRESETS = {"t3-flat": t3_flat_datum, "bolza": lambda: theta_datum(2), "klein": lambda: theta_datum(3)}
