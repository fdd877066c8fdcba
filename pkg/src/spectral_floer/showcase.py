"""Golden checks reproducing the published homology answers and flat-model facts."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .algebra.exterior import CupForm, contraction_homology, contraction_matrix
from .algebra import linalg
from .flatdirac import spectral_flow, spin_points
from .floercore import hm_bar, palindrome_check, simplest_hm
from .productgeom import (
    BUILTIN_SURFACES,
    DATUM_PRESETS,
    HYPERBOLIC_PRODUCT_S_TILDE,
    PresetError,
    ProductSpectrumQuery,
    lambda1_star,
    load_preset_file,
    spectrally_large,
    sym_product_homology,
    t3_flat_datum,
    theta_datum,
)

SEED = 20240611
TWO_PI = 2 * math.pi


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


def random_cup(rng: random.Random, b1: int, density: float = 0.3) -> CupForm:
    from itertools import combinations

    terms = [
        (t, rng.choice([-2, -1, 1, 2]))
        for t in combinations(range(1, b1 + 1), 3)
        if rng.random() < density
    ]
    return CupForm(b1, tuple(terms))


def iota_squared_zero(cup: CupForm) -> bool:
    for k in range(6, cup.b1 + 1):
        prod = linalg.matmul(contraction_matrix(cup, k - 3), contraction_matrix(cup, k))
        if not linalg.is_zero(prod):
            return False
    return True


def random_loop(rng: random.Random, steps: int) -> list[tuple[float, float, float]]:
    start = tuple(rng.uniform(-4, 4) for _ in range(3))
    verts = [start]
    for _ in range(steps):
        verts.append(tuple(x + rng.uniform(-math.pi, math.pi) for x in verts[-1]))
    # close up in the torus: end at start + 2 pi m, within half a period of the last vertex
    last = verts[-1]
    m = [round((l - s) / TWO_PI) for l, s in zip(last, start)]
    verts.append(tuple(s + TWO_PI * mi for s, mi in zip(start, m)))
    return verts


def random_path(rng: random.Random, start, steps: int):
    verts = [start]
    for _ in range(steps):
        verts.append(tuple(x + rng.uniform(-math.pi, math.pi) for x in verts[-1]))
    return verts


def check_hmbar_t3() -> Check:
    got = hm_bar(CupForm(3, (((1, 2, 3), 1),))).sequence(0, 3)
    return Check("hmbar_t3", got == (0, 3, 3, 0), f"period {got}")


def check_bolza() -> Check:
    r = simplest_hm(theta_datum(2), "paper_absolute")
    ok = r.tower_part.tower_profile() == [(-1, 1), (-2, 9), (-3, 9), (-4, 1)] and r.reduced.is_zero
    return Check("bolza_towers", ok, f"towers {r.tower_part.tower_profile()} reduced {r.reduced.torsion_profile()}")


def check_klein() -> Check:
    r = simplest_hm(theta_datum(3), "paper_absolute")
    want = [(-1, 1), (-2, 6), (-3, 28), (-4, 28), (-5, 6), (-6, 1)]
    ok = r.tower_part.tower_profile() == want and r.reduced.torsion_profile() == [(-4, 1, 1)]
    return Check("klein_towers", ok, f"towers {r.tower_part.tower_profile()} reduced {r.reduced.torsion_profile()}")


def check_t3_flat() -> Check:
    r = simplest_hm(t3_flat_datum(), "relative")
    ok = r.tower_part.tower_profile() == [(0, 3), (-1, 3)] and r.reduced.is_zero
    return Check("t3_flat_simplest", ok, f"towers {r.tower_part.tower_profile()}")


def check_spin_points() -> Check:
    bad = []
    for delta in (0.1, 0.3, 3.0):
        for sp in spin_points(delta):
            want = "inside" if sp.is_s0 else "outside"
            if sp.side != want:
                bad.append((delta, sp.point.beta, sp.side))
    return Check("spin_points_flat", not bad, f"misclassified {bad}" if bad else "s0 inside, 7 outside")


def check_spectral_flow(trials: int = 1000, seed: int = SEED) -> Check:
    rng = random.Random(seed)
    delta = 0.3
    problems = []
    if spectral_flow([(0, 0, 0.1), (math.pi,) * 3], delta) != 1:
        problems.append("center->outside != +1")
    loops_bad = sum(spectral_flow(random_loop(rng, rng.randint(2, 6)), delta) != 0 for _ in range(trials))
    if loops_bad:
        problems.append(f"{loops_bad} loops with nonzero flow")
    add_bad = 0
    for _ in range(trials):
        first = random_path(rng, tuple(rng.uniform(-1, 1) for _ in range(3)), rng.randint(1, 4))
        second = random_path(rng, first[-1], rng.randint(1, 4))
        whole = first + second[1:]
        if spectral_flow(whole, delta) != spectral_flow(first, delta) + spectral_flow(second, delta):
            add_bad += 1
    if add_bad:
        problems.append(f"{add_bad} additivity failures")
    return Check("spectral_flow_suite", not problems, "; ".join(problems) or f"{trials} loops, {trials} pairs")


def check_waveguide() -> Check:
    bolza = BUILTIN_SURFACES["bolza"]
    a = lambda1_star(ProductSpectrumQuery.for_surface(bolza, Fraction("0.25")))
    b = lambda1_star(ProductSpectrumQuery((Fraction("3.84"),), 2, 2))
    ok = (
        abs(float(a) - 3.84) <= 1e-12
        and spectrally_large(a, HYPERBOLIC_PRODUCT_S_TILDE)
        and abs(float(b) - 0.25) <= 1e-12
        and not spectrally_large(b, HYPERBOLIC_PRODUCT_S_TILDE)
    )
    return Check("waveguide", ok, f"bolza L=0.25: {float(a)}; lambda1=3.84 L=2: {float(b)}")


def check_properties(forms: int = 200, seed: int = SEED) -> Check:
    rng = random.Random(seed)
    problems = []
    bad = sum(not iota_squared_zero(random_cup(rng, rng.randint(3, 8))) for _ in range(forms))
    if bad:
        problems.append(f"iota^2 != 0 for {bad} forms")
    for name, make in DATUM_PRESETS.items():
        d = make()
        r = simplest_hm(d)
        if r.tower_part.tower_count != hm_bar(d.cup).total:
            problems.append(f"{name}: tower count != HM-bar period dimension")
        if not palindrome_check(r.tower_part):
            problems.append(f"{name}: tower profile not palindromic")
    if sym_product_homology(3, 2).sequence(0, 4) != (1, 6, 16, 6, 1):
        problems.append("Sym^2(Sigma_3) Betti numbers")
    return Check("property_suites", not problems, "; ".join(problems) or f"{forms} random forms")


ALL_CHECKS: list[Callable[[], Check]] = [
    check_hmbar_t3,
    check_bolza,
    check_klein,
    check_t3_flat,
    check_spin_points,
    check_spectral_flow,
    check_waveguide,
    check_properties,
]


def run_checks(preset_files=()) -> list[Check]:
    out = []
    for fn in ALL_CHECKS:
        try:
            out.append(fn())
        except Exception as exc:  # a crashing check is a failed check
            out.append(Check(fn.__name__.removeprefix("check_"), False, f"{type(exc).__name__}: {exc}"))
    for path in preset_files:
        try:
            n = len(load_preset_file(path))
            out.append(Check(f"preset_file:{path}", True, f"{n} presets"))
        except PresetError as exc:
            out.append(Check(f"preset_file:{path}", False, str(exc)))
    return out
