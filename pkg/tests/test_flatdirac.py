import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import dirac_spectrum_by_pauli
from spectral_floer.flatdirac import (
    FlatPoint,
    LocusError,
    PerturbationError,
    Real,
    dirac_spectrum,
    hermitian2_stratum,
    kernel_locus_membership,
    parse_path,
    parse_point,
    parse_real,
    spectral_flow,
    spin_points,
)
from spectral_floer.showcase import random_loop, random_path

PI = math.pi
coord = st.floats(-10, 10, allow_nan=False)
point = st.tuples(coord, coord, coord)


def flatten(spec):
    return sorted(ev for ev, m in spec for _ in range(m))


class TestParsing:
    @pytest.mark.parametrize(
        "text, coeff, is_pi",
        [("0.3", Fraction(3, 10), False), ("pi", 1, True), ("-pi", -1, True), ("0.5pi", Fraction(1, 2), True),
         ("pi/2", Fraction(1, 2), True), ("3/4*pi", Fraction(3, 4), True), ("2", 2, False), ("1/3", Fraction(1, 3), False)],
    )
    def test_reals(self, text, coeff, is_pi):
        assert parse_real(text) == Real(Fraction(coeff), is_pi)

    @pytest.mark.parametrize("text", ["", "abc", "pi pi", "1/2/3", "--1"])
    def test_bad_reals(self, text):
        with pytest.raises(ValueError):
            parse_real(text)

    def test_point_and_path(self):
        assert [float(x) for x in parse_point("pi,0,0.5pi")] == [PI, 0.0, PI / 2]
        assert len(parse_path("0,0,0.1 ; pi,pi,pi")) == 2
        with pytest.raises(ValueError):
            parse_point("1,2")


class TestSpectrum:
    def test_parallel_spinors(self):
        assert dirac_spectrum(FlatPoint.make([0, 0, 0]), 0, 1) == [(0.0, 2)]

    def test_half_period_point(self):
        spec = dirac_spectrum(FlatPoint.make([PI, 0, 0]), 0, 3.2)
        assert min(abs(ev) for ev, _ in spec) == pytest.approx(PI, abs=1e-12)
        assert dict(spec)[round(PI, 12)] == 2 and dict(spec)[round(-PI, 12)] == 2

    @pytest.mark.parametrize("delta", [0.1, 0.7, 2.5])
    def test_kernel_on_sphere(self, delta):
        spec = dirac_spectrum(FlatPoint.make([delta, 0, 0]), delta, 0.5)
        assert any(abs(ev) < 1e-12 for ev, _ in spec)

    def test_radius_must_be_positive(self):
        with pytest.raises(ValueError):
            dirac_spectrum(FlatPoint.make([0, 0, 0]), 0, 0)

    @settings(max_examples=30, deadline=None)
    @given(point, st.floats(-1, 1), st.floats(0.5, 8))
    def test_matches_pauli_oracle(self, beta, delta, radius):
        spec = dirac_spectrum(FlatPoint.make(beta), delta, radius)
        reduced = [b % (2 * PI) for b in beta]
        want = dirac_spectrum_by_pauli(reduced, delta, radius)
        got = flatten(spec)
        # skip boundary cases where an eigenvalue sits at the window edge
        if any(abs(abs(w) - radius) < 1e-8 for w in want):
            return
        assert len(got) == len(want)
        assert np.allclose(got, want, atol=1e-9)

    @settings(max_examples=30, deadline=None)
    @given(point, st.floats(0.5, 8))
    def test_symmetric_without_perturbation(self, beta, radius):
        spec = dirac_spectrum(FlatPoint.make(beta), 0, radius)
        assert spec == sorted((-ev + 0.0, m) for ev, m in spec)

    @settings(max_examples=30, deadline=None)
    @given(point, st.floats(-1, 1), st.integers(0, 2), st.integers(-2, 2))
    def test_lattice_periodicity(self, beta, delta, axis, shift):
        moved = list(beta)
        moved[axis] += 2 * PI * shift
        a = flatten(dirac_spectrum(FlatPoint.make(beta), delta, 4))
        b = flatten(dirac_spectrum(FlatPoint.make(moved), delta, 4))
        if len(a) == len(b):
            assert np.allclose(a, b, atol=1e-9)
        else:  # an eigenvalue straddles the window edge after rounding
            assert abs(len(a) - len(b)) <= 2


class TestLocus:
    def test_examples(self):
        assert kernel_locus_membership(FlatPoint.make([0, 0, 0]), 0.3) == "inside"
        assert kernel_locus_membership(FlatPoint.make([0.3, 0, 0]), 0.3) == "on"
        assert kernel_locus_membership(FlatPoint.make(parse_point("pi,pi,pi")), 0.3) == "outside"

    def test_exact_pi_multiples(self):
        p = FlatPoint.make(parse_point("0.1pi,0,0"))
        assert kernel_locus_membership(p, parse_real("0.1pi")) == "on"
        p = FlatPoint.make(parse_point("1.9pi,0,0"))  # wraps to distance 0.1 pi
        assert kernel_locus_membership(p, parse_real("0.1pi")) == "on"
        assert kernel_locus_membership(p, parse_real("0.2pi")) == "inside"

    def test_exact_rationals(self):
        p = FlatPoint.make([Fraction(3, 10), Fraction(4, 10), 0])
        assert kernel_locus_membership(p, Fraction(1, 2)) == "on"

    def test_float_tolerance(self):
        p = FlatPoint.make([0.3 + 1e-14, 0.0, 0.0])
        assert kernel_locus_membership(p, 0.3) == "on"

    @pytest.mark.parametrize("delta", [0, -0.1, PI, 4])
    def test_delta_range(self, delta):
        with pytest.raises(PerturbationError, match="not small"):
            kernel_locus_membership(FlatPoint.make([0, 0, 0]), delta)

    def test_reduction_to_fundamental_domain(self):
        p = FlatPoint.make([-0.1, 2 * PI + 0.2, 0])
        assert all(0 <= b < 2 * PI for b in p.beta)
        assert kernel_locus_membership(p, 0.3) == "inside"


class TestSpectralFlow:
    def test_center_to_corner(self):
        assert spectral_flow([(0, 0, 0.1), (PI, PI, PI)], 0.3) == 1
        assert spectral_flow(parse_path("0,0,0 ; pi,pi,pi"), 0.3) == 1

    def test_reverse_is_negative(self):
        assert spectral_flow([(PI, PI, PI), (0, 0, 0)], 0.3) == -1

    def test_straight_loop_around_torus(self):
        assert spectral_flow([(0, 0, 0), (PI, 0, 0), (2 * PI, 0, 0)], 0.3) == 0

    def test_outside_to_outside_missing_sphere(self):
        assert spectral_flow([(PI, PI, PI), (PI, 0.5, PI), (2, 2, 2)], 0.3) == 0

    def test_through_sphere_counts_zero(self):
        assert spectral_flow([(-1, 0, 0), (1, 0, 0)], 0.3) == 0

    def test_tangent_segment_counts_zero(self):
        assert spectral_flow([(-1, 0.3, 0), (1, 0.3, 0)], 0.3) == 0

    def test_errors(self):
        with pytest.raises(LocusError, match="endpoint"):
            spectral_flow([(0.3, 0, 0), (PI, 0, 0)], 0.3)
        with pytest.raises(LocusError, match="vertex"):
            spectral_flow([(0, 0, 0), (0.3, 0, 0), (PI, 0, 0)], 0.3)
        with pytest.raises(PerturbationError):
            spectral_flow([(0, 0, 0), (1, 1, 1)], 3.5)
        with pytest.raises(ValueError):
            spectral_flow([(0, 0, 0)], 0.3)
        with pytest.raises(ValueError):
            spectral_flow([(0, 0, 0), (7, 0, 0)], 0.3)

    @settings(max_examples=200, deadline=None)
    @given(st.integers(0, 10**9), st.integers(2, 7), st.floats(0.05, 3.0))
    def test_loops_vanish(self, seed, steps, delta):
        assert spectral_flow(random_loop(random.Random(seed), steps), delta) == 0

    @settings(max_examples=200, deadline=None)
    @given(st.integers(0, 10**9), st.floats(0.05, 3.0))
    def test_additivity(self, seed, delta):
        rng = random.Random(seed)
        a = random_path(rng, (0.5, -0.4, 1.0), rng.randint(1, 4))
        b = random_path(rng, a[-1], rng.randint(1, 4))
        assert spectral_flow(a + b[1:], delta) == spectral_flow(a, delta) + spectral_flow(b, delta)

    @settings(max_examples=200, deadline=None)
    @given(point, st.floats(0.05, 3.0))
    def test_flow_from_center_matches_membership(self, p, delta):
        fp = FlatPoint.make(p)
        side = kernel_locus_membership(fp, delta)
        if side == "on":
            return
        # lift: go from the nearest lattice center in steps shorter than a period
        center = [2 * PI * round(x / (2 * PI)) for x in p]
        start = tuple(c + 1e-3 * delta for c in center)
        sf = spectral_flow([start, tuple(p)], delta)
        assert (sf == 0) == (side == "inside")
        assert sf in (0, 1)


class TestSpinPoints:
    @pytest.mark.parametrize("delta", [0.1, 0.3, 3.0])
    def test_classification(self, delta):
        pts = spin_points(delta)
        assert len(pts) == 8
        assert [p.is_s0 for p in pts].count(True) == 1
        for p in pts:
            assert p.side == ("inside" if p.is_s0 else "outside")
            assert (p.point.beta == (0.0, 0.0, 0.0)) == p.is_s0
            assert all(b in (0.0, PI) for b in p.point.beta)

    def test_bad_delta(self):
        with pytest.raises(PerturbationError):
            spin_points(3.2)


class TestHermitian2:
    def test_examples(self):
        assert hermitian2_stratum(0, 0, 0) == 2
        assert hermitian2_stratum(1, 1, 1) == 1
        assert hermitian2_stratum(1, -1, 0) == 0
        assert hermitian2_stratum(Fraction(1, 2), 2, (1, 0)) == 1
        assert hermitian2_stratum(2, 1, complex(1, 1)) == 1

    @given(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4), st.booleans())
    def test_against_eigenvalues(self, p, q, x, y, on_quadric):
        if on_quadric:
            a, b, z = p * p, q * q, complex(p * q, 0)  # ab = |z|^2
        else:
            a, b, z = p, q, complex(x, y)
        h = np.array([[a, np.conj(z)], [z, b]], dtype=complex)
        zeros = int(np.sum(np.abs(np.linalg.eigvalsh(h)) < 1e-9))
        assert hermitian2_stratum(a, b, (int(z.real), int(z.imag))) == zeros
