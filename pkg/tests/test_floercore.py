import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spectral_floer.algebra import CupForm, GradedUModule, GradedVectorSpace, contraction_matrix, parse_cup
from spectral_floer.algebra import linalg
from spectral_floer.floercore import (
    ConsistencyError,
    DatumError,
    FiltrationDatum,
    SimplestTypeDatum,
    e1_page,
    hm_bar,
    normalize_grading,
    palindrome_check,
    palindrome_sequence,
    simplest_hm,
    split_les,
)
from spectral_floer.productgeom import t3_flat_datum, theta_datum

T3 = CupForm(3, (((1, 2, 3), 1),))
PRESETS = {"t3": t3_flat_datum, "bolza": lambda: theta_datum(2), "klein": lambda: theta_datum(3)}


def test_hm_bar_examples():
    assert hm_bar(T3).sequence(0, 3) == (0, 3, 3, 0)
    assert hm_bar(parse_cup("1,2,3:1;1,4,5:1", 5)).sequence(0, 5) == (0, 1, 9, 9, 1, 0)
    assert hm_bar(CupForm(3)).sequence(0, 3) == (1, 3, 3, 1)


class TestSplitLes:
    def test_genus2(self):
        s = split_les(theta_datum(2))
        assert s.i_minus.sequence(0, 5) == (1, 4, 1, 0, 0, 0)
        assert s.i_plus.sequence(0, 5) == (0, 1, 9, 10, 5, 1)
        assert s.e.total == 0

    def test_genus3(self):
        s = split_les(theta_datum(3))
        assert s.i_minus.sequence(0, 7) == (1, 6, 15, 6, 1, 0, 0, 0)
        assert s.i_plus.sequence(0, 7) == (0, 1, 6, 29, 34, 21, 7, 1)
        assert s.e.ranks == ((3, 1),)

    def test_flat_t3(self):
        s = split_les(t3_flat_datum())
        assert s.i_minus.sequence(0, 3) == (1, 0, 0, 0)
        assert s.i_plus.sequence(0, 3) == (0, 3, 3, 1)
        assert s.e.total == 0

    @pytest.mark.parametrize("name", PRESETS)
    def test_exactness(self, name):
        d = PRESETS[name]()
        s = split_les(d)
        for k in range(d.b1 + 1):
            assert s.i_plus.rank(k) + s.i_minus.rank(k) == comb(d.b1, k)
            inc = d.inclusion_at(k - 1)
            kernel = d.h_minus.rank(k - 1) - (linalg.rank(inc) if inc else 0)
            assert s.e.rank(k) == kernel

    def test_witness_maps(self):
        d = theta_datum(3)
        s = split_les(d)
        for k, f in s.induced.items():
            lifts = linalg.columns_to_matrix(s.complement_basis[k], comb(d.b1, k))
            target = linalg.columns_to_matrix(s.i_minus_basis[k - 3], comb(d.b1, k - 3))
            lhs = linalg.matmul(contraction_matrix(d.cup, k), lifts, inner=comb(d.b1, k), ncols=len(lifts[0]) if lifts else 0)
            rhs = linalg.matmul(target, f, inner=len(s.i_minus_basis[k - 3]), ncols=len(lifts[0]) if lifts else 0)
            assert lhs == rhs

    def test_shape_mismatch(self):
        with pytest.raises(DatumError):
            SimplestTypeDatum(3, T3, GradedVectorSpace.from_sequence([1]), {0: [[1], [0]]})
        with pytest.raises(DatumError):
            SimplestTypeDatum(3, T3, GradedVectorSpace.from_sequence([1, 1]), {0: [[1]]})
        with pytest.raises(DatumError):
            SimplestTypeDatum(5, T3, GradedVectorSpace.from_sequence([1]), {0: [[1]]})


class TestSimplest:
    def test_flat_t3_relative(self):
        r = simplest_hm(t3_flat_datum())
        assert r.tower_part.tower_profile() == [(0, 3), (-1, 3)]
        assert r.reduced.is_zero
        assert r.total == r.tower_part

    def test_bolza_absolute(self):
        r = simplest_hm(theta_datum(2), "paper_absolute")
        assert r.tower_part.tower_profile() == [(-1, 1), (-2, 9), (-3, 9), (-4, 1)]
        assert r.reduced.is_zero

    def test_klein_absolute(self):
        r = simplest_hm(theta_datum(3), "paper_absolute")
        assert r.tower_part.tower_profile() == [(-1, 1), (-2, 6), (-3, 28), (-4, 28), (-5, 6), (-6, 1)]
        assert r.reduced == GradedUModule((), ((-4, 1),))
        assert r.total == r.tower_part + r.reduced

    @pytest.mark.parametrize("name", PRESETS)
    def test_tower_count_equals_hm_bar(self, name):
        d = PRESETS[name]()
        assert simplest_hm(d).tower_part.tower_count == hm_bar(d.cup).total

    @pytest.mark.parametrize("name", PRESETS)
    def test_gate_holds_on_presets(self, name):
        d = PRESETS[name]()
        for k, inc in d.inclusion.items():
            if k >= 3:
                assert linalg.is_zero(linalg.matmul(contraction_matrix(d.cup, k), inc))

    def test_t3_profile_collapses_hm_bar(self):
        r = simplest_hm(t3_flat_datum())
        assert [m for _, m in r.tower_part.tower_profile()] == [3, 3]
        assert [x for x in hm_bar(T3).sequence(0, 3) if x] == [3, 3]

    def test_gate_rejects_unkilled_class(self):
        # point class sent to the top class, which the contraction does not kill
        d = SimplestTypeDatum(3, T3, GradedVectorSpace(((3, 1),)), {3: [[1]]})
        with pytest.raises(ConsistencyError, match="not simplest-type-consistent"):
            simplest_hm(d)

    def test_gate_rejects_image_outside_i_minus(self):
        d = SimplestTypeDatum(3, T3, GradedVectorSpace(), {})
        with pytest.raises(ConsistencyError, match="not simplest-type-consistent"):
            simplest_hm(d)


def _random_consistent_datum(rng: random.Random) -> SimplestTypeDatum:
    """I-_m = im(contraction into degree m) + random kernel vectors; extra dependent columns give E."""
    b1 = rng.randint(3, 6)
    from itertools import combinations

    terms = [(t, rng.choice([-1, 1, 2])) for t in combinations(range(1, b1 + 1), 3) if rng.random() < 0.4]
    cup = CupForm(b1, tuple(terms))
    ranks, inc = {}, {}
    for m in range(b1 + 1):
        dim = comb(b1, m)
        cols = []
        if m + 3 <= b1:
            up = contraction_matrix(cup, m + 3)
            cols += linalg.column_basis(up, dim) if up and up[0] else []
        ker = linalg.nullspace(contraction_matrix(cup, m), dim) if m >= 3 else [
            [Fraction(int(i == j)) for i in range(dim)] for j in range(dim)
        ]
        cols += [v for v in ker if rng.random() < 0.3]
        if cols and rng.random() < 0.5:
            a, b = rng.choice(cols), rng.choice(cols)
            cols.append([x + 2 * y for x, y in zip(a, b)])
        if cols:
            ranks[m] = len(cols)
            inc[m] = linalg.columns_to_matrix(cols, dim)
    return SimplestTypeDatum(b1, cup, GradedVectorSpace.from_mapping(ranks), inc, "random")


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_random_consistent_data(seed):
    d = _random_consistent_datum(random.Random(seed))
    s = split_les(d)
    r = simplest_hm(d)
    assert r.tower_part.tower_count == hm_bar(d.cup).total
    assert len(r.reduced.torsion) == s.e.total
    for k in range(d.b1 + 1):
        assert s.i_plus.rank(k) + s.i_minus.rank(k) == comb(d.b1, k)


class TestE1:
    def test_simplest_type_example(self):
        levels = [GradedVectorSpace.from_sequence([1, 4, 1]), GradedVectorSpace.from_sequence([0, 1, 6, 10, 5, 1])]
        got = e1_page(FiltrationDatum(tuple(levels)))
        want = [0] + [1] * 4 + [2] + [-1] + [0] * 6 + [1] * 10 + [2] * 5 + [3]
        assert got == GradedUModule(tuple(want))

    def test_single_level(self):
        h = GradedVectorSpace.from_sequence([1, 3, 3, 1])
        assert e1_page([h]).tower_profile() == [(3, 1), (2, 3), (1, 3), (0, 1)]

    def test_point_at_bottom(self):
        assert e1_page([GradedVectorSpace.from_sequence([1]), GradedVectorSpace()]) == GradedUModule((0,))

    @given(st.lists(st.lists(st.integers(0, 5), max_size=5), min_size=1, max_size=4))
    def test_tower_count(self, levels):
        spaces = [GradedVectorSpace.from_sequence(l) for l in levels]
        assert e1_page(spaces).tower_count == sum(s.total for s in spaces)

    def test_empty_filtration(self):
        with pytest.raises(ValueError):
            FiltrationDatum(())


class TestNormalize:
    def test_relative_and_absolute(self):
        towers, reduced = GradedUModule((4, 3, 3)), GradedUModule((), ((1, 1),))
        t, r = normalize_grading(towers, reduced, "relative")
        assert max(t.towers) == 0 and r.torsion == ((-3, 1),)
        t, r = normalize_grading(towers, reduced, "paper_absolute")
        assert max(t.towers) == -1 and r.torsion == ((-4, 1),)

    def test_flat_t3_relative(self):
        r = simplest_hm(t3_flat_datum(), "relative")
        assert sorted(set(r.tower_part.towers)) == [-1, 0]

    def test_absolute_needs_towers(self):
        with pytest.raises(ValueError):
            normalize_grading(GradedUModule(), GradedUModule(), "paper_absolute")


class TestPalindrome:
    @pytest.mark.parametrize("seq, want", [((1, 9, 9, 1), True), ((1, 6, 28, 28, 6, 1), True), ((1, 2), False)])
    def test_sequences(self, seq, want):
        assert palindrome_sequence(seq) is want
        towers = tuple(-i for i, m in enumerate(seq) for _ in range(m))
        assert palindrome_check(GradedUModule(towers)) is want

    def test_gap_counts_as_zero(self):
        assert not palindrome_check(GradedUModule((0, -2, -3)))

    @pytest.mark.parametrize("name", PRESETS)
    def test_presets_palindromic(self, name):
        assert palindrome_check(simplest_hm(PRESETS[name]()).tower_part)
