from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from valuix.divisors import MonomialIdeal, PshGerm, divisor_of, maximal_ideal
from valuix.fans import normal_fan_refinement, pl_from_region
from valuix.geometry import NonPrimaryError, region_from_points, simplex_region
from valuix.intersection import (
    extremal_weight_region,
    generalized_lelong,
    intersection,
    mixed_multiplicity,
    mixed_multiplicity_ie,
    monge_ampere,
    multiplicity,
    pairing,
    relative_type,
    theoremA_check,
)
from valuix.multiplier import nef_envelope
from valuix.valuations import MonomialValuation


def ideal2(*gens):
    return MonomialIdeal.make(2, gens)


def region2(*pts):
    return region_from_points(pts)


R23 = region2((2, 0), (0, 3))
RM = simplex_region(2)


class TestMultiplicity:
    def test_examples(self):
        assert multiplicity(RM) == 1
        assert multiplicity(R23) == 6
        assert multiplicity(region2((2, 0), (1, 1), (0, 3))) == 5
        assert multiplicity(simplex_region(3)) == 1
        assert multiplicity(simplex_region(3, 2)) == 8

    def test_non_primary_raises(self):
        with pytest.raises(NonPrimaryError):
            multiplicity(region2((1, 1)))


class TestMixedMultiplicity:
    def test_diagonal_is_multiplicity(self):
        for r in (RM, R23, region2((3, 0), (1, 1), (0, 4))):
            assert mixed_multiplicity(r, r) == multiplicity(r)

    def test_examples(self):
        assert mixed_multiplicity(RM, R23) == 2
        assert mixed_multiplicity(RM, region2((5, 0), (0, 2))) == 2
        m3 = simplex_region(3)
        assert mixed_multiplicity(m3, m3, simplex_region(3, 2)) == 2

    def test_symmetry(self):
        a, b = R23, region2((1, 0), (0, 4))
        assert mixed_multiplicity(a, b) == mixed_multiplicity(b, a)

    def test_matches_inclusion_exclusion(self):
        triples = [
            (RM, RM), (RM, R23), (R23, R23),
            (region2((3, 0), (1, 1), (0, 2)), region2((1, 0), (0, 5))),
        ]
        for pair in triples:
            assert mixed_multiplicity(*pair) == mixed_multiplicity_ie(*pair)

    def test_monotone(self):
        # smaller regions (deeper singularities) pair to larger numbers
        small, big = R23, RM
        assert big.contains_region(small)
        assert mixed_multiplicity(small, R23) >= mixed_multiplicity(big, R23)

    def test_scaling(self):
        assert mixed_multiplicity(RM.scale(3), R23) == 3 * mixed_multiplicity(RM, R23)

    def test_intersection_sign(self):
        assert intersection([RM, R23]).value == -2

    def test_accepts_divisors_and_pl(self):
        g = divisor_of(ideal2((2, 0), (0, 3)))
        fan = normal_fan_refinement([R23])
        pl = pl_from_region(R23, fan)
        assert mixed_multiplicity(g, pl) == 6


class TestPairing:
    def test_primary_case_delegates(self):
        assert pairing(R23, [RM]) == mixed_multiplicity(R23, RM)

    def test_non_primary_first(self):
        # curve germ x = 0 against the maximal-ideal class
        curve = region2((1, 0))
        assert pairing(curve, [RM]) == 1
        assert pairing(region2((0, 3)), [RM]) == 3
        assert pairing(region2((1, 1)), [RM]) == 2

    def test_rejects_non_primary_partner(self):
        with pytest.raises(NonPrimaryError):
            pairing(RM, [region2((1, 0))])


class TestMongeAmpere:
    def test_maximal_ideal(self):
        mu = monge_ampere([RM])
        assert len(mu.atoms) == 1
        nu, mass = mu.atoms[0]
        assert nu.weights == (1, 1) and mass == 1

    def test_staircase_two_atoms(self):
        region = region2((2, 0), (1, 1), (0, 3))
        mu = monge_ampere([region])
        atoms = {nu.weights: m for nu, m in mu.atoms}
        assert atoms == {(F(1), F(1)): 1, (F(2), F(1)): 1}

    def test_non_smooth_vertex_mass(self):
        mu = monge_ampere([R23])
        atoms = {nu.weights: m for nu, m in mu.atoms}
        assert atoms == {(F(3, 2), F(1)): 2}

    def test_total_mass_identity(self):
        # integral of -g against MA(g) equals the multiplicity
        for region in (RM, R23, region2((3, 0), (1, 1), (0, 4))):
            mu = monge_ampere([region])
            g = divisor_of(MonomialIdeal.make(2, [tuple(int(x) for x in p) for p in region.generators]))
            assert -mu.integrate(g) == multiplicity(region)

    def test_mixed_identity(self):
        mu = monge_ampere([R23])
        for q in (RM, region2((1, 0), (0, 2)), region2((4, 0), (0, 1))):
            from valuix.divisors import FormalPshToric

            assert -mu.integrate(FormalPshToric(q)) == mixed_multiplicity(q, R23)

    def test_3d(self):
        m3 = simplex_region(3)
        mu = monge_ampere([m3, m3])
        assert len(mu.atoms) == 1
        nu, mass = mu.atoms[0]
        assert nu.weights == (1, 1, 1) and mass == 1


class TestExtremalRegions:
    def test_vertices(self):
        g = extremal_weight_region((F(3, 2), F(1)))
        assert g.region == region2((F(2, 3), 0), (0, 1))
        assert g.value((F(3, 2), F(1))) == -1

    def test_maximality(self):
        # any competing region with value -1 at w sits inside the extremal one
        w = (F(2), F(1))
        ext = extremal_weight_region(w)
        rival = region2((F(1, 2), 0), (0, 1))
        assert -rival.support_value(w) == -1
        assert ext.region.contains_region(rival)

    def test_requires_normalized(self):
        with pytest.raises(ValueError):
            extremal_weight_region((F(2), F(3)))


class TestLelongAndTypes:
    def test_generalized_lelong(self):
        u = PshGerm.log_ideal(ideal2((2, 0), (0, 3)))
        phi = PshGerm.log_ideal(maximal_ideal(2))
        assert generalized_lelong(u, phi) == 2
        assert generalized_lelong(phi, u) == 2
        assert generalized_lelong(u, u) == 6

    def test_lelong_on_curve_germ(self):
        u = PshGerm.log_ideal(ideal2((0, 1)))
        phi = PshGerm.log_ideal(maximal_ideal(2))
        assert generalized_lelong(u, phi) == 1

    def test_relative_type(self):
        u = PshGerm.log_ideal(ideal2((2, 0), (0, 3)))
        assert relative_type(u, (1, 1)) == 2
        assert relative_type(u, (F(3, 2), F(1))) == 3
        with pytest.raises(ValueError):
            relative_type(u, (F(2), F(3)))


class TestTheoremA:
    def test_same_germ(self):
        u = PshGerm.log_ideal(ideal2((2, 0), (0, 3)))
        phis = [PshGerm.log_ideal(maximal_ideal(2)), PshGerm.log_ideal(ideal2((1, 0), (0, 2)))]
        out = theoremA_check(u, u, [(1, 1), (F(3, 2), F(1))], phis)
        assert all(out.values())

    def test_same_closure_different_presentation(self):
        # (x^2, y^3) versus (x^2, xy^2, y^3): same integral closure
        u = PshGerm.log_ideal(ideal2((2, 0), (0, 3)))
        v = PshGerm.log_ideal(ideal2((2, 0), (1, 2), (0, 3)))
        out = theoremA_check(
            u, v, [(1, 1), (F(2), F(1)), (F(1), F(3))],
            [PshGerm.log_ideal(maximal_ideal(2))],
        )
        assert all(out.values())

    def test_extra_generator_changes_the_germ(self):
        # xy lies outside the region of (x^2, y^3), so the germs differ;
        # the weight (3/2, 1) separates them
        u = PshGerm.log_ideal(ideal2((2, 0), (0, 3)))
        v = PshGerm.log_ideal(ideal2((2, 0), (1, 1), (0, 3)))
        out = theoremA_check(
            u, v, [(F(3, 2), F(1))],
            [PshGerm.log_ideal(maximal_ideal(2))],
        )
        assert not out["regions_equal"]
        assert not out["relative_types_equal"]
        assert out["consistent"]

    def test_distinct_germs(self):
        u = PshGerm.log_ideal(ideal2((2, 0), (0, 3)))
        v = PshGerm.log_ideal(ideal2((3, 0), (0, 2)))
        out = theoremA_check(
            u, v, [(F(3, 2), F(1)), (F(1), F(3, 2))],
            [PshGerm.log_ideal(maximal_ideal(2))],
        )
        assert not out["regions_equal"]
        assert not out["relative_types_equal"]
        assert out["consistent"]

    def test_lelong_equality_does_not_imply_region_equality(self):
        # germs of x=0 with multiplicity 3 versus y=0 with multiplicity 3
        u = PshGerm.log_ideal(ideal2((3, 0)))
        v = PshGerm.log_ideal(ideal2((0, 3)))
        out = theoremA_check(u, v, [(F(1), F(2))], [PshGerm.log_ideal(maximal_ideal(2))])
        assert out["lelong_numbers_equal"]
        assert not out["regions_equal"]
        assert out["consistent"]


exps = st.tuples(st.integers(0, 4), st.integers(0, 4)).filter(lambda e: e != (0, 0))
primary = st.sets(exps, min_size=1, max_size=3).map(
    lambda s: region_from_points(list(s) + [(5, 0), (0, 5)])
)


@settings(max_examples=30, deadline=None)
@given(primary, primary)
def test_mixed_agrees_with_inclusion_exclusion(a, b):
    assert mixed_multiplicity(a, b) == mixed_multiplicity_ie(a, b)


@settings(max_examples=30, deadline=None)
@given(primary, primary)
def test_minkowski_superadditivity(a, b):
    # e(P+Q, R) = e(P, R) + e(Q, R): mixed multiplicities are Minkowski linear
    r = RM
    lhs = mixed_multiplicity(a.minkowski_sum(b), r)
    assert lhs == mixed_multiplicity(a, r) + mixed_multiplicity(b, r)


@settings(max_examples=15, deadline=None)
@given(primary)
def test_ma_mass_reproduces_multiplicity(a):
    mu = monge_ampere([a])
    from valuix.divisors import FormalPshToric

    assert -mu.integrate(FormalPshToric(a)) == multiplicity(a)
    assert all(m > 0 for _, m in mu.atoms)
