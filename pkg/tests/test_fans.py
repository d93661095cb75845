from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from valuix.fans import (
    FanError,
    PLFunction,
    common_refinement,
    dual_complex,
    normal_fan,
    normal_fan_refinement,
    orthant_fan,
    pl_from_region,
    retract_check,
    star_subdivision,
)
from valuix.geometry import region_from_points
from valuix.valuations import (
    MonomialValuation,
    Polynomial,
    ShiftedMonomialValuation,
    TriangularAutomorphism,
    monomial_retraction,
)


class TestFanBasics:
    def test_orthant_fan(self):
        fan = orthant_fan(2)
        assert fan.rays == ((1, 0), (0, 1))
        assert fan.is_smooth()
        assert fan.interior_ray_indices() == []

    def test_find_cone(self):
        fan = orthant_fan(2)
        ci, lam = fan.find_cone((F(2), F(5)))
        assert ci == 0 and lam == (2, 5)
        with pytest.raises(FanError):
            fan.find_cone((-1, 1))

    def test_faces(self):
        fan = orthant_fan(2)
        assert fan.faces() == [(0,), (0, 1), (1,)]


class TestStarSubdivision:
    def test_blowup_of_plane(self):
        fan = star_subdivision(orthant_fan(2), (0, 1), (1, 1))
        assert fan.rays == ((1, 0), (0, 1), (1, 1))
        assert fan.cones == ((0, 2), (1, 2))
        assert fan.is_smooth()
        assert fan.refines(orthant_fan(2))
        assert not orthant_fan(2).refines(fan)

    def test_non_smooth_subdivision(self):
        fan = star_subdivision(orthant_fan(2), (0, 1), (1, 2))
        assert not fan.is_smooth()

    def test_rejects_existing_ray(self):
        with pytest.raises(FanError):
            star_subdivision(orthant_fan(2), (0, 1), (2, 0))

    def test_rejects_exterior_ray(self):
        fan = star_subdivision(orthant_fan(2), (0, 1), (1, 1))
        with pytest.raises(FanError):
            # (3, 1) is not interior to the cone spanned by (0,1), (1,1)
            star_subdivision(fan, (1, 2), (3, 1))


class TestNormalFans:
    def test_simplex(self):
        fan = normal_fan(region_from_points([(1, 0), (0, 1)]))
        assert set(fan.rays) == {(1, 0), (0, 1), (1, 1)}
        assert len(fan.cones) == 2

    def test_staircase(self):
        fan = normal_fan(region_from_points([(2, 0), (1, 1), (0, 3)]))
        assert set(fan.rays) == {(1, 0), (0, 1), (1, 1), (2, 1)}
        assert len(fan.cones) == 3

    def test_common_refinement_refines_both(self):
        f1 = normal_fan(region_from_points([(2, 0), (1, 1), (0, 3)]))
        f2 = normal_fan(region_from_points([(1, 0), (0, 2)]))
        ref = common_refinement(f1, f2)
        assert ref.refines(f1) and ref.refines(f2)

    def test_refinement_makes_support_linear(self):
        regions = [
            region_from_points([(2, 0), (1, 1), (0, 3)]),
            region_from_points([(1, 0), (0, 2)]),
        ]
        fan = normal_fan_refinement(regions)
        for region in regions:
            pl = pl_from_region(region, fan)
            for cone in fan.cones:
                mid = tuple(
                    sum(F(r[i]) for r in fan.ray_matrix(cone)) for i in range(2)
                )
                assert pl.evaluate(mid) == -region.support_value(mid)


class TestPLAndNef:
    def test_region_functions_are_nef(self):
        region = region_from_points([(2, 0), (1, 1), (0, 3)])
        fan = normal_fan(region)
        assert pl_from_region(region, fan).is_nef()

    def test_positive_value_is_not_nef(self):
        fan = orthant_fan(2)
        assert not PLFunction(fan, (1, 0)).is_nef()

    def test_non_convex_is_not_nef(self):
        fan = star_subdivision(orthant_fan(2), (0, 1), (1, 1))
        # value at the interior ray above the linear interpolation: not convex
        assert not PLFunction(fan, (-2, -2, -1)).is_nef()
        assert PLFunction(fan, (-2, -2, -4)).is_nef()

    def test_evaluate_matches_support(self):
        region = region_from_points([(3, 0), (0, 2)])
        fan = normal_fan(region)
        pl = pl_from_region(region, fan)
        for w in [(1, 1), (F(5), F(1)), (F(2), F(7))]:
            assert pl.evaluate(w) == -region.support_value(w)


class TestDualComplex:
    def test_vertices_are_interior_rays(self):
        fan = star_subdivision(orthant_fan(2), (0, 1), (2, 3))
        dc = dual_complex(fan)
        assert [fan.rays[i] for i in dc.vertices] == [(2, 3)]
        assert dc.b_values == (2,)

    def test_normalized_valuation(self):
        fan = star_subdivision(orthant_fan(2), (0, 1), (2, 3))
        dc = dual_complex(fan)
        nu = dc.normalized_valuation(dc.vertices[0])
        assert nu.weights == (1, F(3, 2))

    def test_edge_chart(self):
        fan = star_subdivision(orthant_fan(2), (0, 1), (1, 1))
        fan = star_subdivision(fan, (0, 2), (2, 1))
        dc = dual_complex(fan)
        edge = next(f for f in dc.faces if len(f) == 2)
        rays = [fan.rays[i] for i in edge]
        assert set(rays) == {(1, 1), (2, 1)}
        # endpoints of the edge get chart coordinates 0 and 1
        t0 = dc.chart_coordinates(edge, rays[0])
        t1 = dc.chart_coordinates(edge, rays[1])
        assert sorted([t0, t1]) == [(0, 1), (1, 0)]
        mid = tuple(a + b for a, b in zip(*rays))
        tm = dc.chart_coordinates(edge, mid)
        assert sum(tm) == 1 and all(x > 0 for x in tm)


class TestRetraction:
    def fan_tower(self):
        fan = star_subdivision(orthant_fan(2), (0, 1), (1, 1))
        fan = star_subdivision(fan, (0, 2), (2, 1))
        fan = star_subdivision(fan, (1, 2), (1, 2))
        return fan

    def test_monomial_fixed_points(self):
        fan = self.fan_tower()
        for w in [(1, 1), (F(3, 2), F(1)), (F(1), F(5))]:
            nu = MonomialValuation(w)
            assert retract_check(nu, fan).weights == nu.weights

    def test_shifted_valuations_agree_with_retraction(self):
        fan = self.fan_tower()
        change = TriangularAutomorphism.make(
            2, {1: Polynomial.make(2, {(2, 0): 1})}
        )
        for w in [(F(1), F(3)), (F(1), F(1)), (F(2), F(5))]:
            nu = ShiftedMonomialValuation(change, w)
            assert retract_check(nu, fan) == monomial_retraction(nu)


weight_pairs = st.tuples(st.integers(1, 9), st.integers(1, 9))


@settings(max_examples=50, deadline=None)
@given(weight_pairs)
def test_retraction_through_random_tower(w):
    fan = star_subdivision(orthant_fan(2), (0, 1), (1, 1))
    fan = star_subdivision(fan, (0, 2), (3, 1))
    nu = MonomialValuation((F(w[0]), F(w[1])))
    assert retract_check(nu, fan).weights == nu.weights


@settings(max_examples=40, deadline=None)
@given(
    st.sets(
        st.tuples(st.integers(0, 4), st.integers(0, 4)).filter(lambda e: e != (0, 0)),
        min_size=1,
        max_size=4,
    )
)
def test_region_pl_is_always_nef(gens):
    region = region_from_points(gens)
    fan = normal_fan(region)
    assert pl_from_region(region, fan).is_nef()
