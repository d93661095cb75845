from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from valuix.divisors import MonomialIdeal, divisor_of, divisor_sum, maximal_ideal, zero_divisor
from valuix.fans import PLFunction, normal_fan, orthant_fan, pl_from_region, star_subdivision
from valuix.geometry import region_from_points
from valuix.multiplier import (
    approx_check,
    els_approx_check,
    jumping_ladder,
    l2_ideal,
    lct,
    linf_ideal,
    nef_envelope,
    subadditivity_check,
    tameness_constant,
)


def ideal2(*gens):
    return MonomialIdeal.make(2, gens)


G23 = divisor_of(ideal2((2, 0), (0, 3)))


class TestMultiplierIdeals:
    def test_unit_below_lct(self):
        assert l2_ideal(G23) == maximal_ideal(2)
        assert l2_ideal(G23.scale(F(4, 5))).is_unit
        # the ideal jumps exactly at the threshold
        assert not l2_ideal(G23.scale(F(5, 6))).is_unit

    def test_double_of_maximal_ideal(self):
        m = maximal_ideal(2)
        assert l2_ideal(divisor_of(m).scale(2)) == m

    def test_known_values(self):
        assert l2_ideal(G23.scale(2)) == ideal2((3, 0), (2, 1), (1, 3), (0, 4))
        assert l2_ideal(divisor_of(maximal_ideal(3)).scale(3)) == maximal_ideal(3)

    def test_linf(self):
        assert linf_ideal(G23) == ideal2((2, 0), (1, 2), (0, 3))
        assert linf_ideal(zero_divisor(2)).is_unit

    def test_linf_contained_in_l2(self):
        for g in (G23, G23.scale(F(7, 2)), divisor_of(maximal_ideal(2))):
            assert l2_ideal(g).contains_ideal(linf_ideal(g))

    def test_monotone(self):
        g1 = divisor_of(ideal2((3, 0), (0, 4)))
        g2 = divisor_of(ideal2((1, 0), (0, 2)))
        assert g1 <= g2
        assert l2_ideal(g2).contains_ideal(l2_ideal(g1))


class TestLct:
    def test_examples(self):
        assert lct(divisor_of(maximal_ideal(2))) == 2
        assert lct(G23) == F(5, 6)
        assert lct(divisor_of(ideal2((2, 0), (0, 2)))) == 1
        assert lct(divisor_of(maximal_ideal(3))) == 3

    def test_scaling(self):
        assert lct(G23.scale(2)) == F(5, 12)

    def test_non_primary(self):
        # monomial curve x*y: lct is 1
        assert lct(divisor_of(ideal2((1, 1)))) == 1

    def test_zero_raises(self):
        with pytest.raises(ValueError):
            lct(zero_divisor(2))

    def test_lct_is_first_jump(self):
        for g in (G23, divisor_of(maximal_ideal(2)), divisor_of(ideal2((4, 0), (1, 1), (0, 3)))):
            ladder = jumping_ladder(g)
            assert ladder.thresholds[0] == lct(g)


class TestJumpingLadder:
    def test_maximal_ideal(self):
        ladder = jumping_ladder(divisor_of(maximal_ideal(2)), c_max=4)
        assert ladder.thresholds == (2, 3, 4)
        assert ladder.ideals[0] == maximal_ideal(2)
        assert ladder.ideals[1] == ideal2((2, 0), (1, 1), (0, 2))

    def test_staircase_example(self):
        ladder = jumping_ladder(G23, c_max=1)
        assert ladder.thresholds == (F(5, 6),)
        assert ladder.ideals[0] == maximal_ideal(2)

    def test_ladder_decreases(self):
        ladder = jumping_ladder(G23)
        for prev, cur in zip(ladder.ideals, ladder.ideals[1:]):
            assert prev.contains_ideal(cur) and prev != cur

    def test_constant_between_jumps(self):
        ladder = jumping_ladder(G23, c_max=2)
        for t, ideal in zip(ladder.thresholds, ladder.ideals):
            assert l2_ideal(G23.scale(t)) == ideal
            probe = t + F(1, 100)
            if probe < 2:
                assert l2_ideal(G23.scale(probe)) == ideal


class TestNefEnvelope:
    def test_idempotent_on_region_functions(self):
        region = region_from_points([(2, 0), (1, 1), (0, 3)])
        fan = normal_fan(region)
        assert nef_envelope(pl_from_region(region, fan)).region == region

    def test_non_convex_input(self):
        fan = star_subdivision(orthant_fan(2), (0, 1), (1, 1))
        h = PLFunction(fan, (-2, -2, -1))
        assert not h.is_nef()
        env = nef_envelope(h)
        # dominated by h on every ray, and as large as possible
        for ray, val in zip(fan.rays, h.values):
            assert env.value(ray) <= val
        assert env.region == region_from_points([(2, 2)])

    def test_envelope_monotone(self):
        fan = star_subdivision(orthant_fan(2), (0, 1), (1, 1))
        e1 = nef_envelope(PLFunction(fan, (-2, -2, -4)))
        e2 = nef_envelope(PLFunction(fan, (-1, -1, -2)))
        assert e1 <= e2

    def test_rejects_positive_values(self):
        with pytest.raises(ValueError):
            nef_envelope(PLFunction(orthant_fan(2), (1, -1)))


class TestApproximation:
    WEIGHTS = [(1, 1), (F(3, 2), F(1)), (F(1), F(4)), (F(5, 2), F(7, 3))]

    def test_sandwich_holds(self):
        for k in (1, 2, 5, 12):
            for rec in approx_check(G23, k, self.WEIGHTS):
                assert rec["ok"]
                assert rec["lower"] <= rec["value"] <= rec["upper"]
                assert rec["upper"] - rec["lower"] == sum(rec["weights"])

    def test_normalized_values_decrease(self):
        # u_k = -nu(L2(2^k g))/2^k decreases pointwise toward g
        w = (F(3, 2), F(1))
        g = divisor_of(ideal2((3, 0), (1, 1), (0, 4)))
        values = []
        for k in range(6):
            rec = approx_check(g, 2**k, [w])[0]
            values.append(rec["value"] / 2**k)
            assert rec["value"] / 2**k + g.region.support_value(w) <= sum(w) / 2**k
        for prev, cur in zip(values, values[1:]):
            assert cur <= prev

    def test_rejects_bad_k(self):
        with pytest.raises(ValueError):
            approx_check(G23, 0, [(1, 1)])


class TestTamenessAndEnvelopes:
    def test_a_priori_bound(self):
        report = tameness_constant(divisor_of(maximal_ideal(2)))
        assert report.a_priori == 2
        assert report.empirical <= report.a_priori

    def test_staircase(self):
        report = tameness_constant(G23)
        assert report.a_priori == F(5, 6)
        assert report.empirical <= report.a_priori

    def test_els_checks(self):
        for g in (G23, divisor_of(maximal_ideal(2)), divisor_of(ideal2((4, 0), (1, 2), (0, 3)))):
            c = tameness_constant(g, k_range=()).a_priori
            out = els_approx_check(g, int(c) + 3)
            assert out["ok"], out

    def test_els_rejects_small_k(self):
        with pytest.raises(ValueError):
            els_approx_check(divisor_of(maximal_ideal(2)), 1)


exps = st.tuples(st.integers(0, 5), st.integers(0, 5)).filter(lambda e: e != (0, 0))
ideals = st.sets(exps, min_size=1, max_size=4).map(lambda s: MonomialIdeal.make(2, s))


@settings(max_examples=40, deadline=None)
@given(ideals, ideals)
def test_subadditivity_property(a, b):
    assert subadditivity_check(divisor_of(a), divisor_of(b))


@settings(max_examples=40, deadline=None)
@given(ideals)
def test_l2_of_region_function_contains_ideal(a):
    # the ideal itself always sits inside its own multiplier ideal
    assert l2_ideal(divisor_of(a)).contains_ideal(a)


@settings(max_examples=40, deadline=None)
@given(ideals, st.integers(1, 6))
def test_skoda_periodicity(a, k):
    # L2((k+n)g) = a^k * L2(n*g) for primary a with n = dim; weaker
    # containment L2((k+1)g) inside a*L2(k*g) checked for everything
    g = divisor_of(a)
    lhs = l2_ideal(g.scale(k + 1))
    rhs = a.product(l2_ideal(g.scale(k)))
    assert rhs.contains_ideal(lhs)
