"""Seeded property-check suites.

Each suite draws deterministic pseudo-random instances, verifies the
corresponding exact identity or inequality on every one of them, and
returns a JSON-friendly report with witnesses for any failure.  Suites:
approx, subadditivity, els, izumi, homotopy, ma-identity, theoremA.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from valuix.divisors import (
    FormalPshToric,
    MonomialIdeal,
    PshGerm,
    divisor_sum,
    kiselman_number,
    maximal_ideal,
)
from valuix.fans import Fan, PLFunction, orthant_fan, star_subdivision
from valuix.geometry import NewtonRegion, dot, region_from_points, simplex_region
from valuix.intersection import (
    generalized_lelong,
    mixed_multiplicity,
    monge_ampere,
    pairing,
    relative_type,
    theoremA_check,
)
from valuix.multiplier import (
    approx_check,
    els_level_check,
    els_stabilization,
    l2_ideal,
    nef_envelope,
    subadditivity_check,
    tameness_constant,
)
from valuix.oracle import generic_colength
from valuix.valuations import (
    MonomialValuation,
    Polynomial,
    ShiftedMonomialValuation,
    TriangularAutomorphism,
    homotopy_eval,
    homotopy_stabilization_threshold,
    monomial_retraction,
)

SUITE_NAMES = (
    "approx",
    "subadditivity",
    "els",
    "izumi",
    "homotopy",
    "ma-identity",
    "theoremA",
)


# -- random instance generators ---------------------------------------------

def random_primary_ideal(rng, n, max_exp, extra=2) -> MonomialIdeal:
    gens = []
    for i in range(n):
        e = [0] * n
        e[i] = rng.randrange(1, max_exp + 1)
        gens.append(tuple(e))
    for _ in range(rng.randrange(0, extra + 1)):
        g = tuple(rng.randrange(0, max_exp + 1) for _ in range(n))
        if any(g):
            gens.append(g)
    return MonomialIdeal.make(n, gens)


def random_ideal(rng, n, max_exp) -> MonomialIdeal:
    """Possibly non-primary, never the unit ideal."""
    gens = []
    for _ in range(rng.randrange(1, 4)):
        g = tuple(rng.randrange(0, max_exp + 1) for _ in range(n))
        if any(g):
            gens.append(g)
    if not gens:
        return maximal_ideal(n)
    return MonomialIdeal.make(n, gens)


def random_divisor(rng, n, max_exp) -> FormalPshToric:
    scale = rng.choice([Fraction(1), Fraction(1), Fraction(1, 2), Fraction(3, 2), Fraction(2)])
    return FormalPshToric(random_primary_ideal(rng, n, max_exp).region().scale(scale))


def random_normalized_weights(rng, n):
    den = rng.choice([1, 2, 3])
    w = [Fraction(rng.randrange(den, 4 * den + 1), den) for _ in range(n)]
    w[rng.randrange(n)] = Fraction(1)
    return tuple(w)


def random_germ(rng, n, max_exp, primary=False) -> PshGerm:
    terms = []
    for _ in range(rng.randrange(1, 3)):
        c = rng.choice([Fraction(1), Fraction(1, 2), Fraction(3, 2), Fraction(2)])
        maker = random_primary_ideal if primary else random_ideal
        terms.append((c, maker(rng, n, max_exp)))
    if primary:
        terms = [terms[0]]
    return PshGerm.make(terms)


def random_fan(rng, n, steps=2) -> Fan:
    fan = orthant_fan(n)
    for _ in range(steps):
        cone = rng.choice(fan.cones)
        center = [0] * n
        for r in fan.ray_matrix(cone):
            c = rng.randrange(1, 3)
            center = [a + c * b for a, b in zip(center, r)]
        try:
            fan = star_subdivision(fan, cone, center)
        except ValueError:
            continue
    return fan


def random_polynomial(rng, n, max_exp=3, max_terms=3) -> Polynomial:
    while True:
        coeffs = {
            tuple(rng.randrange(0, max_exp + 1) for _ in range(n)): rng.choice(
                [-3, -2, -1, 1, 2, 3]
            )
            for _ in range(rng.randrange(1, max_terms + 1))
        }
        f = Polynomial.make(n, coeffs)
        if not f.is_zero:
            return f


def random_shifted_valuation(rng, n=2) -> ShiftedMonomialValuation:
    shifts = {}
    for i in range(1, n):
        if rng.random() < 0.75:
            deg = rng.randrange(1, 4)
            terms = {}
            for d in range(1, deg + 1):
                if rng.random() < 0.6:
                    e = [0] * n
                    e[rng.randrange(0, i)] = d
                    terms[tuple(e)] = rng.choice([-2, -1, 1, 2])
            if terms:
                shifts[i] = Polynomial.make(n, terms)
    change = TriangularAutomorphism.make(n, shifts)
    den = rng.choice([1, 2, 3])
    w = tuple(Fraction(rng.randrange(den, 5 * den), den) for _ in range(n))
    return ShiftedMonomialValuation(change, w)


# -- suites ------------------------------------------------------------------

def _report(name, seed, failures, instances):
    return {
        "suite": name,
        "seed": seed,
        "instances": instances,
        "failures": failures,
        "passed": not failures,
    }


def suite_approx(seed=1, regions=20, weights=100, k_values=tuple(range(1, 17))):
    """Multiplier approximation sandwich at random regions, weights, levels."""
    rng = random.Random(("approx", seed).__repr__())
    samples = [random_normalized_weights(rng, 2) for _ in range(weights)]
    failures = []
    count = 0
    for i in range(regions):
        g = random_divisor(rng, 2, 5)
        for k in k_values:
            for rec in approx_check(g, k, samples):
                count += 1
                if not rec["ok"]:
                    failures.append(
                        {
                            "region": [list(map(str, v)) for v in g.region.generators],
                            "k": k,
                            "weights": [str(x) for x in rec["weights"]],
                        }
                    )
    return _report("approx", seed, failures, count)


def suite_subadditivity(seed=1, pairs=50):
    rng = random.Random(("subadd", seed).__repr__())
    failures = []
    for i in range(pairs):
        n = 2 if i % 4 else 3
        max_exp = 5 if n == 2 else 3
        g1 = random_divisor(rng, n, max_exp)
        g2 = random_divisor(rng, n, max_exp)
        if not subadditivity_check(g1, g2):
            failures.append(
                {
                    "g1": [list(map(str, v)) for v in g1.region.generators],
                    "g2": [list(map(str, v)) for v in g2.region.generators],
                }
            )
    return _report("subadditivity", seed, failures, pairs)


def suite_els(seed=1, count=20, k_max=20):
    """Envelope approximation inequalities and stabilization."""
    rng = random.Random(("els", seed).__repr__())
    failures = []
    instances = 0
    produced = 0
    while produced < count:
        fan = random_fan(rng, 2, steps=rng.randrange(1, 3))
        values = tuple(-Fraction(rng.randrange(0, 5)) for _ in fan.rays)
        if all(v == 0 for v in values):
            continue
        g = nef_envelope(PLFunction(fan, values))
        if g.is_zero:
            continue
        produced += 1
        c0 = tameness_constant(g, k_range=()).a_priori
        stab = els_stabilization(g, c0, cap=40)
        if stab is None:
            failures.append({"values": [str(v) for v in values], "reason": "no stabilization"})
        for k in range(math.floor(c0) + 1, k_max + 1):
            if Fraction(k) <= c0:
                continue
            instances += 1
            level = els_level_check(g, k, c0)
            if not (level["ii"] and level["iii_left"] and level["iii_right"]):
                failures.append(
                    {"values": [str(v) for v in values], "k": k, "level": level}
                )
    return _report("els", seed, failures, instances)


def suite_izumi(seed=1, count=50):
    """C * g(nu_m) <= g(nu_w) <= g(nu_m) with C = max w_i, w normalized."""
    rng = random.Random(("izumi", seed).__repr__())
    failures = []
    for i in range(count):
        n = 2 if i % 3 else 3
        g = random_divisor(rng, n, 4)
        w = random_normalized_weights(rng, n)
        c = max(w)
        ones = tuple(Fraction(1) for _ in range(n))
        gm = g.value(ones)
        gw = g.value(w)
        if not (c * gm <= gw <= gm):
            failures.append({"w": [str(x) for x in w], "gm": str(gm), "gw": str(gw)})
    return _report("izumi", seed, failures, count)


def suite_homotopy(seed=1, count=100, s_samples=5):
    """Endpoints, stabilization, and valuation axioms of the homotopy."""
    rng = random.Random(("homotopy", seed).__repr__())
    failures = []
    for i in range(count):
        nu = random_shifted_valuation(rng, 2)
        f = random_polynomial(rng, 2)
        if homotopy_eval(nu, f, 0) != monomial_retraction(nu).eval_poly(f):
            failures.append({"case": "s=0", "f": str(f.terms)})
        s0 = homotopy_stabilization_threshold(nu, f)
        target = nu.eval_poly(f)
        if homotopy_eval(nu, f, s0) != target or homotopy_eval(nu, f, s0 + 1) != target:
            failures.append({"case": "threshold", "f": str(f.terms)})
        g = random_polynomial(rng, 2)
        for _ in range(s_samples):
            s = Fraction(rng.randrange(0, 12), rng.randrange(1, 4))
            if homotopy_eval(nu, f.mul(g), s) != homotopy_eval(nu, f, s) + homotopy_eval(nu, g, s):
                failures.append({"case": "additivity", "s": str(s), "f": str(f.terms), "g": str(g.terms)})
            h = f + g
            if not h.is_zero and homotopy_eval(nu, h, s) < min(
                homotopy_eval(nu, f, s), homotopy_eval(nu, g, s)
            ):
                failures.append({"case": "ultrametric", "s": str(s)})
    return _report("homotopy", seed, failures, count)


def suite_ma_identity(seed=1, count=20):
    """Defining identity and total mass of the Monge-Ampere measure."""
    rng = random.Random(("ma", seed).__repr__())
    failures = []
    for i in range(count):
        n = 2 if i % 3 else 3
        max_exp = 4 if n == 2 else 2
        regions = [
            random_primary_ideal(rng, n, max_exp).region() for _ in range(n - 1)
        ]
        measure = monge_ampere([FormalPshToric(r) for r in regions])
        expected_mass = mixed_multiplicity(simplex_region(n), *regions)
        if measure.total_mass != expected_mass:
            failures.append({"case": "total-mass", "i": i})
        for _ in range(3):
            q = random_primary_ideal(rng, n, max_exp).region()
            lhs = -measure.integrate(FormalPshToric(q))
            rhs = mixed_multiplicity(q, *regions)
            if lhs != rhs:
                failures.append(
                    {"case": "identity", "i": i, "lhs": str(lhs), "rhs": str(rhs)}
                )
    return _report("ma-identity", seed, failures, count)


def suite_theoremA(seed=1, pairs=20, type_samples=50):
    """Equivalence-of-singularity criteria and relative-type identities."""
    rng = random.Random(("thmA", seed).__repr__())
    failures = []
    for i in range(type_samples):
        n = 2 if i % 3 else 3
        u = random_germ(rng, n, 4)
        w = random_normalized_weights(rng, n)
        direct = kiselman_number(u, w)
        via_region = -u.transform().value(w)
        if relative_type(u, w) != direct or direct != via_region:
            failures.append({"case": "relative-type", "w": [str(x) for x in w]})
    for i in range(pairs):
        n = 2
        u = random_germ(rng, n, 4)
        if i % 3 == 0:
            # same region, different presentation: insert hull midpoints
            base = random_primary_ideal(rng, n, 4)
            gens = list(base.generators)
            extra = [
                tuple((a + b) // 2 for a, b in zip(g, h))
                for g in gens
                for h in gens
                if all((a + b) % 2 == 0 for a, b in zip(g, h))
            ]
            u = PshGerm.log_ideal(base)
            v = PshGerm.log_ideal(MonomialIdeal.make(n, gens + extra))
            if u.transform().region != v.transform().region:
                v = u
        elif i % 3 == 1:
            # scaling versus self-product
            base = random_primary_ideal(rng, n, 3)
            u = PshGerm.make([(2, base)])
            v = PshGerm.log_ideal(base.product(base))
        else:
            v = random_germ(rng, n, 4)
        ws = [random_normalized_weights(rng, n) for _ in range(3)]
        phis = [
            PshGerm.log_ideal(maximal_ideal(n)),
            PshGerm.log_ideal(random_primary_ideal(rng, n, 3)),
        ]
        verdict = theoremA_check(u, v, ws, phis)
        if not verdict["consistent"]:
            failures.append({"case": "pair", "i": i, "verdict": verdict})
    return _report("theoremA", seed, failures, type_samples + pairs)


def suite_oracle(seed=1, pairs_2d=50, tuples_3d=20):
    """Polyhedral mixed multiplicities against the generic-forms oracle."""
    rng = random.Random(("oracle", seed).__repr__())
    failures = []
    for i in range(pairs_2d):
        ideals = [random_primary_ideal(rng, 2, 6, extra=3) for _ in range(2)]
        poly = mixed_multiplicity(*[a.region() for a in ideals])
        orc = generic_colength(ideals, seed=seed + i)
        if poly != orc:
            failures.append({"n": 2, "i": i, "poly": str(poly), "oracle": orc})
    for i in range(tuples_3d):
        ideals = [random_primary_ideal(rng, 3, 3, extra=2) for _ in range(3)]
        poly = mixed_multiplicity(*[a.region() for a in ideals])
        orc = generic_colength(ideals, seed=seed + i)
        if poly != orc:
            failures.append({"n": 3, "i": i, "poly": str(poly), "oracle": orc})
    return _report("oracle", seed, failures, pairs_2d + tuples_3d)


SUITES = {
    "approx": suite_approx,
    "subadditivity": suite_subadditivity,
    "els": suite_els,
    "izumi": suite_izumi,
    "homotopy": suite_homotopy,
    "ma-identity": suite_ma_identity,
    "theoremA": suite_theoremA,
    "oracle": suite_oracle,
}


def run_suite(name, seed=1, **knobs):
    if name not in SUITES:
        raise KeyError(f"unknown suite: {name}")
    return SUITES[name](seed=seed, **knobs)


def run_all(seed=1):
    reports = [run_suite(name, seed=seed) for name in SUITES]
    return {
        "seed": seed,
        "suites": reports,
        "passed": all(r["passed"] for r in reports),
    }
