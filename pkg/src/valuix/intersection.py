"""Intersection numbers, mixed multiplicities, and Monge-Ampere measures.

Everything reduces to exact covolumes of Minkowski combinations of Newton
regions: the multiplicity of a primary region is n! times its covolume,
mixed multiplicities are the multilinear coefficient of the covolume
polynomial, intersection numbers of nef data are their negatives, and the
Monge-Ampere measure of n-1 primary regions is the atomic measure on
interior rays whose pairings against a spanning family of test regions
reproduce those numbers.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from valuix.divisors import FormalPshToric, PshGerm, maximal_ideal
from valuix.fans import Fan, PLFunction, normal_fan_refinement, star_subdivision
from valuix.geometry import (
    GeometryError,
    NewtonRegion,
    NonPrimaryError,
    dot,
    simplex_region,
    region_from_points,
)
from valuix.valuations import MonomialValuation


def _as_region(z) -> NewtonRegion:
    if isinstance(z, NewtonRegion):
        return z
    if isinstance(z, FormalPshToric):
        return z.region
    if isinstance(z, PLFunction):
        from valuix.multiplier import nef_envelope

        return nef_envelope(z).region
    raise TypeError(f"cannot interpret {type(z).__name__} as a nef region")


def multiplicity(region: NewtonRegion) -> Fraction:
    """Samuel multiplicity: n! times the covolume of a primary region."""
    if not region.is_primary():
        raise NonPrimaryError("multiplicity requires a bounded complement")
    return Fraction(math.factorial(region.dim)) * region.covolume()


def _combination_covolume(regions, t) -> Fraction:
    """Covolume of the Minkowski sum of t_i * P_i (skipping zero weights)."""
    acc = None
    for coef, region in zip(t, regions):
        if coef == 0:
            continue
        piece = region.scale(coef)
        acc = piece if acc is None else acc.minkowski_sum(piece)
    if acc is None:
        return Fraction(0)
    return acc.covolume()


def _homogeneous_monomials(n, degree):
    out = []
    for alpha in itertools.product(range(degree + 1), repeat=n):
        if sum(alpha) == degree:
            out.append(alpha)
    return sorted(out)


def mixed_multiplicity(*regions) -> Fraction:
    """Multilinear coefficient of the covolume polynomial of the regions.

    The map t -> covolume(sum of t_i P_i) is homogeneous of degree n; its
    coefficient at t_1 * ... * t_n is the mixed multiplicity.  All n
    coefficients are recovered by exact interpolation on a small integer
    grid, and the inclusion-exclusion expansion over subsets serves as an
    independent identity (see mixed_multiplicity_ie).
    """
    regions = [_as_region(r) for r in regions]
    n = regions[0].dim
    if len(regions) != n:
        raise GeometryError(f"need exactly {n} regions in dimension {n}")
    for r in regions:
        if not r.is_primary():
            raise NonPrimaryError("mixed multiplicity requires primary regions")
    monomials = _homogeneous_monomials(n, n)
    target = tuple(1 for _ in range(n))
    rows, rhs = [], []
    rank_rows = []
    from valuix.geometry import matrix_rank, solve_linear

    for t in itertools.product(range(n + 1), repeat=n):
        if all(x == 0 for x in t):
            continue
        row = [
            Fraction(
                math.prod(x**a for x, a in zip(t, alpha))
            )
            for alpha in monomials
        ]
        if matrix_rank(rank_rows + [row]) == len(rank_rows):
            continue
        rank_rows.append(row)
        rows.append(row)
        rhs.append(_combination_covolume(regions, t))
        if len(rows) == len(monomials):
            break
    coeffs = solve_linear(rows, rhs)
    if coeffs is None:
        raise GeometryError("interpolation grid failed to span")
    return coeffs[monomials.index(target)]


def mixed_multiplicity_ie(*regions) -> Fraction:
    """Inclusion-exclusion form: sum over subsets S of (-1)^(n-|S|) covol."""
    regions = [_as_region(r) for r in regions]
    n = regions[0].dim
    total = Fraction(0)
    for mask in itertools.product((0, 1), repeat=n):
        sign = (-1) ** (n - sum(mask))
        total += sign * _combination_covolume(regions, mask)
    return total


@dataclass(frozen=True)
class IntersectionNumber:
    value: Fraction


def intersection(z_list) -> IntersectionNumber:
    """Intersection number of n nef inputs: minus their mixed multiplicity."""
    return IntersectionNumber(-mixed_multiplicity(*z_list))


def _cap_region(region: NewtonRegion, size: int) -> NewtonRegion:
    return region.union_hull(simplex_region(region.dim, size))


def pairing(first, rest) -> Fraction:
    """Mixed multiplicity allowing a non-primary first argument.

    The rest must be primary; an unbounded first region is capped with a
    large standard simplex, and the cap size is increased until two
    consecutive sizes agree (the primary partners make the pairing finite
    and eventually independent of the cap).
    """
    first = _as_region(first)
    rest = [_as_region(r) for r in rest]
    for r in rest:
        if not r.is_primary():
            raise NonPrimaryError("pairing partners must be primary")
    if first.is_primary():
        return mixed_multiplicity(first, *rest)
    size = 1 + math.ceil(
        sum((max(b for b in r.axis_bounds()) for r in rest), Fraction(0))
        + max(max(g) for g in first.generators)
    )
    prev = mixed_multiplicity(_cap_region(first, size), *rest)
    for _ in range(8):
        size += 1
        cur = mixed_multiplicity(_cap_region(first, size), *rest)
        if cur == prev:
            return cur
        prev = cur
    raise GeometryError("pairing failed to stabilize under capping")


@dataclass(frozen=True)
class AtomicMeasure:
    """Finite sum of Dirac masses at normalized monomial valuations."""

    atoms: tuple[tuple[MonomialValuation, Fraction], ...]

    @property
    def total_mass(self) -> Fraction:
        return sum((m for _, m in self.atoms), Fraction(0))

    def integrate(self, g: FormalPshToric) -> Fraction:
        """Integral of g against the measure."""
        return sum(
            (m * g.value(nu.weights) for nu, m in self.atoms), Fraction(0)
        )


def extremal_weight_region(w) -> FormalPshToric:
    """Largest toric formal psh function with value -1 at the weight w.

    Region {m >= 0 : <w, m> >= 1}, with vertices e_i / w_i; requires w
    normalized (min entry 1).
    """
    w = tuple(Fraction(x) for x in w)
    if any(x <= 0 for x in w):
        raise ValueError("weights must be positive")
    if min(w) != 1:
        raise ValueError("weights must be normalized (min = 1)")
    n = len(w)
    pts = []
    for i in range(n):
        v = [Fraction(0)] * n
        v[i] = 1 / w[i]
        pts.append(tuple(v))
    return FormalPshToric(region_from_points(pts))


def _measure_test_regions(fan: Fan, regions):
    """Spanning family: P(m), coordinate halfspaces, extremal ray regions."""
    n = fan.dim
    tests = [simplex_region(n)]
    for i in range(n):
        e = [0] * n
        e[i] = 1
        tests.append(region_from_points([tuple(e)]))
    for idx in fan.interior_ray_indices():
        ray = fan.rays[idx]
        b = min(ray)
        nu = tuple(Fraction(x, b) for x in ray)
        tests.append(extremal_weight_region(nu).region)
    return tests


def _subdivide_once(fan: Fan) -> Fan:
    cone = min(fan.cones)
    center = [0] * fan.dim
    for r in fan.ray_matrix(cone):
        center = [a + b for a, b in zip(center, r)]
    return star_subdivision(fan, cone, center)


def monge_ampere(g_list) -> AtomicMeasure:
    """Atomic Monge-Ampere measure of n-1 primary toric psh functions.

    Atoms sit at the normalized interior rays of the common refinement of
    the normal fans; the masses are the unique nonnegative solution of
    integrate(g_Q) = -mixed_multiplicity(Q, P_1, ..., P_{n-1}) over the
    test family.  A rank-deficient test system triggers one fan
    subdivision and retry.
    """
    regions = [_as_region(g) for g in g_list]
    n = regions[0].dim
    if len(regions) != n - 1:
        raise GeometryError(f"need exactly {n - 1} inputs in dimension {n}")
    for r in regions:
        if not r.is_primary():
            raise NonPrimaryError("Monge-Ampere inputs must be primary")
    fan = normal_fan_refinement(regions)
    for attempt in range(2):
        result = _solve_masses(fan, regions)
        if result is not None:
            return result
        fan = _subdivide_once(fan)
    raise GeometryError("Monge-Ampere test system stayed rank-deficient")


def _solve_masses(fan: Fan, regions):
    from valuix.geometry import matrix_rank, solve_linear

    interior = fan.interior_ray_indices()
    if not interior:
        raise GeometryError("determination fan has no interior ray")
    normalized = []
    for idx in interior:
        ray = fan.rays[idx]
        b = min(ray)
        normalized.append(tuple(Fraction(x, b) for x in ray))
    k = len(interior)
    rows, rhs = [], []
    for q in _measure_test_regions(fan, regions):
        row = [q.support_value(nu) for nu in normalized]
        rows.append(row)
        rhs.append(pairing(q, regions))
    # select k independent equations, then verify the rest are consistent
    chosen, chosen_rhs = [], []
    for row, b in zip(rows, rhs):
        if matrix_rank(chosen + [row]) > len(chosen):
            chosen.append(row)
            chosen_rhs.append(b)
    if len(chosen) < k:
        return None
    masses = solve_linear(chosen, chosen_rhs)
    if masses is None:
        return None
    for row, b in zip(rows, rhs):
        if dot(row, masses) != b:
            raise GeometryError("Monge-Ampere test system is inconsistent")
    if any(m < 0 for m in masses):
        raise GeometryError("negative Monge-Ampere mass")
    atoms = tuple(
        (MonomialValuation(nu), m)
        for nu, m in zip(normalized, masses)
        if m > 0
    )
    return AtomicMeasure(atoms)


def generalized_lelong(u: PshGerm, phi: PshGerm) -> Fraction:
    """nu_phi(u): pairing of u's transform against n-1 copies of phi's."""
    r_phi = phi.transform().region
    if not r_phi.is_primary():
        raise NonPrimaryError("the weight germ must be primary-backed")
    r_u = u.transform().region
    n = r_u.dim
    return pairing(r_u, [r_phi] * (n - 1))


def relative_type(u: PshGerm, w) -> Fraction:
    """sigma(u, nu_w) = -u_hat(nu_w) for a normalized weight w."""
    w = tuple(Fraction(x) for x in w)
    if min(w) != 1:
        raise ValueError("weights must be normalized (min = 1)")
    from valuix.divisors import kiselman_number

    return kiselman_number(u, w)


def theoremA_check(u: PshGerm, v: PshGerm, weights, phis) -> dict:
    """Compare four equivalence criteria for two psh germs.

    (1) equality of transform regions; (2) equality of multiplier ideals
    of all scalings up to a cap; (3) equality of relative types at the
    sample weights; (4) equality of generalized Lelong numbers against the
    sample primary-backed germs.  (1), (2), (3) must agree with each other
    and imply (4); the converse of the last implication is reported but
    never required.
    """
    from valuix.multiplier import jumping_ladder, lct

    gu, gv = u.transform(), v.transform()
    r1 = gu.region == gv.region

    if gu.is_zero or gv.is_zero:
        r2 = gu.is_zero and gv.is_zero
    else:
        cap = u.dim * max(lct(gu), lct(gv))
        lu = jumping_ladder(gu, cap)
        lv = jumping_ladder(gv, cap)
        r2 = lu == lv

    r3 = all(relative_type(u, w) == relative_type(v, w) for w in weights)
    r4 = all(
        generalized_lelong(u, phi) == generalized_lelong(v, phi)
        for phi in phis
    )
    consistent = (r1 == r2 == r3) and (not r1 or r4)
    return {
        "regions_equal": r1,
        "multiplier_scalings_equal": r2,
        "relative_types_equal": r3,
        "lelong_numbers_equal": r4,
        "consistent": consistent,
    }
