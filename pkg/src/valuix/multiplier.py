"""Valuative multiplier ideals and their companions.

For a toric formal psh function g with region P, the multiplier ideal
L2(g) is generated by the monomials x^m with m + (1,..,1) strictly inside
P, and the bounded ideal Linf(g) by those with m in P.  Everything else
here (log canonical thresholds, jumping ladders, nef envelopes, tameness
constants, the approximation and subadditivity checks) is exact rational
arithmetic on top of these two lattice scans.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from valuix import kernels
from valuix.divisors import FormalPshToric, MonomialIdeal, divisor_sum
from valuix.geometry import NewtonRegion, dot, region_from_points, polyhedron_vertices
from valuix.fans import PLFunction


def _unit_ideal(dim: int) -> MonomialIdeal:
    return MonomialIdeal.make(dim, [tuple(0 for _ in range(dim))])


def _scan_box(region: NewtonRegion) -> list[int]:
    """Per-axis search bound for minimal generators of a facet scan.

    A minimal generator m has, for each axis i with m_i > 0, some facet j
    with normal_ji > 0 that its decrement violates, which forces
    m_i <= offset_j / normal_ji + 1.  Axes no facet sees are forced to 0.
    """
    box = []
    for i in range(region.dim):
        vals = [
            Fraction(off, nrm[i]) for nrm, off in region.facets if nrm[i] > 0
        ]
        box.append(math.ceil(max(vals)) + 1 if vals else 0)
    return box


def _scan_ideal(region: NewtonRegion, shift: int, strict: bool) -> MonomialIdeal:
    """Minimal monomial generators of {m >= 0 : m + shift*1 in region}."""
    if region.is_trivial:
        return _unit_ideal(region.dim)
    n = region.dim
    normals, rhs = [], []
    for nrm, off in region.facets:
        d = off.denominator
        normals.append([x * d for x in nrm])
        rhs.append(off.numerator if d == 1 else int(off * d))
    box = _scan_box(region)
    shift_vec = [shift] * n
    gens = kernels.scan_min_generators(normals, rhs, shift_vec, strict, box)
    # fail-safe: an enlarged box must not reveal further minimal generators
    enlarged = kernels.scan_min_generators(
        normals, rhs, shift_vec, strict, [b + 1 for b in box]
    )
    assert gens == enlarged, "generator search box too small"
    if not gens:
        raise AssertionError("facet scan produced an empty ideal")
    return MonomialIdeal.make(n, gens)


def l2_ideal(g: FormalPshToric) -> MonomialIdeal:
    """Multiplier ideal: monomials x^m with m + 1 strictly inside the region."""
    return _scan_ideal(g.region, shift=1, strict=True)


def linf_ideal(g: FormalPshToric) -> MonomialIdeal:
    """Bounded ideal: monomials x^m with m inside the region."""
    return _scan_ideal(g.region, shift=0, strict=False)


def lct(g: FormalPshToric) -> Fraction:
    """Log canonical threshold: sup{c > 0 : L2(c*g) is the unit ideal}."""
    if g.is_zero:
        raise ValueError("lct of the zero function is infinite")
    one = tuple(1 for _ in range(g.dim))
    return min(Fraction(dot(nrm, one), off) for nrm, off in g.region.facets)


@dataclass(frozen=True)
class JumpingLadder:
    """Thresholds c in (0, c_max] where L2(c*g) drops, with the ideals between.

    ideals[i] is L2(c*g) for c in [thresholds[i], thresholds[i+1]); the
    ideal for c below thresholds[0] (the lct) is the unit ideal.
    """

    thresholds: tuple[Fraction, ...]
    ideals: tuple[MonomialIdeal, ...]


def jumping_ladder(g: FormalPshToric, c_max=None) -> JumpingLadder:
    if g.is_zero:
        raise ValueError("the zero function has no jumping numbers")
    n = g.dim
    if c_max is None:
        c_max = n * lct(g)
    c_max = Fraction(c_max)
    if c_max <= 0:
        raise ValueError("c_max must be positive")
    big = g.region.scale(c_max)
    box = _scan_box(big)
    one = tuple(1 for _ in range(n))
    thresholds = set()
    for m in _iterate_box(box):
        shifted = tuple(a + 1 for a in m)
        t = min(Fraction(dot(nrm, shifted), off) for nrm, off in g.region.facets)
        if 0 < t <= c_max:
            thresholds.add(t)
    ordered = tuple(sorted(thresholds))
    ideals = tuple(l2_ideal(g.scale(t)) for t in ordered)
    return JumpingLadder(ordered, ideals)


def _iterate_box(box):
    import itertools

    return itertools.product(*(range(b + 1) for b in box))


def nef_envelope(h: PLFunction) -> FormalPshToric:
    """Largest toric formal psh function dominated by h on the rays of its fan.

    The region is the intersection of the halfspaces <e, m> >= -h(e) over
    the rays e.
    """
    if any(v > 0 for v in h.values):
        raise ValueError("nef envelope requires nonpositive ray values")
    n = h.fan.dim
    constraints = [
        (ray, -val) for ray, val in zip(h.fan.rays, h.values)
    ]
    verts = polyhedron_vertices(constraints, n)
    return FormalPshToric(region_from_points(verts))


def thinness_of_weights(w) -> Fraction:
    return sum((Fraction(x) for x in w), Fraction(0))


def approx_check(g: FormalPshToric, k: int, sample_weights) -> list[dict]:
    """Sandwich k*g <= -nu(L2(k*g)) <= k*g + A at each sample weight.

    A is the thinness (sum of the weights).  Returns one record per sample
    with the three exact values and the slack on each side.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    ideal = l2_ideal(g.scale(k))
    report = []
    for w in sample_weights:
        w = tuple(Fraction(x) for x in w)
        lower = -Fraction(k) * g.region.support_value(w)
        middle = -min(dot(w, m) for m in ideal.generators)
        upper = lower + thinness_of_weights(w)
        report.append(
            {
                "weights": w,
                "lower": lower,
                "value": middle,
                "upper": upper,
                "ok": lower <= middle <= upper,
            }
        )
    return report


def subadditivity_check(g1: FormalPshToric, g2: FormalPshToric) -> bool:
    """L2(g1 + g2) is contained in the product L2(g1) * L2(g2)."""
    product = l2_ideal(g1).product(l2_ideal(g2))
    return all(
        product.contains_monomial(m)
        for m in l2_ideal(divisor_sum(g1, g2)).generators
    )


class TamenessReport(NamedTuple):
    empirical: Fraction
    a_priori: Fraction


def tameness_constant(g: FormalPshToric, k_range=range(1, 11)) -> TamenessReport:
    """Least C with L2(k*g) inside Linf((k-C)*g) across the tested range.

    Also reports the a-priori bound C0 = max over facets (w, b) of
    thinness(w)/b, which works for every k at once.
    """
    if g.is_zero:
        raise ValueError("tameness constant is undefined for the zero function")
    c0 = max(
        Fraction(sum(nrm), off) for nrm, off in g.region.facets
    )
    empirical = Fraction(0)
    for k in k_range:
        for m in l2_ideal(g.scale(k)).generators:
            depth = min(Fraction(dot(nrm, m), off) for nrm, off in g.region.facets)
            empirical = max(empirical, Fraction(k) - depth)
    return TamenessReport(empirical, c0)


def _wk_region(g: FormalPshToric, k) -> NewtonRegion:
    """Region of (1/k) * Linf(k*g)."""
    k = Fraction(k)
    ideal = linf_ideal(FormalPshToric(g.region.scale(k)))
    return region_from_points(ideal.generators).scale(Fraction(1) / k)


def els_level_check(g: FormalPshToric, k, c0) -> dict:
    """The two exact inequalities of the envelope approximation at level k."""
    k = Fraction(k)
    w_region = g.region
    wk = _wk_region(g, k)
    linf_shrunk = (
        _unit_ideal(g.dim)
        if k == c0
        else _scan_ideal(w_region.scale(k - c0), shift=0, strict=False)
    )
    ii = all(
        linf_shrunk.contains_monomial(m)
        for m in l2_ideal(g.scale(k)).generators
    )
    iii_left = w_region.contains_region(wk)
    iii_right = _wk_region(g, k - c0).scale(1 - c0 / k).contains_region(w_region)
    return {"ii": ii, "iii_left": iii_left, "iii_right": iii_right}


def els_stabilization(g: FormalPshToric, c0, cap: int = 40):
    """Least integer j with L2 of the W_j region equal to L2(g), or None."""
    target = l2_ideal(g)
    j = max(2, math.ceil(c0) + 1)
    while j <= cap:
        if l2_ideal(FormalPshToric(_wk_region(g, j))) == target:
            return j
        j += 1
    return None


def els_approx_check(g: FormalPshToric, k: int, stabilization_cap: int = 40) -> dict:
    """Exact checks of the envelope approximation inequalities at level k.

    With C the a-priori tameness bound and W_j = (1/j) * region of
    Linf(j*g), verifies L2(k*g) inside Linf((k-C)*g), the region sandwich
    W_k <= W <= (1 - C/k) * W_{k-C}, and the stabilization
    L2(W) = L2(W_k) for k at or beyond a detected threshold.
    """
    if g.is_zero:
        raise ValueError("the zero function has no envelope data")
    c0 = tameness_constant(g, k_range=()).a_priori
    k = Fraction(k)
    if k <= c0:
        raise ValueError("k must exceed the tameness constant")
    level = els_level_check(g, k, c0)
    ii = level["ii"]
    iii_left, iii_right = level["iii_left"], level["iii_right"]

    stabilized_at = els_stabilization(g, c0, cap=stabilization_cap)
    iv = stabilized_at is not None and (
        k < stabilized_at
        or l2_ideal(FormalPshToric(_wk_region(g, k))) == l2_ideal(g)
    )
    return {
        "C": c0,
        "ii": ii,
        "iii": iii_left and iii_right,
        "iii_left": iii_left,
        "iii_right": iii_right,
        "iv_stabilized_at": stabilized_at,
        "iv": iv,
        "ok": ii and iii_left and iii_right and iv,
    }
