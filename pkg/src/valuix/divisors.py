"""Monomial ideals, toric formal psh functions, and psh germs.

A monomial ideal is identified with its Newton region; a toric formal psh
function g is the function w -> -support_value(region, w) on positive
weights; a germ is a finite positive rational combination of logs of
monomial ideals, whose valuative transform is again toric.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from valuix.geometry import (
    GeometryError,
    NewtonRegion,
    orthant_region,
    region_from_points,
    to_vec,
)
from valuix.valuations import MonomialValuation


@dataclass(frozen=True)
class MonomialIdeal:
    """Finite set of integer exponent vectors, minimal under divisibility."""

    dim: int
    generators: tuple[tuple[int, ...], ...]

    @staticmethod
    def make(dim, generators) -> "MonomialIdeal":
        gens = set()
        for g in generators:
            g = tuple(int(e) for e in g)
            if len(g) != dim or any(e < 0 for e in g):
                raise ValueError("bad exponent vector")
            gens.add(g)
        if not gens:
            raise ValueError("an ideal needs at least one generator")
        minimal = [
            g
            for g in gens
            if not any(h != g and all(a <= b for a, b in zip(h, g)) for h in gens)
        ]
        return MonomialIdeal(dim, tuple(sorted(minimal)))

    @property
    def is_unit(self) -> bool:
        return tuple(0 for _ in range(self.dim)) in self.generators

    def is_primary(self) -> bool:
        """True iff a pure power of every coordinate is among the generators."""
        for i in range(self.dim):
            if not any(
                g[i] > 0 and all(g[j] == 0 for j in range(self.dim) if j != i)
                for g in self.generators
            ):
                return False
        return True

    def region(self) -> NewtonRegion:
        return region_from_points(self.generators)

    def contains_monomial(self, exp) -> bool:
        exp = tuple(int(e) for e in exp)
        return any(all(a <= b for a, b in zip(g, exp)) for g in self.generators)

    def contains_ideal(self, other: "MonomialIdeal") -> bool:
        return all(self.contains_monomial(g) for g in other.generators)

    def product(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal.make(
            self.dim,
            {
                tuple(a + b for a, b in zip(g, h))
                for g in self.generators
                for h in other.generators
            },
        )


def maximal_ideal(dim: int) -> MonomialIdeal:
    gens = []
    for i in range(dim):
        e = [0] * dim
        e[i] = 1
        gens.append(tuple(e))
    return MonomialIdeal.make(dim, gens)


@dataclass(frozen=True)
class FormalPshToric:
    """Toric formal psh function g(w) = -support_value(region, w)."""

    region: NewtonRegion

    @property
    def dim(self) -> int:
        return self.region.dim

    @property
    def is_zero(self) -> bool:
        return self.region.is_trivial

    def value(self, weights) -> Fraction:
        """g at the monomial valuation with the given positive weights."""
        return -self.region.support_value(weights)

    def scale(self, c) -> "FormalPshToric":
        return FormalPshToric(self.region.scale(c))

    def __le__(self, other: "FormalPshToric") -> bool:
        """Pointwise comparison: g1 <= g2 iff region(g1) contained in region(g2)."""
        return other.region.contains_region(self.region)


def region_of(ideal: MonomialIdeal) -> NewtonRegion:
    return ideal.region()


def divisor_of(ideal: MonomialIdeal) -> FormalPshToric:
    return FormalPshToric(ideal.region())


def divisor_max(g1: FormalPshToric, g2: FormalPshToric) -> FormalPshToric:
    if g1.dim != g2.dim:
        raise GeometryError("dimension mismatch")
    return FormalPshToric(g1.region.union_hull(g2.region))


def divisor_sum(g1: FormalPshToric, g2: FormalPshToric) -> FormalPshToric:
    if g1.dim != g2.dim:
        raise GeometryError("dimension mismatch")
    return FormalPshToric(g1.region.minkowski_sum(g2.region))


def zero_divisor(dim: int) -> FormalPshToric:
    return FormalPshToric(orthant_region(dim))


@dataclass(frozen=True)
class PshGerm:
    """u = sum_i c_i log|a_i| with c_i > 0 and a_i monomial ideals."""

    dim: int
    terms: tuple[tuple[Fraction, MonomialIdeal], ...]

    @staticmethod
    def make(terms) -> "PshGerm":
        out = []
        dim = None
        for c, a in terms:
            c = Fraction(c)
            if c <= 0:
                raise ValueError("germ coefficients must be positive")
            if dim is None:
                dim = a.dim
            elif a.dim != dim:
                raise GeometryError("dimension mismatch")
            out.append((c, a))
        if not out:
            raise ValueError("a germ needs at least one term")
        return PshGerm(dim, tuple(out))

    @staticmethod
    def log_ideal(a: MonomialIdeal, c=1) -> "PshGerm":
        return PshGerm.make([(Fraction(c), a)])

    def concat(self, other: "PshGerm") -> "PshGerm":
        if self.dim != other.dim:
            raise GeometryError("dimension mismatch")
        return PshGerm(self.dim, self.terms + other.terms)

    def transform(self) -> FormalPshToric:
        """Valuative transform: region = Minkowski sum of c_i-scaled regions."""
        region = None
        for c, a in self.terms:
            piece = a.region().scale(c)
            region = piece if region is None else region.minkowski_sum(piece)
        return FormalPshToric(region)

    def is_primary_backed(self) -> bool:
        return self.transform().region.is_primary()


def transform(u: PshGerm) -> FormalPshToric:
    return u.transform()


def kiselman_number(u: PshGerm, weights) -> Fraction:
    """Directional Lelong number: sum c_i nu_w(a_i) = -u_hat(nu_w)."""
    w = to_vec(weights)
    if any(x <= 0 for x in w):
        raise ValueError("weights must be positive")
    if len(w) != u.dim:
        raise GeometryError("dimension mismatch")
    nu = MonomialValuation(w)
    return sum((c * nu.eval_ideal(a) for c, a in u.terms), Fraction(0))


def lelong_number(u: PshGerm) -> Fraction:
    """Ordinary Lelong number: -u_hat at the valuation with all weights 1."""
    return kiselman_number(u, tuple(1 for _ in range(u.dim)))
