"""Monomial and shifted-monomial valuations on polynomial germs.

A monomial valuation with positive weight vector w sends a polynomial
f = sum a_alpha x^alpha to min over the support of <w, alpha>.  The shifted
class precomposes with a triangular polynomial automorphism fixing the
origin (Jacobian 1), which covers the computable quasi-monomial points.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from valuix.geometry import Vec, dot, to_vec

INFINITY = math.inf

DEFAULT_DEGREE_CAP = 64


class DegreeOverflowError(RuntimeError):
    """Coordinate rewriting exceeded the configured total-degree cap."""


@dataclass(frozen=True)
class Polynomial:
    """Sparse polynomial: map from exponent tuple to nonzero rational coefficient."""

    dim: int
    terms: tuple[tuple[tuple[int, ...], Fraction], ...]

    @staticmethod
    def make(dim, coeffs) -> "Polynomial":
        acc: dict[tuple[int, ...], Fraction] = {}
        for exp, c in dict(coeffs).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != dim or any(e < 0 for e in exp):
                raise ValueError("bad exponent vector")
            c = Fraction(c)
            if c:
                acc[exp] = acc.get(exp, Fraction(0)) + c
        return Polynomial(dim, tuple(sorted((e, c) for e, c in acc.items() if c)))

    @staticmethod
    def zero(dim) -> "Polynomial":
        return Polynomial(dim, ())

    @staticmethod
    def monomial(dim, exp, coeff=1) -> "Polynomial":
        return Polynomial.make(dim, {tuple(exp): coeff})

    @staticmethod
    def variable(dim, i) -> "Polynomial":
        exp = [0] * dim
        exp[i] = 1
        return Polynomial.make(dim, {tuple(exp): 1})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def support(self):
        return [e for e, _ in self.terms]

    def total_degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=0)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc.get(e, Fraction(0)) + c
        return Polynomial(self.dim, tuple(sorted((e, c) for e, c in acc.items() if c)))

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.dim, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def mul(self, other: "Polynomial", cap: int = DEFAULT_DEGREE_CAP) -> "Polynomial":
        acc: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                if sum(e) > cap:
                    raise DegreeOverflowError(
                        f"total degree exceeds cap {cap} during multiplication"
                    )
                acc[e] = acc.get(e, Fraction(0)) + c1 * c2
        return Polynomial(self.dim, tuple(sorted((e, c) for e, c in acc.items() if c)))

    def truncate_above(self, beta) -> "Polynomial":
        """Keep terms with exponent componentwise >= beta."""
        return Polynomial(
            self.dim,
            tuple((e, c) for e, c in self.terms if all(a >= b for a, b in zip(e, beta))),
        )


def compose(f: Polynomial, images: list[Polynomial], cap: int = DEFAULT_DEGREE_CAP) -> Polynomial:
    """Evaluate f at the given polynomial images of the variables."""
    dim = images[0].dim
    result = Polynomial.zero(dim)
    powers: list[dict[int, Polynomial]] = [dict() for _ in images]
    one = Polynomial.make(dim, {tuple([0] * dim): 1})

    def power(i, k):
        if k == 0:
            return one
        if k not in powers[i]:
            powers[i][k] = power(i, k - 1).mul(images[i], cap=cap)
        return powers[i][k]

    for e, c in f.terms:
        term = Polynomial.make(dim, {tuple([0] * dim): c})
        for i, k in enumerate(e):
            if k:
                term = term.mul(power(i, k), cap=cap)
        result = result + term
    return result


@dataclass(frozen=True)
class TriangularAutomorphism:
    """Coordinate change z_1 = x_1, z_i = x_i - p_i(x_1..x_{i-1}), p_i(0) = 0.

    The inverse substitutions x_i = z_i + p_i(...) are expanded exactly, so
    the map is a polynomial automorphism fixing 0 with Jacobian 1.
    """

    dim: int
    shifts: tuple[Polynomial, ...]  # p_1 (always zero), ..., p_n

    @staticmethod
    def make(dim, shifts: dict[int, Polynomial]) -> "TriangularAutomorphism":
        ps = []
        for i in range(dim):
            p = shifts.get(i, Polynomial.zero(dim))
            if p.dim != dim:
                raise ValueError("dimension mismatch in triangular shift")
            for e, _ in p.terms:
                if any(e[j] != 0 for j in range(i, dim)):
                    raise ValueError(f"shift for coordinate {i} must use earlier variables")
            if any(all(v == 0 for v in e) for e, _ in p.terms):
                raise ValueError("shifts must vanish at the origin")
            ps.append(p)
        return TriangularAutomorphism(dim, tuple(ps))

    @property
    def is_identity(self) -> bool:
        return all(p.is_zero for p in self.shifts)

    def rewrite(self, f: Polynomial, cap: int = DEFAULT_DEGREE_CAP) -> Polynomial:
        """Express f(x) as a polynomial in the z-coordinates."""
        n = self.dim
        # x_i = z_i + p_i(x_1..x_{i-1}), expanded left to right.
        images: list[Polynomial] = []
        for i in range(n):
            xi = Polynomial.variable(n, i)
            if not self.shifts[i].is_zero:
                xi = xi + compose(self.shifts[i], images + [Polynomial.zero(n)] * (n - i), cap=cap)
            images.append(xi)
        return compose(f, images, cap=cap)


@dataclass(frozen=True)
class MonomialValuation:
    """nu_w(f) = min over the support of f of <w, alpha>, all w_i > 0."""

    weights: Vec

    def __post_init__(self):
        object.__setattr__(self, "weights", to_vec(self.weights))
        if any(w <= 0 for w in self.weights):
            raise ValueError("all weights must be positive")

    @property
    def dim(self) -> int:
        return len(self.weights)

    def eval_poly(self, f: Polynomial):
        if f.dim != self.dim:
            raise ValueError("dimension mismatch")
        if f.is_zero:
            return INFINITY
        return min(dot(self.weights, e) for e, _ in f.terms)

    def eval_region(self, region) -> Fraction:
        return region.support_value(self.weights)

    def eval_ideal(self, ideal) -> Fraction:
        return min(dot(self.weights, g) for g in ideal.generators)

    def value_of_m(self) -> Fraction:
        return min(self.weights)

    @property
    def is_normalized(self) -> bool:
        return min(self.weights) == 1

    def normalize(self) -> tuple["MonomialValuation", Fraction]:
        lam = min(self.weights)
        return MonomialValuation(tuple(w / lam for w in self.weights)), lam

    def thinness(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def coordinate_values(self) -> Vec:
        return self.weights


@dataclass(frozen=True)
class ShiftedMonomialValuation:
    """Monomial valuation read through a triangular coordinate change."""

    change: TriangularAutomorphism
    weights: Vec
    degree_cap: int = DEFAULT_DEGREE_CAP

    def __post_init__(self):
        object.__setattr__(self, "weights", to_vec(self.weights))
        if any(w <= 0 for w in self.weights):
            raise ValueError("all weights must be positive")
        if self.change.dim != len(self.weights):
            raise ValueError("dimension mismatch")

    @property
    def dim(self) -> int:
        return len(self.weights)

    def _monomial(self) -> MonomialValuation:
        return MonomialValuation(self.weights)

    def eval_poly(self, f: Polynomial):
        if f.dim != self.dim:
            raise ValueError("dimension mismatch")
        if f.is_zero:
            return INFINITY
        return self._monomial().eval_poly(self.change.rewrite(f, cap=self.degree_cap))

    def eval_generators(self, gens) -> Fraction:
        """Value on an ideal given by an explicit monomial generator list."""
        vals = [self.eval_poly(Polynomial.monomial(self.dim, g)) for g in gens]
        return min(vals)

    def coordinate_values(self) -> Vec:
        return tuple(
            self.eval_poly(Polynomial.variable(self.dim, i)) for i in range(self.dim)
        )

    def value_of_m(self) -> Fraction:
        return min(self.coordinate_values())

    def thinness(self) -> Fraction:
        return sum(self.weights, Fraction(0))


Valuation = MonomialValuation | ShiftedMonomialValuation


def normalize(nu: MonomialValuation) -> tuple[MonomialValuation, Fraction]:
    return nu.normalize()


def b_value(e) -> int:
    """Normalization factor of a primitive integer weight vector."""
    e = [int(x) for x in e]
    if any(x <= 0 for x in e):
        raise ValueError("weights must be positive")
    return min(e)


def thinness(nu: Valuation) -> Fraction:
    """Log-discrepancy weight: sum of the weights in the monomial coordinates."""
    return nu.thinness()


def izumi_constant(weights) -> Fraction:
    """C with C * g(nu_m) <= g(nu_w) <= g(nu_m) for normalized w and toric g."""
    w = to_vec(weights)
    if min(w) != 1:
        raise ValueError("weights must be normalized (min = 1)")
    return max(w)


def monomial_retraction(nu: Valuation) -> MonomialValuation:
    """Retract onto the monomial class: weights (nu(x_1), ..., nu(x_n))."""
    return MonomialValuation(nu.coordinate_values())


def _downset(support):
    """All beta componentwise below some exponent in the support."""
    if not support:
        return []
    n = len(support[0])
    maxima = [max(e[i] for e in support) for i in range(n)]
    out = []
    for beta in itertools.product(*(range(m + 1) for m in maxima)):
        if any(all(b <= a for b, a in zip(beta, e)) for e in support):
            out.append(beta)
    return out


def _shifted_truncation(f: Polynomial, beta) -> Polynomial:
    """x^beta times the divided-power derivative of f at beta.

    Same support as the plain truncation to exponents >= beta, with each
    coefficient scaled by the (nonzero) binomial product.  These weights
    give the Leibniz rule over products of truncations, which is what
    makes the homotopy below multiplicative.
    """
    terms = {}
    for e, c in f.terms:
        if all(a >= b for a, b in zip(e, beta)):
            w = 1
            for a, b in zip(e, beta):
                w *= math.comb(a, b)
            terms[e] = c * w
    return Polynomial(f.dim, tuple(sorted(terms.items())))


def homotopy_eval(nu: Valuation, f: Polynomial, s) -> Fraction:
    """min over beta of nu(x^beta * divided derivative of f at beta) + |beta|*s.

    The parameter s = -log t is a nonnegative rational; s = 0 gives the
    monomial retraction, large s gives nu itself, and for fixed s the map
    f -> homotopy_eval(nu, f, s) is again a valuation.
    """
    s = Fraction(s)
    if s < 0:
        raise ValueError("s must be nonnegative")
    if f.is_zero:
        raise ValueError("homotopy is undefined on the zero polynomial")
    best = None
    for beta in _downset(f.support()):
        val = nu.eval_poly(_shifted_truncation(f, beta)) + sum(beta) * s
        if best is None or val < best:
            best = val
    return best


def homotopy_stabilization_threshold(nu: Valuation, f: Polynomial) -> Fraction:
    """Least s0 >= 0 with homotopy_eval(nu, f, s) = nu(f) for all s >= s0."""
    if f.is_zero:
        raise ValueError("undefined on the zero polynomial")
    target = nu.eval_poly(f)
    s0 = Fraction(0)
    for beta in _downset(f.support()):
        if sum(beta) == 0:
            continue
        val = nu.eval_poly(_shifted_truncation(f, beta))
        if val < target:
            s0 = max(s0, Fraction(target - val, sum(beta)))
    return s0
