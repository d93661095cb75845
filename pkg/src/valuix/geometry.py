"""Exact convex-polyhedral geometry over Q^n.

Everything here is a value type built on ``fractions.Fraction``: Newton
regions (convex hulls of finitely many nonnegative rational points plus the
positive orthant), their facet descriptions, support values, Minkowski sums,
and exact covolumes of the bounded complement.  No floating point anywhere.

The supported regime is small ambient dimension (n <= 4); the double
description and volume recursions below degrade combinatorially beyond that.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

Vec = tuple[Fraction, ...]
IntVec = tuple[int, ...]

MAX_DIM = 4


class GeometryError(ValueError):
    pass


class NonPrimaryError(GeometryError):
    """Raised when a bounded complement is required but does not exist."""


def to_vec(entries) -> Vec:
    return tuple(Fraction(e) for e in entries)


def dot(a, b) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def vec_add(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def vec_scale(a: Vec, c) -> Vec:
    c = Fraction(c)
    return tuple(x * c for x in a)


def primitive(v) -> IntVec:
    """Scale a rational vector by a positive factor to a primitive integer one."""
    v = [Fraction(x) for x in v]
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def matrix_rank(rows) -> int:
    """Exact rank of a list of rational vectors."""
    rows = [list(map(Fraction, r)) for r in rows]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    col = 0
    while col < ncols and rank < len(rows):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [x * inv for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def solve_linear(matrix, rhs):
    """Solve a square rational system exactly; returns None if singular."""
    n = len(matrix)
    aug = [list(map(Fraction, row)) + [Fraction(rhs[i])] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((i for i in range(col, n) if aug[i][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return tuple(aug[i][n] for i in range(n))


# ---------------------------------------------------------------------------
# Double description: extreme rays of a pointed cone {x : <a, x> >= 0}.
# ---------------------------------------------------------------------------

def cone_extreme_rays(constraints, dim: int) -> list[IntVec]:
    """Extreme rays of ``{x in R^dim : <a, x> >= 0 for all a in constraints}``.

    The cone must be pointed.  Rays come back as primitive integer vectors in
    a deterministic (sorted) order.
    """
    constraints = [to_vec(a) for a in constraints]
    # rays: list of (vector, frozenset of indices of processed constraints tight at it)
    rays: list[tuple[Vec, set[int]]] = []
    lineality: list[Vec] = [
        tuple(Fraction(1 if i == j else 0) for j in range(dim)) for i in range(dim)
    ]
    for idx, a in enumerate(constraints):
        pivot_idx = next((k for k, l in enumerate(lineality) if dot(a, l) != 0), None)
        if pivot_idx is not None:
            pivot = lineality.pop(pivot_idx)
            if dot(a, pivot) < 0:
                pivot = tuple(-x for x in pivot)
            lineality = [
                tuple(x - dot(a, l) / dot(a, pivot) * y for x, y in zip(l, pivot))
                for l in lineality
            ]
            lineality = [l for l in lineality if any(x != 0 for x in l)]
            new_rays = []
            for r, tight in rays:
                val = dot(a, r)
                r2 = tuple(x - val / dot(a, pivot) * y for x, y in zip(r, pivot))
                if any(x != 0 for x in r2):
                    new_rays.append((r2, tight | {idx}))
            new_rays.append((pivot, set(range(idx))))
            rays = new_rays
            continue
        plus, zero, minus = [], [], []
        for r, tight in rays:
            val = dot(a, r)
            if val > 0:
                plus.append((r, tight, val))
            elif val < 0:
                minus.append((r, tight, val))
            else:
                zero.append((r, tight | {idx}))
        if not minus:
            rays = [(r, t) for r, t, _ in plus] + zero
            continue
        kept = [(r, t) for r, t, _ in plus] + zero
        all_current = [(r, t) for r, t, _ in plus] + [(r, t) for r, t in zero] + [
            (r, t) for r, t, _ in minus
        ]
        for (rp, tp, vp), (rm, tm, vm) in itertools.product(plus, minus):
            common = tp & tm
            adjacent = True
            for r3, t3 in all_current:
                if r3 is rp or r3 is rm:
                    continue
                if common <= t3:
                    adjacent = False
                    break
            if not adjacent:
                continue
            new = tuple(vp * x - vm * y for x, y in zip(rm, rp))
            kept.append((new, common | {idx}))
        rays = kept
    if lineality:
        raise GeometryError("cone is not pointed")
    seen = {}
    for r, _ in rays:
        p = primitive(r)
        if any(x != 0 for x in p):
            seen[p] = True
    return sorted(seen)


# ---------------------------------------------------------------------------
# Exact volume of a bounded polytope given by inequalities <a, x> <= b.
# Lasserre's recursion: V = (1/d) sum_i b_i/|a_{i,t}| * V_{d-1}(facet_i
# eliminated in coordinate t).
# ---------------------------------------------------------------------------

def _normalize_constraints(constraints):
    best = {}
    for a, b in constraints:
        a = tuple(Fraction(x) for x in a)
        b = Fraction(b)
        if all(x == 0 for x in a):
            if b < 0:
                return None
            continue
        p = primitive(a)
        scale = next(Fraction(x, y) for x, y in zip(p, a) if y != 0)
        b2 = b * scale
        if p in best:
            best[p] = min(best[p], b2)
        else:
            best[p] = b2
    return sorted(best.items())


def polytope_volume(constraints, dim: int) -> Fraction:
    """Exact volume of ``{x : <a, x> <= b}``; 0 if empty or degenerate."""
    norm = _normalize_constraints(constraints)
    if norm is None:
        return Fraction(0)
    if dim == 0:
        return Fraction(1)
    if dim == 1:
        lower, upper = None, None
        for (a,), b in norm:
            if a > 0:
                v = Fraction(b, a)
                upper = v if upper is None else min(upper, v)
            else:
                v = Fraction(b, a)
                lower = v if lower is None else max(lower, v)
        if lower is None or upper is None:
            raise GeometryError("unbounded polytope")
        return max(Fraction(0), upper - lower)
    total = Fraction(0)
    for i, (a, b) in enumerate(norm):
        t = next(k for k, x in enumerate(a) if x != 0)
        at = a[t]
        reduced = []
        for j, (a2, b2) in enumerate(norm):
            if j == i:
                continue
            f = Fraction(a2[t], at)
            new_a = tuple(x - f * y for k, (x, y) in enumerate(zip(a2, a)) if k != t)
            new_b = b2 - f * b
            reduced.append((new_a, new_b))
        sub = polytope_volume(reduced, dim - 1)
        if sub != 0:
            total += Fraction(b, abs(at)) * sub
    return total / dim


# ---------------------------------------------------------------------------
# Newton regions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NewtonRegion:
    """conv(generators) + Q^n_{>=0}, with a cached facet description.

    ``facets`` lists pairs (primitive integer normal, positive rational
    offset); membership within the orthant is ``<normal, m> >= offset`` for
    every facet.  The trivial region (containing the origin) has no facets.
    """

    dim: int
    generators: tuple[Vec, ...]
    facets: tuple[tuple[IntVec, Fraction], ...]

    @property
    def is_trivial(self) -> bool:
        return not self.facets

    def support_value(self, w) -> Fraction:
        """min over generators of <w, m>; equals inf over the region for w >= 0."""
        w = to_vec(w)
        if len(w) != self.dim:
            raise GeometryError("dimension mismatch")
        if any(x < 0 for x in w):
            raise GeometryError("support values require w >= 0")
        return min(dot(w, g) for g in self.generators)

    def contains(self, m, strict: bool = False) -> bool:
        m = to_vec(m)
        if len(m) != self.dim:
            raise GeometryError("dimension mismatch")
        if any(x < 0 for x in m):
            raise GeometryError("membership test requires m >= 0")
        for normal, offset in self.facets:
            val = dot(normal, m)
            if strict:
                if val <= offset:
                    return False
            elif val < offset:
                return False
        return True

    def contains_region(self, other: "NewtonRegion") -> bool:
        """True iff ``other`` is a subset of this region."""
        return all(self.contains(g) for g in other.generators)

    def is_primary(self) -> bool:
        """True iff the complement in the orthant is bounded."""
        return all(all(x > 0 for x in normal) for normal, _ in self.facets)

    def axis_bounds(self) -> tuple[Fraction, ...]:
        """Per axis, the smallest t with t*e_i in the region."""
        if self.is_trivial:
            return tuple(Fraction(0) for _ in range(self.dim))
        bounds = []
        for i in range(self.dim):
            vals = []
            for normal, offset in self.facets:
                if normal[i] == 0:
                    raise NonPrimaryError("complement of the region is unbounded")
                vals.append(Fraction(offset, normal[i]))
            bounds.append(max(vals))
        return tuple(bounds)

    def scale(self, c) -> "NewtonRegion":
        c = Fraction(c)
        if c <= 0:
            raise GeometryError("scale factor must be positive")
        gens = tuple(vec_scale(g, c) for g in self.generators)
        facets = tuple((n, off * c) for n, off in self.facets)
        return NewtonRegion(self.dim, gens, facets)

    def minkowski_sum(self, other: "NewtonRegion") -> "NewtonRegion":
        if self.dim != other.dim:
            raise GeometryError("dimension mismatch")
        sums = {vec_add(a, b) for a in self.generators for b in other.generators}
        return region_from_points(_prune_dominated(sums))

    def union_hull(self, other: "NewtonRegion") -> "NewtonRegion":
        if self.dim != other.dim:
            raise GeometryError("dimension mismatch")
        return region_from_points(set(self.generators) | set(other.generators))

    def covolume(self) -> Fraction:
        """Exact volume of the bounded complement (orthant minus region)."""
        if self.is_trivial:
            return Fraction(0)
        bounds = self.axis_bounds()
        constraints = []
        for i in range(self.dim):
            e = [Fraction(0)] * self.dim
            e[i] = Fraction(-1)
            constraints.append((tuple(e), Fraction(0)))
            e = [Fraction(0)] * self.dim
            e[i] = Fraction(1)
            constraints.append((tuple(e), bounds[i]))
        for normal, offset in self.facets:
            constraints.append((tuple(-Fraction(x) for x in normal), -offset))
        box = Fraction(1)
        for b in bounds:
            box *= b
        return box - polytope_volume(constraints, self.dim)


def _prune_dominated(points) -> set[Vec]:
    pts = set(points)
    out = set()
    for p in pts:
        if not any(q != p and all(a <= b for a, b in zip(q, p)) for q in pts):
            out.add(p)
    return out


def region_from_points(points) -> NewtonRegion:
    """Canonical Newton region of a nonempty set of nonnegative points."""
    pts = {to_vec(p) for p in points}
    if not pts:
        raise GeometryError("need at least one point")
    dims = {len(p) for p in pts}
    if len(dims) != 1:
        raise GeometryError("dimension mismatch")
    (n,) = dims
    if n < 1 or n > MAX_DIM:
        raise GeometryError(f"supported ambient dimension is 1..{MAX_DIM}")
    if any(x < 0 for p in pts for x in p):
        raise GeometryError("points must be componentwise nonnegative")
    zero = tuple(Fraction(0) for _ in range(n))
    if zero in pts:
        return NewtonRegion(n, (zero,), ())
    pts = _prune_dominated(pts)
    # Facets of conv(pts)+orthant via the dual cone of the homogenization.
    constraints = [tuple(p) + (Fraction(1),) for p in pts]
    for i in range(n):
        e = [Fraction(0)] * (n + 1)
        e[i] = Fraction(1)
        constraints.append(tuple(e))
    facets = []
    for ray in cone_extreme_rays(constraints, n + 1):
        w, c = ray[:n], ray[n]
        if all(x == 0 for x in w) or c >= 0:
            continue
        normal = primitive(w)
        scale = next(Fraction(x, y) for x, y in zip(normal, w) if y != 0)
        facets.append((normal, -Fraction(c) * scale))
    facets.sort()
    # Vertices: generators where tight facets plus tight coordinate planes span.
    gens = []
    for p in sorted(pts):
        tight = [normal for normal, offset in facets if dot(normal, p) == offset]
        for i in range(n):
            if p[i] == 0:
                e = [0] * n
                e[i] = 1
                tight.append(tuple(e))
        if matrix_rank(tight) == n:
            gens.append(p)
    return NewtonRegion(n, tuple(gens), tuple(facets))


def orthant_region(n: int) -> NewtonRegion:
    """The trivial region (whole orthant, zero divisor)."""
    return region_from_points([tuple(0 for _ in range(n))])


def simplex_region(n: int, size=1) -> NewtonRegion:
    """Region of the ideal m^size: conv(size * e_i) + orthant."""
    size = Fraction(size)
    pts = []
    for i in range(n):
        e = [Fraction(0)] * n
        e[i] = size
        pts.append(tuple(e))
    return region_from_points(pts)


def polyhedron_vertices(constraints, dim: int) -> list[Vec]:
    """Vertices of ``{x >= 0 : <a, x> >= b}`` whose recession is the orthant.

    Homogenizes and runs the double description; recession rays are dropped.
    """
    cone_constraints = []
    for i in range(dim):
        e = [Fraction(0)] * (dim + 1)
        e[i] = Fraction(1)
        cone_constraints.append(tuple(e))
    e = [Fraction(0)] * (dim + 1)
    e[dim] = Fraction(1)
    cone_constraints.append(tuple(e))
    for a, b in constraints:
        cone_constraints.append(tuple(Fraction(x) for x in a) + (-Fraction(b),))
    verts = []
    for ray in cone_extreme_rays(cone_constraints, dim + 1):
        if ray[dim] > 0:
            verts.append(tuple(Fraction(x, ray[dim]) for x in ray[:dim]))
    return sorted(verts)
