"""Simplicial rational fans refining the positive orthant.

These encode toric simple modifications: rays are primitive integer vectors,
maximal cones are full-dimensional and simplicial.  Monomial blow-ups are
stellar subdivisions; dual complexes collect the strictly interior rays with
their normalization factors; piecewise-linear functions on a fan play the
role of Cartier divisors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from valuix.geometry import (
    GeometryError,
    IntVec,
    NewtonRegion,
    Vec,
    cone_extreme_rays,
    dot,
    matrix_rank,
    primitive,
    solve_linear,
    to_vec,
)
from valuix.valuations import MonomialValuation


class FanError(ValueError):
    pass


def _det(matrix) -> Fraction:
    n = len(matrix)
    rows = [list(map(Fraction, r)) for r in matrix]
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if rows[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det *= rows[col][col]
        inv = 1 / rows[col][col]
        rows[col] = [x * inv for x in rows[col]]
        for i in range(col + 1, n):
            if rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[col])]
    return det


def _solve_coefficients(rays, target):
    """Coefficients expressing target as a combination of the given rays.

    Returns None when the system is inconsistent.  The rays must be linearly
    independent.
    """
    n = len(target)
    k = len(rays)
    aug = [[Fraction(rays[j][i]) for j in range(k)] + [Fraction(target[i])] for i in range(n)]
    pivots = []
    row = 0
    for col in range(k):
        piv = next((i for i in range(row, n) if aug[i][col] != 0), None)
        if piv is None:
            return None
        aug[row], aug[piv] = aug[piv], aug[row]
        inv = 1 / aug[row][col]
        aug[row] = [x * inv for x in aug[row]]
        for i in range(n):
            if i != row and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[row])]
        pivots.append(row)
        row += 1
    for i in range(row, n):
        if aug[i][k] != 0:
            return None
    return tuple(aug[r][k] for r in pivots)


def _cone_facets(rays):
    """Facet descriptions of cone(rays) within its linear span.

    Returns a list of tight-index sets, one per facet.
    """
    rays = list(rays)
    k = matrix_rank(rays)
    basis = []
    for r in rays:
        if matrix_rank(basis + [r]) > len(basis):
            basis.append(r)
        if len(basis) == k:
            break
    coords = [_solve_coefficients(basis, r) for r in rays]
    duals = cone_extreme_rays(coords, k)
    facets = []
    for w in duals:
        tight = frozenset(i for i, c in enumerate(coords) if dot(w, c) == 0)
        facets.append(tight)
    return facets


def _pulling_triangulation(rays):
    """Deterministic triangulation of cone(rays) using only its rays."""
    rays = tuple(sorted(rays))
    k = matrix_rank(rays)
    if len(rays) == k:
        return [rays]
    v = rays[0]
    out = []
    for tight in sorted(_cone_facets(rays), key=sorted):
        if 0 in tight:
            continue
        sub = tuple(rays[i] for i in sorted(tight))
        for simplex in _pulling_triangulation(sub):
            out.append(tuple(sorted(simplex + (v,))))
    return out


@dataclass(frozen=True)
class Fan:
    """Simplicial fan with full-dimensional maximal cones covering the orthant."""

    dim: int
    rays: tuple[IntVec, ...]
    cones: tuple[tuple[int, ...], ...]  # maximal cones as sorted ray indices

    def __post_init__(self):
        for cone in self.cones:
            if len(cone) != self.dim:
                raise FanError("maximal cones must be simplicial and full-dimensional")

    def ray_matrix(self, cone) -> list[IntVec]:
        return [self.rays[i] for i in cone]

    def find_cone(self, w):
        """Index of a maximal cone containing w, with its coefficients."""
        w = to_vec(w)
        for ci, cone in enumerate(self.cones):
            lam = _solve_coefficients(self.ray_matrix(cone), w)
            if lam is not None and all(x >= 0 for x in lam):
                return ci, lam
        raise FanError("weight vector lies outside the fan")

    def interior_ray_indices(self) -> list[int]:
        return [i for i, r in enumerate(self.rays) if all(x > 0 for x in r)]

    def faces(self):
        """All nonempty faces of maximal cones, as sorted index tuples."""
        seen = set()
        for cone in self.cones:
            for size in range(1, len(cone) + 1):
                for sub in itertools.combinations(cone, size):
                    seen.add(sub)
        return sorted(seen)

    def is_smooth(self) -> bool:
        return all(abs(_det(self.ray_matrix(c))) == 1 for c in self.cones)

    def refines(self, other: "Fan") -> bool:
        """Every maximal cone of self sits inside a maximal cone of other."""
        for cone in self.cones:
            inner = [Fraction(0)] * self.dim
            for r in self.ray_matrix(cone):
                inner = [a + b for a, b in zip(inner, r)]
            ci, _ = other.find_cone(inner)
            normals = _dual_normals(other.ray_matrix(other.cones[ci]), other.dim)
            for r in self.ray_matrix(cone):
                if any(dot(nrm, r) < 0 for nrm in normals):
                    return False
        return True


def _dual_normals(rays, dim):
    return cone_extreme_rays(rays, dim)


def orthant_fan(n: int) -> Fan:
    rays = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        rays.append(tuple(e))
    return Fan(n, tuple(rays), (tuple(range(n)),))


def star_subdivision(fan: Fan, cone, new_ray) -> Fan:
    """Stellar subdivision at a primitive ray interior to the given face."""
    face = tuple(sorted(cone))
    new_ray = primitive(new_ray)
    if new_ray in fan.rays:
        raise FanError("new ray already present in the fan")
    lam = _solve_coefficients([fan.rays[i] for i in face], new_ray)
    if lam is None or any(x <= 0 for x in lam):
        raise FanError("new ray is not interior to the named cone")
    rays = fan.rays + (new_ray,)
    new_idx = len(fan.rays)
    cones = []
    for c in fan.cones:
        if set(face) <= set(c):
            for f in face:
                cones.append(tuple(sorted((set(c) - {f}) | {new_idx})))
        else:
            cones.append(c)
    return Fan(fan.dim, rays, tuple(sorted(set(cones))))


def _fan_from_pieces(dim, pieces) -> Fan:
    """Assemble a simplicial fan from full-dimensional cones given by rays."""
    simplices = set()
    for rays in pieces:
        for s in _pulling_triangulation(tuple(rays)):
            simplices.add(s)
    all_rays = sorted({r for s in simplices for r in s})
    index = {r: i for i, r in enumerate(all_rays)}
    cones = sorted({tuple(sorted(index[r] for r in s)) for s in simplices})
    return Fan(dim, tuple(all_rays), tuple(cones))


def common_refinement(f1: Fan, f2: Fan) -> Fan:
    if f1.dim != f2.dim:
        raise GeometryError("dimension mismatch")
    n = f1.dim
    pieces = []
    for c1 in f1.cones:
        n1 = _dual_normals(f1.ray_matrix(c1), n)
        for c2 in f2.cones:
            n2 = _dual_normals(f2.ray_matrix(c2), n)
            rays = cone_extreme_rays(list(n1) + list(n2), n)
            if rays and matrix_rank(rays) == n:
                pieces.append(tuple(sorted(rays)))
    return _fan_from_pieces(n, set(pieces))


def normal_fan(region: NewtonRegion) -> Fan:
    """Fan of linearity domains of w -> support_value(region, w)."""
    n = region.dim
    if region.is_trivial:
        return orthant_fan(n)
    pieces = []
    gens = region.generators
    for v in gens:
        constraints = []
        for i in range(n):
            e = [Fraction(0)] * n
            e[i] = Fraction(1)
            constraints.append(tuple(e))
        for v2 in gens:
            if v2 != v:
                constraints.append(tuple(b - a for a, b in zip(v, v2)))
        rays = cone_extreme_rays(constraints, n)
        if rays and matrix_rank(rays) == n:
            pieces.append(tuple(sorted(rays)))
    return _fan_from_pieces(n, set(pieces))


def normal_fan_refinement(regions) -> Fan:
    """A fan on which every given region's support function is linear per cone."""
    regions = list(regions)
    if not regions:
        raise GeometryError("need at least one region")
    fan = orthant_fan(regions[0].dim)
    for region in regions:
        fan = common_refinement(fan, normal_fan(region))
    return fan


@dataclass(frozen=True)
class PLFunction:
    """Piecewise-linear function on a fan, determined by its ray values."""

    fan: Fan
    values: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))
        if len(self.values) != len(self.fan.rays):
            raise FanError("one value per ray required")

    def evaluate(self, w) -> Fraction:
        ci, lam = self.fan.find_cone(w)
        return sum(
            (l * self.values[i] for l, i in zip(lam, self.fan.cones[ci])), Fraction(0)
        )

    def is_nef(self) -> bool:
        """Convexity across interior walls plus nonpositivity on rays."""
        if any(v > 0 for v in self.values):
            return False
        cones = self.fan.cones
        for a, b in itertools.combinations(range(len(cones)), 2):
            shared = set(cones[a]) & set(cones[b])
            if len(shared) != self.fan.dim - 1:
                continue
            opposite = next(iter(set(cones[b]) - shared))
            lam = _solve_coefficients(
                self.fan.ray_matrix(cones[a]), self.fan.rays[opposite]
            )
            if lam is None:
                continue
            extension = sum(
                (l * self.values[i] for l, i in zip(lam, cones[a])), Fraction(0)
            )
            if extension > self.values[opposite]:
                return False
        return True


def pl_from_region(region: NewtonRegion, fan: Fan) -> PLFunction:
    """The incarnation of -support_value(region, .) on the fan."""
    return PLFunction(fan, tuple(-region.support_value(r) for r in fan.rays))


@dataclass(frozen=True)
class DualComplex:
    """Strictly interior rays with normalization factors and simplicial faces."""

    fan: Fan
    vertices: tuple[int, ...]  # ray indices
    b_values: tuple[int, ...]
    faces: tuple[tuple[int, ...], ...]

    def normalized_valuation(self, ray_index: int) -> MonomialValuation:
        ray = self.fan.rays[ray_index]
        b = min(ray)
        return MonomialValuation(tuple(Fraction(x, b) for x in ray))

    def chart_coordinates(self, face, w) -> tuple[Fraction, ...]:
        """Integral affine coordinates t_i = b_i * lambda_i, scaled to sum 1."""
        rays = [self.fan.rays[i] for i in face]
        lam = _solve_coefficients(rays, to_vec(w))
        if lam is None or any(x < 0 for x in lam):
            raise FanError("weight vector is not in the face")
        t = [Fraction(min(r)) * l for r, l in zip(rays, lam)]
        total = sum(t, Fraction(0))
        if total == 0:
            raise FanError("weight vector is zero")
        return tuple(x / total for x in t)


def dual_complex(fan: Fan) -> DualComplex:
    interior = fan.interior_ray_indices()
    interior_set = set(interior)
    faces = tuple(f for f in fan.faces() if set(f) <= interior_set)
    return DualComplex(
        fan,
        tuple(interior),
        tuple(min(fan.rays[i]) for i in interior),
        faces,
    )


def retract_check(nu, fan: Fan) -> MonomialValuation:
    """Retraction of a (shifted-)monomial valuation through a toric model.

    Locates the chart whose dual-basis monomials all take nonnegative values
    and reads the monomial weights there; the result always coincides with
    the plain monomial retraction for the representable classes.
    """
    v = to_vec(nu.coordinate_values())
    ci, lam = fan.find_cone(v)
    rays = fan.ray_matrix(fan.cones[ci])
    det = _det(rays)
    if abs(det) == 1:
        # chart coordinates for a smooth cone: dual basis values must be >= 0
        assert all(x >= 0 for x in lam)
        reconstructed = [Fraction(0)] * fan.dim
        for l, r in zip(lam, rays):
            reconstructed = [a + l * b for a, b in zip(reconstructed, r)]
        assert tuple(reconstructed) == tuple(v)
    return MonomialValuation(v)
