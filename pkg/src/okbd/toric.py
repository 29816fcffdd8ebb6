"""Brute-force ground truth on smooth complete toric surfaces.

Sections of O(sum c_i D_i) are the characters u with <u, v_i> >= -c_i for
every ray v_i, so every count here is a lattice-point enumeration. Nothing
in this module uses the Zariski or chamber machinery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import FlagError, InputError, NoFanError
from .lattice import SurfaceModel, as_vector, intersect, solve
from .zariski import NEG_INF


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def hull(points) -> list:
    """Counterclockwise convex hull of exact rational points (monotone chain)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def hull_area(vertices) -> Fraction:
    n = len(vertices)
    twice = sum(vertices[i][0] * vertices[(i + 1) % n][1] - vertices[(i + 1) % n][0] * vertices[i][1] for i in range(n))
    return Fraction(twice, 2) if n > 2 else Fraction(0)


def _require_fan(model: SurfaceModel):
    if not model.toric_fan:
        raise NoFanError(f"model {model.name} has no toric fan")
    return model.toric_fan


def invariant_coefficients(model: SurfaceModel, D) -> tuple[Fraction, ...]:
    """A torus-invariant representative sum c_i D_i of the class D.

    Coefficients on one adjacent pair of rays are set to zero; the other
    ray classes then form a basis of the lattice.
    """
    fan = _require_fan(model)
    D = as_vector(D)
    k = len(fan)
    classes = [model.curve(r.curve).vector for r in fan]
    if k - 2 != model.rank:
        raise InputError(f"fan with {k} rays does not match Picard rank {model.rank}")
    for i in range(k):
        keep = [j for j in range(k) if j not in (i, (i + 1) % k)]
        matrix = [[classes[j][row] for j in keep] for row in range(model.rank)]
        try:
            sol = solve(matrix, D)
        except InputError:
            continue
        coeffs = [Fraction(0)] * k
        for j, c in zip(keep, sol):
            coeffs[j] = c
        return tuple(coeffs)
    raise InputError("ray classes do not span the lattice")


@dataclass(frozen=True)
class DivisorPolytope:
    """{u in R^2 : <u, v_i> >= -c_i for all i}.

    Lattice-point methods need integer c_i; vertices and area work for
    rational ones.
    """

    constraints: tuple[tuple[tuple[int, int], int], ...]

    def vertices(self) -> list[tuple[Fraction, Fraction]]:
        pts = []
        cons = self.constraints
        for i in range(len(cons)):
            for j in range(i + 1, len(cons)):
                (a, c1), (b, c2) = cons[i], cons[j]
                det = a[0] * b[1] - a[1] * b[0]
                if det == 0:
                    continue
                # a.u = -c1, b.u = -c2
                x = Fraction(-c1 * b[1] + c2 * a[1], det)
                y = Fraction(-a[0] * c2 + b[0] * c1, det)
                if all(v[0] * x + v[1] * y >= -c for v, c in cons):
                    pts.append((x, y))
        return hull(pts)

    def columns(self) -> Iterator[tuple[int, int, int]]:
        """(x, lowest y, highest y) for every nonempty column of lattice points."""
        verts = self.vertices()
        if not verts:
            return
        xmin = math.ceil(min(v[0] for v in verts))
        xmax = math.floor(max(v[0] for v in verts))
        for x in range(xmin, xmax + 1):
            lo, hi = None, None
            for (v0, v1), c in self.constraints:
                rhs = -c - v0 * x  # need v1 * y >= rhs
                if v1 > 0:
                    b = -((-rhs) // v1)
                    lo = b if lo is None else max(lo, b)
                elif v1 < 0:
                    b = rhs // v1
                    hi = b if hi is None else min(hi, b)
                elif rhs > 0:
                    lo, hi = 1, 0
                    break
            if lo is not None and hi is not None and lo <= hi:
                yield x, lo, hi

    def lattice_points(self) -> Iterator[tuple[int, int]]:
        for x, lo, hi in self.columns():
            for y in range(lo, hi + 1):
                yield x, y

    def count(self) -> int:
        return sum(hi - lo + 1 for _, lo, hi in self.columns())

def divisor_polytope(model: SurfaceModel, D, m: int = 1) -> DivisorPolytope:
    """Polytope of the round-down of m*D, for the invariant representative."""
    fan = _require_fan(model)
    coeffs = invariant_coefficients(model, D)
    return DivisorPolytope(tuple((r.ray, math.floor(m * c)) for r, c in zip(fan, coeffs)))


def polytope_volume(model: SurfaceModel, D) -> Fraction:
    """2 * Euclidean area of the polytope of D: the exact toric volume."""
    fan = _require_fan(model)
    coeffs = invariant_coefficients(model, D)
    return 2 * hull_area(DivisorPolytope(tuple((r.ray, c) for r, c in zip(fan, coeffs))).vertices())


def polytope_okounkov_vertices(model: SurfaceModel, D, flag_label: str, point_label: str) -> list:
    """Exact Okounkov body for an invariant flag: the image of the polytope
    of D under the monomial valuation."""
    nu = _valuation_map(model, D, flag_label, point_label, 1, rounding=False)
    fan = _require_fan(model)
    coeffs = invariant_coefficients(model, D)
    poly = DivisorPolytope(tuple((r.ray, c) for r, c in zip(fan, coeffs)))
    return hull(nu(x, y) for x, y in poly.vertices())


def h0_count(model: SurfaceModel, D, m: int = 1) -> int:
    if m < 1:
        raise InputError("m must be a positive integer")
    return divisor_polytope(model, D, m).count()


def volume_estimate(model: SurfaceModel, D, m_max: int) -> list[Fraction]:
    """2 h^0(mD) / m^2 for m = 1 .. m_max."""
    return [Fraction(2 * h0_count(model, D, m), m * m) for m in range(1, m_max + 1)]


def _ray_index(model: SurfaceModel, label: str) -> int:
    fan = _require_fan(model)
    for i, r in enumerate(fan):
        if r.curve == label:
            return i
    raise FlagError(f"{label} is not a torus-invariant curve of {model.name}")


def fiber_direction(model: SurfaceModel, fiber_label: str) -> tuple[int, int]:
    """Primitive w with +-w both rays, such that the fiber ray is alone on its
    side of the line through w (so the fiber over that point is irreducible)."""
    fan = _require_fan(model)
    rho = fan[_ray_index(model, fiber_label)].ray
    rays = [r.ray for r in fan]
    for w in rays:
        if (-w[0], -w[1]) not in rays:
            continue
        side = w[0] * rho[1] - w[1] * rho[0]
        if abs(side) != 1:
            continue
        same_side = [v for v in rays if (w[0] * v[1] - w[1] * v[0]) * side > 0]
        if same_side == [rho]:
            return w
    raise FlagError(f"{fiber_label} is not the fiber of a toric fibration to P^1")


def restricted_section_dim(model: SurfaceModel, D, fiber_label: str, m: int = 1) -> int:
    """dim of the image of H^0(mD) in H^0 of a general fiber.

    Characters restrict to the fiber torus through their pairing with the
    fiber direction, so the image is spanned by one monomial per distinct
    value of <u, w>.
    """
    w = fiber_direction(model, fiber_label)
    return len({x * w[0] + y * w[1] for x, y in divisor_polytope(model, D, m).lattice_points()})


def _valuation_map(model, D, flag_label, point_label, m, rounding=True):
    fan = _require_fan(model)
    i = _ray_index(model, flag_label)
    j = _ray_index(model, point_label)
    if j not in ((i - 1) % len(fan), (i + 1) % len(fan)):
        raise FlagError(f"{point_label} does not meet {flag_label} in a fixed point")
    coeffs = invariant_coefficients(model, D)
    ci, cj = m * coeffs[i], m * coeffs[j]
    if rounding:
        ci, cj = math.floor(ci), math.floor(cj)
    vi, vj = fan[i].ray, fan[j].ray

    def nu(x, y):
        # orders of vanishing of div(chi^u) + mD along the flag curve, then
        # along the transversal invariant curve through the fixed point
        return Fraction(vi[0] * x + vi[1] * y + ci, m), Fraction(vj[0] * x + vj[1] * y + cj, m)

    return nu


def okounkov_via_monomials(model: SurfaceModel, D, flag_label: str, point_label: str, m: int = 1) -> set:
    """Rescaled valuation vectors of the monomial basis of H^0(mD) for the
    flag D_flag > D_flag meet D_point."""
    nu = _valuation_map(model, D, flag_label, point_label, m)
    return {nu(x, y) for x, y in divisor_polytope(model, D, m).lattice_points()}


def monomial_hull(model: SurfaceModel, D, flag_label: str, point_label: str, m: int = 1) -> list:
    """Vertices of the convex hull of ``okounkov_via_monomials``.

    The valuation is an affine bijection of the character lattice, so only
    the column extremes of the polytope are needed.
    """
    nu = _valuation_map(model, D, flag_label, point_label, m)
    extremes = []
    for x, lo, hi in divisor_polytope(model, D, m).columns():
        extremes += [nu(x, lo), nu(x, hi)]
    return hull(extremes)


def monomial_flag(model: SurfaceModel, flag) -> tuple[str, str] | None:
    """Invariant fixed point matching an engine flag, or None if the monomial
    body would differ from the engine's.

    A generic engine point is matched by an adjacent ray whose curve has
    nonnegative square: such a curve never enters a negative part, so its
    presence at the point leaves the body unchanged.
    """
    fan = _require_fan(model)
    i = _ray_index(model, flag.curve.label)
    neighbours = [fan[(i - 1) % len(fan)].curve, fan[(i + 1) % len(fan)].curve]
    if not flag.generic_point:
        if flag.point_on not in neighbours:
            return None
        through = [c.label for c in model.curves if c.flag_multiplicity > 0 and c.label != flag.curve.label]
        return (flag.curve.label, flag.point_on) if through == [flag.point_on] else None
    for label in neighbours:
        c = model.curve(label)
        if intersect(model, c, c) >= 0:
            return flag.curve.label, label
    return None


def kappa_estimate(model: SurfaceModel, D, m_max: int = 20):
    """Growth exponent of h^0(mD) from exact counts up to m_max."""
    counts = {m: h0_count(model, D, m) for m in range(1, m_max + 1)}
    positive = [m for m, h in counts.items() if h > 0]
    if not positive:
        return NEG_INF
    top = max(positive)
    half = max((m for m in positive if 2 * m <= top), default=None)
    if half is None:
        return 0
    ratio = counts[top] / counts[half]
    k = round(math.log(ratio) / math.log(top / half))
    return max(0, min(2, k))
