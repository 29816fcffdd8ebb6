"""Okounkov bodies of big classes on surfaces, computed by slicing along the
flag curve through the Zariski chambers of D - t*C."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import FlagError, InputError, InternalConsistencyError, NotBigError, NotPseudoEffectiveError
from .lattice import DivisorClass, NamedCurve, SurfaceModel, intersect
from .scalar import AlgebraicScalar, sqrt, to_fraction
from .zariski import decompose_family, zariski_decompose

S = AlgebraicScalar
Point = tuple  # (AlgebraicScalar, AlgebraicScalar)


@dataclass(frozen=True)
class Flag:
    """Admissible flag X > C > {x} on a surface.

    Either ``point_on`` names a curve through x (and the declared
    flag multiplicities say which curves pass through x), or the point is
    generic and avoids every other declared curve.
    """

    curve: NamedCurve
    point_on: str | None = None
    generic_point: bool = True

    def __init__(self, curve: NamedCurve, point_on: str | None = None, generic_point: bool | None = None):
        if generic_point is None:
            generic_point = point_on is None
        if bool(generic_point) == (point_on is not None):
            raise FlagError("exactly one of point_on and generic_point must be active")
        object.__setattr__(self, "curve", curve)
        object.__setattr__(self, "point_on", point_on)
        object.__setattr__(self, "generic_point", bool(generic_point))

    def multiplicity(self, curve: NamedCurve) -> int:
        """Local intersection number of ``curve`` with the flag curve at x."""
        if self.generic_point or curve.label == self.curve.label:
            return 0
        return curve.flag_multiplicity

    def check(self, model: SurfaceModel) -> None:
        if not model.has_curve(self.curve.label):
            raise FlagError(f"flag curve {self.curve.label} is not a declared curve")
        if self.point_on is None:
            return
        through = model.curve(self.point_on)
        if through.label == self.curve.label or through.flag_multiplicity <= 0:
            raise FlagError(f"curve {self.point_on} is not declared to pass through the flag point")
        for c in model.curves:
            if c.label != self.curve.label and c.flag_multiplicity > max(intersect(model, c, self.curve), 0):
                raise FlagError(
                    f"{c.label} has flag_multiplicity {c.flag_multiplicity} > {c.label}.{self.curve.label}"
                )


@dataclass(frozen=True)
class ValuationVector:
    nu1: Fraction
    nu2: Fraction


@dataclass(frozen=True)
class EffectiveRepresentative:
    terms: tuple[tuple[NamedCurve, Fraction], ...]

    def __init__(self, terms: Iterable):
        terms = tuple((c, to_fraction(a)) for c, a in terms)
        if any(a < 0 for _, a in terms):
            raise InputError("effective representative needs nonnegative coefficients")
        object.__setattr__(self, "terms", terms)

    def divisor_class(self, rank: int) -> DivisorClass:
        total = DivisorClass.zero(rank)
        for c, a in self.terms:
            total = total + c.divisor * a
        return total


def valuation(model: SurfaceModel, rep: EffectiveRepresentative, flag: Flag) -> ValuationVector:
    """(order along the flag curve, order at x of the rest restricted to it)."""
    nu1 = sum((a for c, a in rep.terms if c.label == flag.curve.label), Fraction(0))
    nu2 = sum((a * flag.multiplicity(c) for c, a in rep.terms if c.label != flag.curve.label), Fraction(0))
    return ValuationVector(nu1, nu2)


# -- planar convex geometry over AlgebraicScalar ------------------------------


def _pt(p) -> Point:
    return (S.coerce(p[0]), S.coerce(p[1]))


def cross(o: Point, a: Point, b: Point) -> S:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: Iterable) -> list[Point]:
    """Counterclockwise hull vertices (no collinear points), starting from the
    lowest point of the leftmost column."""
    pts = sorted(set(_pt(p) for p in points))
    if len(pts) <= 2:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p).sign() <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p).sign() <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    return hull


def point_in_hull(hull: Sequence[Point], p) -> bool:
    p = _pt(p)
    if not hull:
        return False
    if len(hull) == 1:
        return hull[0] == p
    if len(hull) == 2:
        a, b = hull
        if cross(a, b, p).sign() != 0:
            return False
        return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    n = len(hull)
    return all(cross(hull[i], hull[(i + 1) % n], p).sign() >= 0 for i in range(n))


@dataclass(frozen=True)
class OkounkovPolygon:
    """{(t, y) : t_0 <= t <= t_k, alpha(t) <= y <= beta(t)}.

    alpha and beta are stored by their values at the breakpoints and are
    affine in between.
    """

    breakpoints: tuple[S, ...]
    lower: tuple[S, ...]
    upper: tuple[S, ...]

    def __init__(self, breakpoints, lower, upper):
        bps = tuple(S.coerce(t) for t in breakpoints)
        lo = tuple(S.coerce(v) for v in lower)
        hi = tuple(S.coerce(v) for v in upper)
        if not bps or len(bps) != len(lo) or len(bps) != len(hi):
            raise InputError("polygon needs matching breakpoint / boundary value lists")
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @property
    def mu(self) -> S:
        return self.breakpoints[-1]

    @property
    def start(self) -> S:
        return self.breakpoints[0]

    def segments(self, which: str = "lower") -> list[tuple[S, S]]:
        """(slope, intercept) of alpha (or beta) on each breakpoint interval."""
        values = self.lower if which == "lower" else self.upper
        out = []
        for i in range(len(self.breakpoints) - 1):
            t0, t1 = self.breakpoints[i], self.breakpoints[i + 1]
            slope = (values[i + 1] - values[i]) / (t1 - t0)
            out.append((slope, values[i] - slope * t0))
        return out

    def _eval(self, values, t) -> S:
        t = S.coerce(t)
        bps = self.breakpoints
        if t < bps[0] or t > bps[-1]:
            raise InputError(f"t = {t} outside [{bps[0]}, {bps[-1]}]")
        for i in range(len(bps) - 1):
            if t <= bps[i + 1]:
                t0, t1 = bps[i], bps[i + 1]
                return values[i] + (values[i + 1] - values[i]) * (t - t0) / (t1 - t0)
        return values[-1]

    def alpha(self, t) -> S:
        return self._eval(self.lower, t)

    def beta(self, t) -> S:
        return self._eval(self.upper, t)

    def vertices(self) -> list[Point]:
        pts = list(zip(self.breakpoints, self.lower)) + list(zip(self.breakpoints, self.upper))
        return convex_hull(pts)

    def area(self) -> S:
        total = S(0)
        for i in range(len(self.breakpoints) - 1):
            h0 = self.upper[i] - self.lower[i]
            h1 = self.upper[i + 1] - self.lower[i + 1]
            total = total + (h0 + h1) * (self.breakpoints[i + 1] - self.breakpoints[i]) * Fraction(1, 2)
        return total

    def contains_point(self, p) -> bool:
        t, y = _pt(p)
        if t < self.start or t > self.mu:
            return False
        return self.alpha(t) <= y <= self.beta(t)

    def violations(self) -> list[str]:
        """Broken polygon invariants (empty for a valid polygon)."""
        out = []
        bps = self.breakpoints
        if any(bps[i] >= bps[i + 1] for i in range(len(bps) - 1)):
            out.append("breakpoints not strictly increasing")
            return out
        if any(a > b for a, b in zip(self.lower, self.upper)):
            out.append("alpha > beta somewhere")
        if bps[0] == 0 and self.lower[0] < 0:
            out.append("alpha(0) < 0")
        lo = self.segments("lower")
        hi = self.segments("upper")
        if any(lo[i][0] > lo[i + 1][0] for i in range(len(lo) - 1)):
            out.append("alpha not convex")
        if any(hi[i][0] < hi[i + 1][0] for i in range(len(hi) - 1)):
            out.append("beta not concave")
        return out

    @classmethod
    def from_points(cls, points: Iterable) -> "OkounkovPolygon":
        """Convex hull of a finite point set, as a t-graph polygon."""
        hull = convex_hull(points)
        if not hull:
            raise InputError("empty point set")
        ts = sorted(set(p[0] for p in hull))
        n = len(hull)
        edges = [(hull[i], hull[(i + 1) % n]) for i in range(n)] if n > 1 else [(hull[0], hull[0])]
        lower, upper = [], []
        for t in ts:
            ys = []
            for a, b in edges:
                lo_t, hi_t = (a[0], b[0]) if a[0] <= b[0] else (b[0], a[0])
                if not (lo_t <= t <= hi_t):
                    continue
                if a[0] == b[0]:
                    ys.extend([a[1], b[1]])
                else:
                    ys.append(a[1] + (b[1] - a[1]) * (t - a[0]) / (b[0] - a[0]))
            lower.append(min(ys))
            upper.append(max(ys))
        return cls(ts, lower, upper)

    @classmethod
    def box(cls, width, height, offset=0) -> "OkounkovPolygon":
        """[0, width] x [offset, offset + height]."""
        width, height, offset = S.coerce(width), S.coerce(height), S.coerce(offset)
        if width == 0:
            return cls([0], [offset], [offset + height])
        return cls([0, width], [offset, offset], [offset + height, offset + height])

    def to_json(self) -> dict:
        return {
            "mu": self.mu.to_json(),
            "breakpoints": [t.to_json() for t in self.breakpoints],
            "lower": [v.to_json() for v in self.lower],
            "upper": [v.to_json() for v in self.upper],
            "vertices": [[x.to_json(), y.to_json()] for x, y in self.vertices()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "OkounkovPolygon":
        return cls(
            [S.from_json(t) for t in data["breakpoints"]],
            [S.from_json(v) for v in data["lower"]],
            [S.from_json(v) for v in data["upper"]],
        )


def polygon_area(p: OkounkovPolygon) -> S:
    return p.area()


def minkowski_sum(p: OkounkovPolygon, q: OkounkovPolygon) -> OkounkovPolygon:
    return OkounkovPolygon.from_points(
        (a[0] + b[0], a[1] + b[1]) for a in p.vertices() for b in q.vertices()
    )


def polygon_contains(p: OkounkovPolygon, q: OkounkovPolygon) -> bool:
    hull = p.vertices()
    return all(point_in_hull(hull, v) for v in q.vertices())


def polygons_equal(p: OkounkovPolygon, q: OkounkovPolygon) -> bool:
    return polygon_contains(p, q) and polygon_contains(q, p)


# -- the chamber method -------------------------------------------------------


def _smallest_root_after(a: Fraction, b: Fraction, c: Fraction, after: Fraction) -> S | None:
    """Smallest root of a s^2 + b s + c strictly greater than ``after``."""
    roots: list[S] = []
    if a == 0:
        if b != 0:
            roots.append(S(-c / b))
    else:
        disc = b * b - 4 * a * c
        if disc >= 0:
            r = sqrt(disc)
            roots.extend([(S(-b) - r) / (2 * a), (S(-b) + r) / (2 * a)])
    later = [r for r in roots if r > after]
    return min(later) if later else None


def okounkov_polygon(model: SurfaceModel, D, flag: Flag) -> OkounkovPolygon:
    """Okounkov body of a big class D with respect to ``flag``.

    For t in [0, mu], D - t*C = P_t + N_t; the lower boundary is the order of
    N_t|_C at the flag point and the upper one adds P_t.C.
    """
    D = model.divisor(D)
    flag.check(model)
    C = flag.curve
    try:
        z = zariski_decompose(model, D)
    except NotPseudoEffectiveError as exc:
        raise NotBigError(str(exc)) from None
    if intersect(model, z.positive, z.positive) <= 0:
        raise NotBigError(f"{D} is not big")
    if intersect(model, z.positive, C) == 0:
        raise FlagError(f"flag curve {C.label} lies in the augmented base locus of {D}")

    direction = -C.divisor
    t0 = Fraction(0)
    breakpoints: list[S] = []
    lower: list[S] = []
    upper: list[S] = []
    for _ in range(4 * len(model.curves) + 8):
        ch = decompose_family(model, D, direction, t0)
        alpha = [Fraction(0), Fraction(0)]
        for c, (a0, a1) in zip(ch.support, ch.coeffs):
            m = flag.multiplicity(c)
            alpha[0] += a0 * m
            alpha[1] += a1 * m
        width = ch.pair_positive(model, C)
        if not breakpoints:
            breakpoints.append(S(t0))
            lower.append(S(alpha[0] + alpha[1] * t0))
            upper.append(S(alpha[0] + width[0] + (alpha[1] + width[1]) * t0))

        wall = None
        for c in model.curves:
            if c in ch.support:
                continue
            v, k = ch.pair_positive(model, c)
            if k < 0:
                w = -v / k
                if w > t0 and (wall is None or w < wall):
                    wall = w
        end = _smallest_root_after(*ch.positive_square(model), t0)
        if end is None and wall is None:
            raise InternalConsistencyError(f"{D} - t*{C.label} stays big for all t")
        last = end is not None and (wall is None or end <= wall)
        t1 = end if last else S(wall)
        breakpoints.append(t1)
        lower.append(t1 * alpha[1] + alpha[0])
        upper.append(t1 * (alpha[1] + width[1]) + alpha[0] + width[0])
        if last:
            return OkounkovPolygon(breakpoints, lower, upper)
        t0 = wall
    raise InternalConsistencyError("chamber walk did not terminate")

