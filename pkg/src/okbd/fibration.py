"""Fibered surfaces X -> Y over a curve: fiber-type flags, restricted volumes
along the general fiber, and the product-formula and box checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import FlagError, InputError, InternalConsistencyError, NotBigError, ValidationError
from .lattice import DivisorClass, NamedCurve, SurfaceModel, intersect
from .okounkov import EffectiveRepresentative, Flag, OkounkovPolygon, okounkov_polygon, polygon_contains, polygons_equal
from .scalar import AlgebraicScalar, to_fraction
from .zariski import augmented_base_curves, decompose_family, is_nef, restricted_base_curves, volume, zariski_decompose


@dataclass(frozen=True)
class FibrationScenario:
    """A surface fibered over a curve Y with D = deg(D_Y)*F + R as classes.

    ``weak_positivity_assumed`` and ``isotrivial`` are declared metadata;
    neither is ever computed.
    """

    model: SurfaceModel
    fiber_class: DivisorClass
    base_genus: int
    divisor_D: DivisorClass
    base_divisor_degree: Fraction
    R: EffectiveRepresentative
    ample_A: DivisorClass
    flag: Flag
    weak_positivity_assumed: bool = False
    isotrivial: bool | None = None
    alternate_amples: tuple[DivisorClass, ...] = field(default=())
    name: str = ""

    @property
    def fiber(self) -> NamedCurve:
        return self.flag.curve

    @property
    def R_class(self) -> DivisorClass:
        return self.R.divisor_class(self.model.rank)

    def violations(self) -> list[tuple[str, str]]:
        """(invariant, message) pairs for every broken scenario invariant."""
        m = self.model
        out = []
        F = self.fiber_class
        if intersect(m, F, F) != 0:
            out.append(("fiber_square_zero", f"F^2 = {intersect(m, F, F)}"))
        if not is_nef(m, F):
            out.append(("fiber_nef", "fiber class is not nef"))
        expected = F * self.base_divisor_degree + self.R_class
        if expected != self.divisor_D:
            out.append(("decomposition", f"D = {self.divisor_D} but deg*F + R = {expected}"))
        for A in (self.ample_A,) + tuple(self.alternate_amples):
            bad = [c.label for c in m.curves if intersect(m, A, c) <= 0]
            if bad or intersect(m, A, A) <= 0 or not is_nef(m, A):
                out.append(("ample", f"A = {A} is not positive on {bad or 'itself'}"))
        if self.flag.curve.divisor != F:
            out.append(("flag", f"flag curve {self.flag.curve.label} does not have the fiber class"))
        if self.base_genus < 0:
            out.append(("base_genus", "negative genus"))
        return out

    def validate(self) -> None:
        problems = self.violations()
        if problems:
            raise ValidationError(*problems[0])


def fiber_flag(scenario: FibrationScenario) -> Flag:
    """The fiber-type flag X > F > {x}."""
    flag = scenario.flag
    if not scenario.model.has_curve(flag.curve.label):
        raise FlagError(f"flag curve {flag.curve.label} is not declared")
    if flag.curve.divisor != scenario.fiber_class:
        raise FlagError(f"flag curve {flag.curve.label} has class {flag.curve.divisor}, fiber is {scenario.fiber_class}")
    return flag


def base_okounkov_segment(scenario: FibrationScenario) -> tuple[Fraction, Fraction]:
    d = scenario.base_divisor_degree
    if d < 0:
        raise InputError(f"base divisor has negative degree {d}: no effective Q-divisors")
    return Fraction(0), d


def restricted_volume(model: SurfaceModel, D, fiber: NamedCurve) -> Fraction:
    """vol_{X|F}(D) = P.F for F outside the augmented base locus."""
    null = augmented_base_curves(model, D)
    if fiber in null:
        raise FlagError(f"{fiber.label} lies in the augmented base locus")
    return intersect(model, zariski_decompose(model, D).positive, fiber)


def _perturbed_chamber(model: SurfaceModel, R, A, fiber: NamedCurve):
    if fiber in restricted_base_curves(model, R):
        raise FlagError(f"{fiber.label} lies in the restricted base locus of R")
    return decompose_family(model, R, A, 0)


def restricted_volume_germ(model: SurfaceModel, R, A, fiber: NamedCurve) -> tuple[Fraction, Fraction]:
    """(c, k) with vol_{X|F}(R + eps*A) = c + k*eps for all small eps > 0."""
    return _perturbed_chamber(model, R, A, fiber).pair_positive(model, fiber)


def fiber_offset(scenario: FibrationScenario) -> Fraction:
    """lim_{eps -> 0+} of the order at the flag point of N(R + eps*A)|_F.

    Zero for a general point of the fiber.
    """
    ch = _perturbed_chamber(scenario.model, scenario.R_class, scenario.ample_A, scenario.fiber)
    return sum((a0 * scenario.flag.multiplicity(c) for c, (a0, _) in zip(ch.support, ch.coeffs)), Fraction(0))


def augmented_restricted_volume(scenario: FibrationScenario, R=None, ample=None) -> Fraction:
    """lim_{eps -> 0+} vol_{X|F}(R + eps*A)."""
    R = scenario.R_class if R is None else scenario.model.divisor(R)
    A = scenario.ample_A if ample is None else scenario.model.divisor(ample)
    c, _ = restricted_volume_germ(scenario.model, R, A, scenario.fiber)
    return c


def _relation(lhs, rhs) -> str:
    return ">" if lhs > rhs else "=" if lhs == rhs else "<"


@dataclass
class ProductReport:
    volume: Fraction
    lhs: Fraction
    base_volume: Fraction
    fiber_degree: Fraction
    augmented_restricted: Fraction
    rhs_augmented: Fraction
    first_holds: bool
    restricted_product: Fraction
    restricted_relation: str
    weak_positivity_assumed: bool
    second_holds: bool | None

    @property
    def ok(self) -> bool:
        return self.first_holds and self.second_holds is not False

    @property
    def first_relation(self) -> str:
        return _relation(self.lhs, self.rhs_augmented)


def check_product_inequality(scenario: FibrationScenario) -> ProductReport:
    """vol(D)/2 against deg(D_Y) * vol+_{X|F}(R), and against
    deg(D_Y) * vol_F(R|_F) when weak positivity is declared.

    The second comparison is always computed; it is only asserted under weak
    positivity.
    """
    m = scenario.model
    vol = volume(m, scenario.divisor_D)
    if vol <= 0:
        raise NotBigError(f"D = {scenario.divisor_D} is not big")
    d = scenario.base_divisor_degree
    if d <= 0:
        raise InputError(f"D_Y must be big, got degree {d}")
    lhs = vol / 2
    plus = augmented_restricted_volume(scenario)
    fiber_degree = max(intersect(m, scenario.R_class, scenario.fiber_class), Fraction(0))
    rhs2 = d * fiber_degree
    return ProductReport(
        volume=vol,
        lhs=lhs,
        base_volume=d,
        fiber_degree=fiber_degree,
        augmented_restricted=plus,
        rhs_augmented=d * plus,
        first_holds=lhs >= d * plus,
        restricted_product=rhs2,
        restricted_relation=_relation(lhs, rhs2),
        weak_positivity_assumed=scenario.weak_positivity_assumed,
        second_holds=(lhs >= rhs2) if scenario.weak_positivity_assumed else None,
    )


@dataclass
class BoxReport:
    polygon: OkounkovPolygon
    box: OkounkovPolygon
    area: AlgebraicScalar
    box_area: AlgebraicScalar
    equality: bool


def compare_with_box(polygon: OkounkovPolygon, width, height, offset=0) -> BoxReport:
    """Check the box [0, width] x [offset, offset + height] against the body.

    Raises InternalConsistencyError if the box is not inside, or if area
    equality and set equality disagree.
    """
    box = OkounkovPolygon.box(width, height, offset)
    if not polygon_contains(polygon, box):
        raise InternalConsistencyError(f"box [0,{width}]x[{offset},{offset}+{height}] is not contained in the body")
    area, box_area = polygon.area(), box.area()
    same = polygons_equal(polygon, box)
    if (area == box_area) != same:
        raise InternalConsistencyError(f"area {area} vs box {box_area} disagrees with set equality {same}")
    return BoxReport(polygon, box, area, box_area, same)


def check_box_criterion(scenario: FibrationScenario) -> BoxReport:
    """Compare the body of D with [0, deg D_Y] x [0, vol+_{X|F}(R)].

    When the flag point lies on declared curves the box is lifted by
    ``fiber_offset``.
    """
    flag = fiber_flag(scenario)
    polygon = okounkov_polygon(scenario.model, scenario.divisor_D, flag)
    _, width = base_okounkov_segment(scenario)
    return compare_with_box(polygon, width, augmented_restricted_volume(scenario), fiber_offset(scenario))
