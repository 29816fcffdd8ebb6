"""Zariski decomposition on a surface with a declared curve configuration.

The core routine decomposes a one-parameter family D + s*V just to the
right of a parameter value s0, where the positive part and the
negative-part coefficients are affine in s. Plain decomposition is the
case V = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, NotBigError, NotPseudoEffectiveError
from .lattice import (
    DivisorClass,
    NamedCurve,
    SurfaceModel,
    gram_of,
    intersect,
    is_negative_definite,
    solve,
)

NEG_INF = -math.inf


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def lexsign(value: Fraction, slope: Fraction, at: Fraction) -> int:
    """Sign of s -> value + slope*s just to the right of ``at``."""
    v = value + slope * at
    return _sign(v) if v != 0 else _sign(slope)


@dataclass(frozen=True)
class Chamber:
    """Zariski decomposition of D + s*V, valid on an interval starting at ``start``.

    ``coeffs[i]`` is (c, k) with a_i(s) = c + k*s for ``support[i]``;
    P(s) = positive[0] + s*positive[1].
    """

    start: Fraction
    support: tuple[NamedCurve, ...]
    coeffs: tuple[tuple[Fraction, Fraction], ...]
    positive: tuple[DivisorClass, DivisorClass]

    def positive_at(self, s) -> DivisorClass:
        p0, p1 = self.positive
        return p0 + p1 * s

    def coefficient(self, i: int, s):
        c, k = self.coeffs[i]
        return c + k * s

    def pair_positive(self, model: SurfaceModel, other) -> tuple[Fraction, Fraction]:
        return intersect(model, self.positive[0], other), intersect(model, self.positive[1], other)

    def positive_square(self, model: SurfaceModel) -> tuple[Fraction, Fraction, Fraction]:
        """(A, B, C) with P(s)^2 = A s^2 + B s + C."""
        p0, p1 = self.positive
        return intersect(model, p1, p1), 2 * intersect(model, p0, p1), intersect(model, p0, p0)


def decompose_family(model: SurfaceModel, base, direction=None, start=0) -> Chamber:
    """Zariski chamber of base + s*direction for s slightly larger than ``start``.

    Grows the negative support from the curves met negatively, solving the
    orthogonality system exactly, until the positive part is nef.
    """
    base = model.divisor(base)
    direction = DivisorClass.zero(model.rank) if direction is None else model.divisor(direction)
    start = Fraction(start)
    curves = model.sorted_curves()

    def sign_against(p0, p1, target):
        return lexsign(intersect(model, p0, target), intersect(model, p1, target), start)

    support = [c for c in curves if sign_against(base, direction, c) < 0]
    while True:
        coeffs: list[tuple[Fraction, Fraction]] = []
        p0, p1 = base, direction
        if support:
            g = gram_of(model, support)
            if not is_negative_definite(g):
                raise NotPseudoEffectiveError(
                    f"curves {[c.label for c in support]} met negatively do not form a negative-definite configuration"
                )
            const = solve(g, [intersect(model, base, c) for c in support])
            slope = solve(g, [intersect(model, direction, c) for c in support])
            coeffs = list(zip(const, slope))
            kept = []
            for c, (a0, a1) in zip(support, coeffs):
                s = lexsign(a0, a1, start)
                if s < 0:
                    raise NotPseudoEffectiveError(f"negative part would need coefficient {a0 + a1 * start} on {c.label}")
                if s > 0:
                    kept.append((c, (a0, a1)))
            if len(kept) != len(support):
                # identically-zero coefficients drop out without disturbing the rest
                support = [c for c, _ in kept]
                continue
            for c, (a0, a1) in zip(support, coeffs):
                p0 = p0 - c.divisor * a0
                p1 = p1 - c.divisor * a1
        new = [c for c in curves if c not in support and sign_against(p0, p1, c) < 0]
        if not new:
            break
        support = sorted(support + new, key=lambda c: c.label)

    for g in model.effective_generators:
        if sign_against(p0, p1, g) < 0:
            raise InputError(
                f"positive part meets effective generator {g} negatively; declared curves do not cover the effective cone"
            )
    return Chamber(start, tuple(support), tuple(coeffs), (p0, p1))


@dataclass(frozen=True)
class ZariskiDecomposition:
    positive: DivisorClass
    negative_support: tuple[tuple[NamedCurve, Fraction], ...]

    @property
    def negative(self) -> DivisorClass:
        total = DivisorClass.zero(len(self.positive))
        for c, a in self.negative_support:
            total = total + c.divisor * a
        return total

    def coefficient(self, label: str) -> Fraction:
        return sum((a for c, a in self.negative_support if c.label == label), Fraction(0))


def zariski_decompose(model: SurfaceModel, D) -> ZariskiDecomposition:
    ch = decompose_family(model, D)
    neg = tuple((c, a0) for c, (a0, _) in zip(ch.support, ch.coeffs))
    return ZariskiDecomposition(ch.positive[0], neg)


def decomposition_violations(model: SurfaceModel, D, z: ZariskiDecomposition) -> list[str]:
    """Every ZariskiDecomposition invariant that ``z`` breaks for D."""
    D = model.divisor(D)
    out = []
    if z.positive + z.negative != D:
        out.append("sum: P + N != D")
    P = z.positive
    for c in model.curves:
        if intersect(model, P, c) < 0:
            out.append(f"nef: P.{c.label} < 0")
    for g in model.effective_generators:
        if intersect(model, P, g) < 0:
            out.append(f"nef: P.{g} < 0")
    for c, _ in z.negative_support:
        if intersect(model, P, c) != 0:
            out.append(f"orthogonal: P.{c.label} != 0")
    if not is_negative_definite(gram_of(model, [c for c, _ in z.negative_support])):
        out.append("negative_definite: support gram not negative definite")
    for c, a in z.negative_support:
        if a <= 0:
            out.append(f"positive_coefficients: {c.label} has {a}")
    return out


def is_nef(model: SurfaceModel, D) -> bool:
    D = model.divisor(D)
    return all(intersect(model, D, c) >= 0 for c in model.curves) and all(
        intersect(model, D, g) >= 0 for g in model.effective_generators
    )


def is_pseudoeffective(model: SurfaceModel, D) -> bool:
    try:
        zariski_decompose(model, D)
    except NotPseudoEffectiveError:
        return False
    return True


def volume(model: SurfaceModel, D) -> Fraction:
    """P^2 for pseudoeffective D, and 0 when D is not big."""
    try:
        z = zariski_decompose(model, D)
    except NotPseudoEffectiveError:
        return Fraction(0)
    v = intersect(model, z.positive, z.positive)
    return v if v > 0 else Fraction(0)


def is_big(model: SurfaceModel, D) -> bool:
    return volume(model, D) > 0


def augmented_base_curves(model: SurfaceModel, D) -> frozenset[NamedCurve]:
    """Declared curves on which the positive part is numerically trivial."""
    try:
        z = zariski_decompose(model, D)
    except NotPseudoEffectiveError as exc:
        raise NotBigError(str(exc)) from None
    if intersect(model, z.positive, z.positive) <= 0:
        raise NotBigError(f"{model.divisor(D)} is not big")
    return frozenset(c for c in model.curves if intersect(model, z.positive, c) == 0)


def restricted_base_curves(model: SurfaceModel, D) -> frozenset[NamedCurve]:
    return frozenset(c for c, _ in zariski_decompose(model, D).negative_support)


def numerical_dimension(model: SurfaceModel, D):
    """2, 1 or 0 for pseudoeffective D, NEG_INF otherwise."""
    try:
        z = zariski_decompose(model, D)
    except NotPseudoEffectiveError:
        return NEG_INF
    if z.positive.is_zero():
        return 0
    return 2 if intersect(model, z.positive, z.positive) > 0 else 1
