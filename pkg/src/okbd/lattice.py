"""Neron-Severi lattices of surfaces: classes, the intersection pairing and
sanity checks (Hodge index, adjunction, toric fan consistency)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InputError
from .scalar import to_fraction

Vector = tuple  # tuple[Fraction, ...]


def as_vector(values: Iterable) -> tuple[Fraction, ...]:
    try:
        return tuple(to_fraction(v) for v in values)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational vector {values!r}: {exc}") from None


@dataclass(frozen=True)
class DivisorClass:
    """A rational combination of the basis classes of a Neron-Severi lattice."""

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs):
        object.__setattr__(self, "coeffs", as_vector(coeffs))

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def _check(self, other):
        if len(other) != len(self):
            raise InputError(f"rank mismatch: {len(self)} vs {len(other)}")

    def __add__(self, other):
        other = _as_class(other)
        self._check(other)
        return DivisorClass(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other):
        other = _as_class(other)
        self._check(other)
        return DivisorClass(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self):
        return DivisorClass(-a for a in self.coeffs)

    def __mul__(self, c):
        c = to_fraction(c)
        return DivisorClass(c * a for a in self.coeffs)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coeffs)

    @classmethod
    def zero(cls, rank: int) -> "DivisorClass":
        return cls([0] * rank)

    def __str__(self):
        return "(" + ", ".join(str(a) for a in self.coeffs) + ")"


def _as_class(value) -> DivisorClass:
    if isinstance(value, DivisorClass):
        return value
    if isinstance(value, NamedCurve):
        return value.divisor
    return DivisorClass(value)


@dataclass(frozen=True)
class NamedCurve:
    """An irreducible curve declared on the surface.

    ``flag_multiplicity`` is the local intersection number of this curve with
    the flag curve at the flag point (0 when the curve misses the point).
    """

    label: str
    vector: tuple[Fraction, ...]
    genus: int = 0
    flag_multiplicity: int = 0

    def __init__(self, label, vector, genus=0, flag_multiplicity=0):
        object.__setattr__(self, "label", str(label))
        object.__setattr__(self, "vector", as_vector(vector))
        object.__setattr__(self, "genus", int(genus))
        object.__setattr__(self, "flag_multiplicity", int(flag_multiplicity))
        if self.genus < 0 or self.flag_multiplicity < 0:
            raise InputError(f"curve {label}: genus and flag_multiplicity must be nonnegative")

    @property
    def divisor(self) -> DivisorClass:
        return DivisorClass(self.vector)


@dataclass(frozen=True)
class ToricRay:
    ray: tuple[int, int]
    curve: str


@dataclass(frozen=True)
class SurfaceModel:
    name: str
    gram: tuple[tuple[Fraction, ...], ...]
    canonical: tuple[Fraction, ...]
    curves: tuple[NamedCurve, ...]
    effective_generators: tuple[tuple[Fraction, ...], ...]
    toric_fan: tuple[ToricRay, ...] | None = None

    def __init__(self, name, gram, canonical, curves, effective_generators=(), toric_fan=None):
        gram = tuple(as_vector(row) for row in gram)
        rank = len(gram)
        if rank == 0 or any(len(row) != rank for row in gram):
            raise InputError(f"model {name}: gram must be a nonempty square matrix")
        canonical = as_vector(canonical)
        curves = tuple(curves)
        generators = tuple(as_vector(g) for g in effective_generators)
        for what, v in [("canonical", canonical)] + [(c.label, c.vector) for c in curves] + [
            ("effective generator", g) for g in generators
        ]:
            if len(v) != rank:
                raise InputError(f"model {name}: {what} has length {len(v)}, expected {rank}")
        labels = [c.label for c in curves]
        if len(set(labels)) != len(labels):
            raise InputError(f"model {name}: duplicate curve labels")
        if toric_fan is not None:
            toric_fan = tuple(
                r if isinstance(r, ToricRay) else ToricRay(tuple(int(x) for x in r[0]), str(r[1]))
                for r in toric_fan
            )
        object.__setattr__(self, "name", str(name))
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "canonical", canonical)
        object.__setattr__(self, "curves", curves)
        object.__setattr__(self, "effective_generators", generators)
        object.__setattr__(self, "toric_fan", toric_fan)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def curve(self, label: str) -> NamedCurve:
        for c in self.curves:
            if c.label == label:
                return c
        raise InputError(f"model {self.name} has no curve labelled {label!r}")

    def has_curve(self, label: str) -> bool:
        return any(c.label == label for c in self.curves)

    def divisor(self, values) -> DivisorClass:
        d = DivisorClass(values)
        if len(d) != self.rank:
            raise InputError(f"expected {self.rank} coefficients, got {len(d)}")
        return d

    @property
    def canonical_class(self) -> DivisorClass:
        return DivisorClass(self.canonical)

    def sorted_curves(self) -> list[NamedCurve]:
        return sorted(self.curves, key=lambda c: c.label)


def intersect(model: SurfaceModel, a, b) -> Fraction:
    """Intersection number a.b = a^T G b."""
    a = _as_class(a)
    b = _as_class(b)
    n = model.rank
    if len(a) != n or len(b) != n:
        raise InputError(f"dimension mismatch: rank {n}, got {len(a)} and {len(b)}")
    total = Fraction(0)
    for i, ai in enumerate(a.coeffs):
        if ai == 0:
            continue
        row = model.gram[i]
        total += ai * sum((row[j] * bj for j, bj in enumerate(b.coeffs) if bj), Fraction(0))
    return total


# -- exact linear algebra ---------------------------------------------------


def solve(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction]:
    """Solve a square nonsingular system over Q by Gauss-Jordan elimination."""
    n = len(matrix)
    a = [list(map(Fraction, row)) + [Fraction(rhs[i])] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise InputError("singular linear system")
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


def inertia(matrix: Sequence[Sequence[Fraction]]) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of a symmetric rational matrix,
    by congruence diagonalization."""
    a = [list(map(Fraction, row)) for row in matrix]
    pos = neg = zero = 0
    while a:
        n = len(a)
        k = next((i for i in range(n) if a[i][i] != 0), None)
        if k is None:
            off = next(((i, j) for i in range(n) for j in range(n) if i != j and a[i][j] != 0), None)
            if off is None:
                zero += n
                break
            i, j = off
            # e_i -> e_i + e_j makes the diagonal entry 2*a[i][j] != 0
            for r in range(n):
                a[r][i] += a[r][j]
            for c in range(n):
                a[i][c] += a[j][c]
            k = i
        piv = a[k][k]
        if piv > 0:
            pos += 1
        else:
            neg += 1
        rest = [r for r in range(n) if r != k]
        a = [[a[r][c] - a[r][k] * a[k][c] / piv for c in rest] for r in rest]
    return pos, neg, zero


def is_negative_definite(matrix) -> bool:
    n = len(matrix)
    return n == 0 or inertia(matrix)[1] == n


def gram_of(model: SurfaceModel, curves: Sequence[NamedCurve]) -> list[list[Fraction]]:
    return [[intersect(model, c, d) for d in curves] for c in curves]


# -- validation -------------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    passed: bool
    witness: str = ""


@dataclass
class ValidationReport:
    model: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def add(self, name, passed, witness=""):
        self.checks.append(CheckResult(name, bool(passed), "" if passed else witness))


def validate_model(model: SurfaceModel) -> ValidationReport:
    """Run every model invariant; failures are reported, never raised."""
    report = ValidationReport(model.name)
    g = model.gram
    n = model.rank

    asym = [(i, j) for i in range(n) for j in range(i + 1, n) if g[i][j] != g[j][i]]
    report.add("gram_symmetric", not asym, f"gram[{asym[0][0]}][{asym[0][1]}] != transpose" if asym else "")

    pos, neg, zero = inertia(g)
    report.add(
        "hodge_index",
        (pos, neg, zero) == (1, n - 1, 0),
        f"signature (+{pos}, -{neg}, 0x{zero}), expected (1, {n - 1})",
    )

    K = model.canonical_class
    for c in model.curves:
        self_int = intersect(model, c, c)
        report.add(
            f"integral_self_intersection[{c.label}]",
            self_int.denominator == 1,
            f"{c.label}^2 = {self_int}",
        )
        lhs = self_int + intersect(model, c, K)
        report.add(
            f"adjunction[{c.label}]",
            lhs == 2 * c.genus - 2,
            f"{c.label}^2 + {c.label}.K = {lhs} but 2g-2 = {2 * c.genus - 2} for genus {c.genus}",
        )

    if model.toric_fan is not None:
        _validate_fan(model, report)
    return report


def _det(u, v) -> int:
    return u[0] * v[1] - u[1] * v[0]


def _validate_fan(model: SurfaceModel, report: ValidationReport) -> None:
    rays = [r.ray for r in model.toric_fan]
    k = len(rays)
    if k < 3:
        report.add("toric_complete", False, f"only {k} rays")
        return
    bad = [i for i in range(k) if _det(rays[i], rays[(i + 1) % k]) != 1]
    report.add(
        "toric_smooth",
        not bad,
        f"rays {rays[bad[0]]}, {rays[(bad[0] + 1) % k]} do not form a positively oriented basis" if bad else "",
    )
    # every step turns counterclockwise by less than pi; complete iff one full turn
    turn = sum(
        math.atan2(_det(rays[i], rays[(i + 1) % k]), rays[i][0] * rays[(i + 1) % k][0] + rays[i][1] * rays[(i + 1) % k][1])
        for i in range(k)
    )
    report.add("toric_complete", not bad and abs(turn - 2 * math.pi) < 1e-9, f"total turning {turn:.6f} rad")

    missing = [r.curve for r in model.toric_fan if not model.has_curve(r.curve)]
    report.add("toric_curves_declared", not missing, f"undeclared ray curves {missing}")
    if missing or bad:
        return
    classes = [model.curve(r.curve).divisor for r in model.toric_fan]
    for axis in (0, 1):
        rel = DivisorClass.zero(model.rank)
        for ray, cls in zip(rays, classes):
            rel = rel + cls * ray[axis]
        report.add(f"toric_linear_relation[{axis}]", rel.is_zero(), f"sum <e{axis}, v_i> D_i = {rel}")
    for i in range(k):
        prev, cur, nxt = rays[i - 1], rays[i], rays[(i + 1) % k]
        # v_{i-1} + v_{i+1} = a_i v_i and D_i^2 = -a_i
        s = (prev[0] + nxt[0], prev[1] + nxt[1])
        a = s[0] // cur[0] if cur[0] else s[1] // cur[1]
        expected = -a
        actual = intersect(model, classes[i], classes[i])
        label = model.toric_fan[i].curve
        report.add(f"toric_self_intersection[{label}]", actual == expected, f"{label}^2 = {actual}, fan gives {expected}")
        meet = intersect(model, classes[i], classes[(i + 1) % k])
        report.add(
            f"toric_adjacent[{label}]",
            meet == 1,
            f"{label}.{model.toric_fan[(i + 1) % k].curve} = {meet}, expected 1",
        )
