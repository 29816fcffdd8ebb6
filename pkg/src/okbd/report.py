"""Running the checks of a scenario file and assembling a deterministic report."""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import OkbdError
from .fibration import (
    FibrationScenario,
    augmented_restricted_volume,
    check_box_criterion,
    check_product_inequality,
)
from .lattice import intersect, validate_model
from .okounkov import OkounkovPolygon, okounkov_polygon
from .scalar import AlgebraicScalar
from .scenario import ScenarioFile
from .toric import (
    fiber_direction,
    h0_count,
    kappa_estimate,
    monomial_flag,
    monomial_hull,
    restricted_section_dim,
)
from .zariski import augmented_base_curves, numerical_dimension, volume, zariski_decompose

DIGITS = 12
HULL_M_MAX = 30
# |2 h0(mD)/m^2 - vol(D)| <= ORACLE_TOLERANCE/m for m >= 10
ORACLE_TOLERANCE = 3


def exact(value):
    """Canonical exact rendering: "p/q" strings, {p, q, d} for radicals."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, AlgebraicScalar):
        return value.to_json()
    if isinstance(value, (int, Fraction)):
        return str(Fraction(value))
    if isinstance(value, float) and math.isinf(value):
        return "-inf" if value < 0 else "inf"
    if isinstance(value, (list, tuple)):
        return [exact(v) for v in value]
    if isinstance(value, dict):
        return {k: exact(v) for k, v in value.items()}
    raise TypeError(f"no exact rendering for {value!r}")


def decimal(value):
    if isinstance(value, AlgebraicScalar):
        return value.to_decimal(DIGITS)
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return AlgebraicScalar(value).to_decimal(DIGITS)
    if isinstance(value, float) and math.isinf(value):
        return "-inf" if value < 0 else "inf"
    return None


@dataclass
class CheckRecord:
    name: str
    scenario: int | None
    passed: bool
    values: dict = field(default_factory=dict)
    inputs: dict = field(default_factory=dict)
    note: str = ""

    def to_json(self) -> dict:
        decimals = {k: decimal(v) for k, v in self.values.items()}
        out = {
            "name": self.name,
            "scenario": self.scenario,
            "inputs": exact(self.inputs),
            "values": exact(self.values),
            "decimal": {k: v for k, v in decimals.items() if v is not None},
            "verdict": "pass" if self.passed else "fail",
        }
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class CheckReport:
    model: str
    records: list[CheckRecord] = field(default_factory=list)
    polygons: list[tuple[str, OkounkovPolygon, OkounkovPolygon | None]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def record(self, name: str) -> CheckRecord:
        for r in self.records:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_json(self) -> dict:
        return {
            "model": self.model,
            "overall": "pass" if self.passed else "fail",
            "checks": [r.to_json() for r in self.records],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"


def _guard(name, index, fn) -> list[CheckRecord]:
    try:
        return fn()
    except OkbdError as exc:
        return [CheckRecord(name, index, False, note=f"{type(exc).__name__}: {exc}")]


def _product_record(i: int, sc: FibrationScenario) -> list[CheckRecord]:
    r = check_product_inequality(sc)
    values = {
        "volume": r.volume,
        "lhs": r.lhs,
        "base_volume": r.base_volume,
        "fiber_restriction": r.fiber_degree,
        "augmented_restricted_volume": r.augmented_restricted,
        "rhs_augmented": r.rhs_augmented,
        "first_inequality": r.first_holds,
        "first_relation": r.first_relation,
        "restricted_product": r.restricted_product,
        "restricted_relation": r.restricted_relation,
        "weak_positivity_assumed": r.weak_positivity_assumed,
    }
    note = ""
    if r.weak_positivity_assumed:
        values["second_inequality"] = r.second_holds
    elif r.restricted_relation == "<":
        note = "restricted product exceeds vol(D)/2; not asserted without weak positivity"
    return [CheckRecord(f"{sc.name}.product_inequality", i, r.ok, values, note=note)]


def _box_record(i: int, sc: FibrationScenario, report: CheckReport) -> list[CheckRecord]:
    r = check_box_criterion(sc)
    report.polygons.append((sc.name, r.polygon, r.box))
    values = {
        "area": r.area,
        "box_area": r.box_area,
        "box": [list(v) for v in r.box.vertices()],
        "mu": r.polygon.mu,
        "equality": r.equality,
        "vertices": [list(v) for v in r.polygon.vertices()],
    }
    return [CheckRecord(f"{sc.name}.box_criterion", i, True, values)]


def _area_record(i: int, sc: FibrationScenario) -> list[CheckRecord]:
    p = okounkov_polygon(sc.model, sc.divisor_D, sc.flag)
    vol = volume(sc.model, sc.divisor_D)
    area = p.area()
    return [CheckRecord(f"{sc.name}.volume_area", i, area * 2 == vol, {"volume": vol, "area": area})]


def _a_independence_record(i: int, sc: FibrationScenario) -> list[CheckRecord]:
    amples = (sc.ample_A,) + tuple(sc.alternate_amples)
    if len(amples) < 2:
        return []
    values = [augmented_restricted_volume(sc, ample=A) for A in amples]
    return [
        CheckRecord(
            f"{sc.name}.a_independence",
            i,
            len(set(values)) == 1,
            {f"A{k}": v for k, v in enumerate(values)},
            inputs={f"A{k}": list(A) for k, A in enumerate(amples)},
        )
    ]


def _oracle_records(i: int, sc: FibrationScenario, m_max: int, tolerance: Fraction) -> list[CheckRecord]:
    model = sc.model
    if not model.toric_fan:
        return [CheckRecord(f"{sc.name}.oracle", i, True, note="skipped: no toric fan")]
    D = sc.divisor_D
    out = []
    vol = volume(model, D)
    worst = Fraction(0)
    ok = True
    for m in range(10, m_max + 1):
        err = abs(Fraction(2 * h0_count(model, D, m), m * m) - vol)
        ok &= err <= tolerance / m
        worst = max(worst, err * m)
    out.append(
        CheckRecord(
            f"{sc.name}.oracle_volume",
            i,
            ok,
            {"volume": vol, "max_scaled_error": worst, "tolerance": tolerance, "m_max": m_max},
            note="" if m_max >= 10 else "no m in the tolerance range",
        )
    )

    fiber = sc.fiber
    try:
        fiber_direction(model, fiber.label)
        in_bplus = fiber in augmented_base_curves(model, D)
    except OkbdError as exc:
        out.append(CheckRecord(f"{sc.name}.oracle_restricted", i, True, note=f"skipped: {exc}"))
    else:
        if in_bplus:
            out.append(CheckRecord(f"{sc.name}.oracle_restricted", i, True, note="skipped: fiber in augmented base locus"))
        else:
            target = intersect(model, zariski_decompose(model, D).positive, fiber)
            ok = all(
                abs(Fraction(restricted_section_dim(model, D, fiber.label, m), m) - target) <= tolerance / m
                for m in range(10, m_max + 1)
            )
            out.append(CheckRecord(f"{sc.name}.oracle_restricted", i, ok, {"restricted_volume": target}))

    pair = monomial_flag(model, sc.flag)
    if pair is None:
        out.append(CheckRecord(f"{sc.name}.oracle_hull", i, True, note="skipped: no invariant point matches the flag"))
    else:
        polygon = okounkov_polygon(model, D, sc.flag)
        top = min(HULL_M_MAX, m_max)
        bad = [
            m
            for m in range(1, top + 1)
            if not all(polygon.contains_point(v) for v in monomial_hull(model, D, pair[0], pair[1], m))
        ]
        out.append(
            CheckRecord(
                f"{sc.name}.oracle_hull",
                i,
                not bad,
                {"m_max": top},
                inputs={"flag_curve": pair[0], "point_curve": pair[1]},
                note=f"hull escapes polygon at m = {bad}" if bad else "",
            )
        )

    kappa = kappa_estimate(model, D, max(m_max, 10))
    nu = numerical_dimension(model, D)
    out.append(CheckRecord(f"{sc.name}.oracle_kappa", i, kappa == nu, {"kappa": kappa, "numerical_dimension": nu}))
    return out


def _scenario_records(i: int, sc: FibrationScenario, sf: ScenarioFile, report: CheckReport) -> list[CheckRecord]:
    checks = sf.checks
    m_max = int(sf.options.get("oracle_m_max") or 0)
    tolerance = Fraction(str(sf.options.get("oracle_tolerance", ORACLE_TOLERANCE)))
    out = []
    if "product" in checks:
        out += _guard(f"{sc.name}.product_inequality", i, lambda: _product_record(i, sc))
    if "box" in checks:
        out += _guard(f"{sc.name}.box_criterion", i, lambda: _box_record(i, sc, report))
    if "area" in checks:
        out += _guard(f"{sc.name}.volume_area", i, lambda: _area_record(i, sc))
    if "a_independence" in checks:
        out += _guard(f"{sc.name}.a_independence", i, lambda: _a_independence_record(i, sc))
    if "oracle" in checks and m_max > 0:
        out += _guard(f"{sc.name}.oracle", i, lambda: _oracle_records(i, sc, m_max, tolerance))
    return out


def run_checks(sf: ScenarioFile, jobs: int = 1) -> CheckReport:
    """Evaluate every requested check; failures become records, never exceptions."""
    report = CheckReport(sf.model.name)
    if "model" in sf.checks:
        v = validate_model(sf.model)
        report.records.append(
            CheckRecord(
                "model.validation",
                None,
                v.ok,
                {c.name: c.passed for c in v.checks},
                note="; ".join(f"{c.name}: {c.witness}" for c in v.failures()),
            )
        )
    # scenarios are independent; results are merged back in file order
    partial = [CheckReport(sf.model.name) for _ in sf.scenarios]
    work = [lambda i=i, sc=sc: _scenario_records(i, sc, sf, partial[i]) for i, sc in enumerate(sf.scenarios)]
    if jobs > 1 and len(work) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda f: f(), work))
    else:
        results = [f() for f in work]
    for part, records in zip(partial, results):
        report.records.extend(records)
        report.polygons.extend(part.polygons)
    return report
