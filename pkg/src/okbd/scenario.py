"""Loading and saving scenario files (JSON)."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .errors import InputError, ParseError, ValidationError
from .fibration import FibrationScenario
from .lattice import DivisorClass, NamedCurve, SurfaceModel, ToricRay, validate_model
from .okounkov import EffectiveRepresentative, Flag
from .scalar import to_fraction

DEFAULT_CHECKS = ("model", "product", "box", "area", "a_independence", "oracle")


@dataclass
class ScenarioFile:
    model: SurfaceModel
    divisors: dict[str, DivisorClass] = field(default_factory=dict)
    scenarios: list[FibrationScenario] = field(default_factory=list)
    refs: list[dict] = field(default_factory=list)
    options: dict = field(default_factory=dict)

    @property
    def checks(self) -> tuple[str, ...]:
        return tuple(self.options.get("checks", DEFAULT_CHECKS))


def _q(x) -> str:
    return str(to_fraction(x))


def _require(data: dict, key: str, where: str):
    if key not in data:
        raise ValidationError("schema", f"{where} is missing key {key!r}")
    return data[key]


def _frac(value, where):
    try:
        return to_fraction(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise ValidationError("schema", f"{where}: {value!r} is not a rational") from None


def model_from_dict(data: dict) -> SurfaceModel:
    curves = []
    for i, c in enumerate(_require(data, "curves", "surface")):
        where = f"surface.curves[{i}]"
        curves.append(
            NamedCurve(
                _require(c, "label", where),
                _require(c, "class", where),
                genus=c.get("genus", 0),
                flag_multiplicity=c.get("flag_multiplicity", 0),
            )
        )
    fan = data.get("fan")
    if fan is not None:
        fan = [ToricRay(tuple(int(x) for x in r["ray"]), str(r["curve"])) for r in fan]
    return SurfaceModel(
        name=data.get("name", "surface"),
        gram=_require(data, "gram", "surface"),
        canonical=_require(data, "canonical", "surface"),
        curves=curves,
        effective_generators=data.get("effective_generators", []),
        toric_fan=fan,
    )


def model_to_dict(model: SurfaceModel) -> dict:
    out = {
        "name": model.name,
        "gram": [[_q(x) for x in row] for row in model.gram],
        "canonical": [_q(x) for x in model.canonical],
        "curves": [
            {"label": c.label, "class": [_q(x) for x in c.vector], "genus": c.genus, "flag_multiplicity": c.flag_multiplicity}
            for c in model.curves
        ],
        "effective_generators": [[_q(x) for x in g] for g in model.effective_generators],
    }
    if model.toric_fan is not None:
        out["fan"] = [{"ray": list(r.ray), "curve": r.curve} for r in model.toric_fan]
    return out


def _resolve(name, model: SurfaceModel, divisors: dict, where: str) -> DivisorClass:
    if isinstance(name, list):
        return model.divisor(name)
    if name in divisors:
        return divisors[name]
    if model.has_curve(name):
        return model.curve(name).divisor
    raise ValidationError("reference", f"{where}: unknown divisor {name!r}")


def scenario_from_dict(raw: dict, model: SurfaceModel, divisors: dict, index: int) -> FibrationScenario:
    where = f"scenarios[{index}]"
    flag_raw = raw.get("flag") or {"curve": raw.get("fiber"), "point": "generic"}
    flag_curve = flag_raw.get("curve", raw.get("fiber"))
    if not model.has_curve(flag_curve):
        raise ValidationError("reference", f"{where}.flag: unknown curve {flag_curve!r}")
    point = flag_raw.get("point", "generic")
    if point != "generic" and not model.has_curve(point):
        raise ValidationError("reference", f"{where}.flag: unknown curve {point!r}")
    flag = Flag(model.curve(flag_curve), None if point == "generic" else point)
    terms = []
    for entry in _require(raw, "R", where):
        label, coeff = entry
        if not model.has_curve(label):
            raise ValidationError("reference", f"{where}.R: unknown curve {label!r}")
        terms.append((model.curve(label), _frac(coeff, f"{where}.R")))
    try:
        rep = EffectiveRepresentative(terms)
    except InputError as exc:
        raise ValidationError("effective_representative", str(exc)) from None
    alt = raw.get("A_alt", [])
    if isinstance(alt, str):
        alt = [alt]
    scenario = FibrationScenario(
        model=model,
        fiber_class=_resolve(_require(raw, "fiber", where), model, divisors, where),
        base_genus=int(raw.get("base_genus", 0)),
        divisor_D=_resolve(_require(raw, "D", where), model, divisors, where),
        base_divisor_degree=_frac(_require(raw, "base_degree", where), f"{where}.base_degree"),
        R=rep,
        ample_A=_resolve(_require(raw, "A", where), model, divisors, where),
        flag=flag,
        weak_positivity_assumed=bool(raw.get("weak_positivity", False)),
        isotrivial=raw.get("isotrivial"),
        alternate_amples=tuple(_resolve(a, model, divisors, where) for a in alt),
        name=str(raw.get("name", f"scenario{index}")),
    )
    scenario.validate()
    return scenario


def from_dict(data) -> ScenarioFile:
    if not isinstance(data, dict):
        raise ValidationError("schema", "top level must be an object")
    try:
        model = model_from_dict(_require(data, "surface", "file"))
    except ValidationError:
        raise
    except InputError as exc:
        raise ValidationError("surface", str(exc)) from None
    report = validate_model(model)
    if not report.ok:
        bad = report.failures()[0]
        raise ValidationError(bad.name, bad.witness)
    divisors = {}
    for name, vec in (data.get("divisors") or {}).items():
        try:
            divisors[name] = model.divisor(vec)
        except InputError as exc:
            raise ValidationError("schema", f"divisors.{name}: {exc}") from None
    raws = data.get("scenarios") or []
    scenarios = [scenario_from_dict(raw, model, divisors, i) for i, raw in enumerate(raws)]
    options = dict(data.get("options") or {})
    unknown = set(options.get("checks", ())) - set(DEFAULT_CHECKS)
    if unknown:
        raise ValidationError("schema", f"unknown checks {sorted(unknown)}")
    return ScenarioFile(model, divisors, scenarios, [dict(r) for r in raws], options)


def _normalize_ref(value):
    if isinstance(value, list):
        return [_q(x) for x in value]
    return value


def to_dict(sf: ScenarioFile) -> dict:
    scenarios = []
    for raw, sc in zip(sf.refs, sf.scenarios):
        entry = {
            "name": sc.name,
            "fiber": _normalize_ref(raw["fiber"]),
            "base_genus": sc.base_genus,
            "D": _normalize_ref(raw["D"]),
            "base_degree": _q(sc.base_divisor_degree),
            "R": [[c.label, _q(a)] for c, a in sc.R.terms],
            "A": _normalize_ref(raw["A"]),
            "weak_positivity": sc.weak_positivity_assumed,
            "flag": {"curve": sc.flag.curve.label, "point": sc.flag.point_on or "generic"},
        }
        if raw.get("A_alt"):
            alt = raw["A_alt"]
            entry["A_alt"] = [_normalize_ref(a) for a in ([alt] if isinstance(alt, str) else alt)]
        if sc.isotrivial is not None:
            entry["isotrivial"] = sc.isotrivial
        scenarios.append(entry)
    return {
        "surface": model_to_dict(sf.model),
        "divisors": {k: [_q(x) for x in v] for k, v in sf.divisors.items()},
        "scenarios": scenarios,
        "options": dict(sf.options),
    }


def loads(text: str) -> ScenarioFile:
    if not text.strip():
        raise ParseError("empty scenario file", 1, 1)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    return from_dict(data)


def dumps(sf: ScenarioFile) -> str:
    return json.dumps(to_dict(sf), indent=2) + "\n"


def parse_scenario(path) -> ScenarioFile:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text)


def save_scenario(sf: ScenarioFile, path) -> None:
    Path(path).write_text(dumps(sf))


def bundled_path(name: str) -> Path:
    """Path of a scenario file shipped with the package."""
    return Path(__file__).parent / "scenarios" / name
