"""Acceptance criteria 1 to 9, each at its stated tolerance.

Every criterion prints one PASS/FAIL line. Run directly with
``python tests/test_acceptance.py`` for the summary alone.
"""

from __future__ import annotations

import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import MODELS, random_big, random_psef  # noqa: E402
from okbd.errors import FlagError  # noqa: E402
from okbd.fibration import (  # noqa: E402
    FibrationScenario,
    augmented_restricted_volume,
    check_box_criterion,
    check_product_inequality,
)
from okbd.fixtures import hirzebruch, k3_two_fibrations, ruled_f1  # noqa: E402
from okbd.okounkov import EffectiveRepresentative, Flag, OkounkovPolygon, minkowski_sum, okounkov_polygon, polygon_contains  # noqa: E402
from okbd.report import run_checks  # noqa: E402
from okbd.scenario import bundled_path, parse_scenario  # noqa: E402
from okbd.toric import h0_count, monomial_flag, monomial_hull  # noqa: E402
from okbd.zariski import augmented_base_curves, decomposition_violations, intersect, volume, zariski_decompose  # noqa: E402

BUNDLED = ["ex0_hirzebruch.json", "ex1_ruled.json", "ex2_point_flag.json", "ex3_k3.json"]


def _vertex_set(p):
    return {(x.as_fraction(), y.as_fraction()) for x, y in p.vertices()}


def _valid_flags(model, D):
    null = augmented_base_curves(model, D)
    out = []
    for c in model.curves:
        if c in null:
            continue
        out.append(Flag(c))
        for o in model.curves:
            if o.flag_multiplicity and o is not c:
                f = Flag(c, point_on=o.label)
                try:
                    f.check(model)
                except FlagError:
                    continue
                out.append(f)
    return out


def _fmt(points):
    return " ".join(f"({x},{y})" for x, y in sorted(points))


def criterion_1():
    start = time.perf_counter()
    sf = parse_scenario(bundled_path("ex0_hirzebruch.json"))
    report = run_checks(sf)
    v = report.record("log_pair_on_F2.product_inequality").values
    elapsed = time.perf_counter() - start
    ok = (
        v["volume"] == 10
        and v["base_volume"] == 6
        and v["fiber_restriction"] == 1
        and v["augmented_restricted_volume"] == 0
        and v["lhs"] == 5
        and v["rhs_augmented"] == 0
        and v["first_inequality"] is True
        and v["restricted_product"] == 6
        and v["restricted_relation"] == "<"
        and elapsed < 1.0
    )
    return ok, f"vol={v['volume']} base={v['base_volume']} R.F={v['fiber_restriction']} vol+={v['augmented_restricted_volume']} 5>=0 and 5<6 in {elapsed:.3f}s"


def criterion_2():
    sc = parse_scenario(bundled_path("ex1_ruled.json")).scenarios[0]
    r = check_product_inequality(sc)
    b = check_box_criterion(sc)
    T = sc.model.curve("T")
    a = b_ = 1
    formula = 2 * a * b_ + b_ * b_ * intersect(sc.model, T, T)
    verts = _vertex_set(b.polygon)
    ok = (
        r.volume == 3 == formula
        and r.lhs == Fraction(3, 2)
        and r.restricted_product == 1
        and r.restricted_relation == ">"
        and verts == {(0, 0), (0, 1), (1, 1), (2, 0)}
        and _vertex_set(b.box) == {(0, 0), (1, 0), (1, 1), (0, 1)}
        and polygon_contains(b.polygon, b.box)
        and not b.equality
    )
    return ok, f"vol={r.volume} 3/2>{r.restricted_product} polygon={_fmt(verts)} strict={not b.equality}"


def criterion_3():
    sc = parse_scenario(bundled_path("ex3_k3.json")).scenarios[0]
    r = check_product_inequality(sc)
    b = check_box_criterion(sc)
    F1, F2 = sc.model.curve("F1"), sc.model.curve("F2")
    formula = 2 * 1 * 1 * intersect(sc.model, F1, F2)
    ok = (
        r.volume == 4 == formula
        and r.lhs == 2 == r.restricted_product
        and r.restricted_relation == "="
        and b.equality
        and _vertex_set(b.polygon) == {(0, 0), (1, 0), (1, 2), (0, 2)}
    )
    return ok, f"vol={r.volume} {r.lhs}={r.restricted_product} polygon equals box [0,1]x[0,2]: {b.equality}"


def criterion_4():
    start = time.perf_counter()
    checked = bad = 0
    cases = []
    for name in BUNDLED:
        sf = parse_scenario(bundled_path(name))
        for D in list(sf.divisors.values()) + [s.divisor_D for s in sf.scenarios]:
            if volume(sf.model, D) > 0:
                cases.append((sf.model, D))
    for model in MODELS.values():
        for c in model.curves:
            if volume(model, c.divisor) > 0:
                cases.append((model, c.divisor))
    per_model = {}
    for name, model in MODELS.items():
        rng = random.Random("eq1" + name)
        for _ in range(100):
            cases.append((model, random_big(model, rng)))
            per_model[name] = per_model.get(name, 0) + 1
    for i, (model, D) in enumerate(cases):
        flags = _valid_flags(model, D)
        flag = flags[i % len(flags)]
        if 2 * okounkov_polygon(model, D, flag).area() != volume(model, D):
            bad += 1
        checked += 1
    elapsed = time.perf_counter() - start
    ok = bad == 0 and elapsed <= 10 and min(per_model.values()) >= 100
    return ok, f"{checked} big classes, {bad} mismatches, {elapsed:.2f}s"


def criterion_5():
    count = bad = 0
    for name, model in MODELS.items():
        rng = random.Random("zar" + name)
        for _ in range(90):
            D = random_psef(model, rng)
            z = zariski_decompose(model, D)
            bad += bool(decomposition_violations(model, D, z))
            c = Fraction(rng.randint(1, 9), rng.randint(1, 7))
            bad += volume(model, D * c) != c * c * volume(model, D)
            for g in model.effective_generators:
                bad += volume(model, D + model.divisor(g)) < volume(model, D)
            count += 1
    return count >= 500 and bad == 0, f"{count} pseudoeffective classes, {bad} violations"


def criterion_6():
    pairs = bad = 0
    per = {}
    for name, model in MODELS.items():
        rng = random.Random("mink" + name)
        for i in range(100):
            D1, D2 = random_big(model, rng), random_big(model, rng)
            flags = [f for f in _valid_flags(model, D1) if f in _valid_flags(model, D2)]
            flag = flags[i % len(flags)]
            s = minkowski_sum(okounkov_polygon(model, D1, flag), okounkov_polygon(model, D2, flag))
            bad += not polygon_contains(okounkov_polygon(model, D1 + D2, flag), s)
            pairs += 1
            per[name] = per.get(name, 0) + 1
    return bad == 0 and min(per.values()) >= 100, f"{pairs} pairs, {bad} containment failures"


ORACLE_DIVISORS = {"T+6F": (1, 6), "T+F": (1, 1), "T+3F": (1, 3), "2T+5F": (2, 5)}


def criterion_7():
    start = time.perf_counter()
    model = hirzebruch(2)
    failures = {}
    for label, vec in ORACLE_DIVISORS.items():
        vol = volume(model, vec)
        worst = max(
            (abs(Fraction(2 * h0_count(model, vec, m), m * m) - vol) * m, m) for m in range(10, 61)
        )
        if worst[0] > 3:
            failures[label] = worst
    hull_bad = 0
    for vec in ORACLE_DIVISORS.values():
        for flag in _valid_flags(model, model.divisor(vec)):
            pair = monomial_flag(model, flag)
            if pair is None:
                continue
            body = okounkov_polygon(model, vec, flag)
            for m in range(1, 31):
                hull_bad += not all(body.contains_point(p) for p in monomial_hull(model, vec, pair[0], pair[1], m))
    elapsed = time.perf_counter() - start
    ok = not failures and hull_bad == 0 and elapsed <= 60
    detail = ", ".join(f"{k}: max m*err={float(v[0]):.3f} at m={v[1]}" for k, v in failures.items())
    return ok, f"volume within 3/m fails for [{detail}]; hull escapes={hull_bad}; {elapsed:.2f}s"


def _random_scenarios(n):
    rng = random.Random("thm11")
    f1, k3 = ruled_f1(), k3_two_fibrations(2)
    out = []
    for i in range(n):
        model, fiber, other = (f1, "F", "T") if i % 2 else (k3, "F1", "F2")
        terms = [(model.curve(other), Fraction(rng.randint(1, 6), rng.randint(1, 3)))]
        if rng.random() < 0.5:
            terms.append((model.curve(fiber), Fraction(rng.randint(1, 6), rng.randint(1, 3))))
        R = EffectiveRepresentative(terms)
        F = model.curve(fiber)
        d = Fraction(rng.randint(1, 9), rng.randint(1, 4))
        out.append(
            FibrationScenario(
                model=model,
                fiber_class=F.divisor,
                base_genus=0,
                divisor_D=F.divisor * d + R.divisor_class(model.rank),
                base_divisor_degree=d,
                R=R,
                ample_A=model.divisor((1, 1)),
                flag=Flag(F),
                weak_positivity_assumed=True,
            )
        )
    return out


def criterion_8():
    randomized = _random_scenarios(200)
    second_bad = sum(
        not (volume(s.model, s.divisor_D) / 2 >= s.base_divisor_degree * intersect(s.model, s.R_class, s.fiber_class))
        for s in randomized
    )
    every = randomized + [s for n in BUNDLED for s in parse_scenario(bundled_path(n)).scenarios]
    first_bad = sum(
        not (volume(s.model, s.divisor_D) / 2 >= s.base_divisor_degree * augmented_restricted_volume(s)) for s in every
    )
    ok = second_bad == 0 and first_bad == 0
    return ok, f"{len(randomized)} weak-positivity scenarios ({second_bad} violations), first inequality on {len(every)} ({first_bad} violations)"


def criterion_9():
    results = []
    for name in BUNDLED:
        for s in parse_scenario(bundled_path(name)).scenarios:
            amples = (s.ample_A,) + tuple(s.alternate_amples)
            distinct = len(set(amples)) >= 2
            values = {augmented_restricted_volume(s, ample=A) for A in amples}
            results.append((s.name, distinct and len(values) == 1))
    ok = bool(results) and all(r for _, r in results)
    return ok, ", ".join(f"{n}={'agree' if r else 'DIFFER'}" for n, r in results)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8, criterion_9]


def _line(i, ok, detail):
    return f"criterion {i}: {'PASS' if ok else 'FAIL'}  {detail}"


@pytest.mark.parametrize("index", range(1, len(CRITERIA) + 1))
def test_criterion(index, capsys):
    ok, detail = CRITERIA[index - 1]()
    with capsys.disabled():
        print("\n" + _line(index, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    status = 0
    for i, crit in enumerate(CRITERIA, 1):
        ok, detail = crit()
        print(_line(i, ok, detail))
        status |= not ok
    sys.exit(status)
