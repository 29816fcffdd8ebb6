import random
from fractions import Fraction

import pytest

from conftest import MODELS, TORIC, random_big, random_integral_big
from okbd.errors import InputError, NoFanError
from okbd.okounkov import Flag, okounkov_polygon
from okbd.toric import (
    divisor_polytope,
    h0_count,
    hull_area,
    kappa_estimate,
    monomial_flag,
    monomial_hull,
    okounkov_via_monomials,
    polytope_okounkov_vertices,
    polytope_volume,
    restricted_section_dim,
    volume_estimate,
)
from okbd.zariski import NEG_INF, augmented_base_curves, volume


def brute_h0(model, D, m):
    """Independent count: scan a box and test every inequality."""
    poly = divisor_polytope(model, D, m)
    bound = 4 * max(abs(c) for _, c in poly.constraints) + 4
    return sum(
        all(v[0] * x + v[1] * y >= -c for v, c in poly.constraints)
        for x in range(-bound, bound + 1)
        for y in range(-bound, bound + 1)
    )


@pytest.mark.parametrize("vec, m, count", [((1, 6), 1, 12), ((1, 1), 2, 4), ((0, 0), 7, 1), ((0, -1), 3, 0)])
def test_h0_examples(F2, vec, m, count):
    assert h0_count(F2, vec, m) == count


def test_h0_closed_forms(F2):
    for m in range(1, 13):
        assert h0_count(F2, (1, 6), m) == (m + 1) * (5 * m + 1)
        if m % 2 == 0:
            assert h0_count(F2, (1, 1), m) == (m // 2 + 1) ** 2
        assert h0_count(F2, (0, 1), m) == m + 1


@pytest.mark.parametrize("name", TORIC)
def test_h0_matches_brute_force(name):
    model = MODELS[name]
    rng = random.Random(name)
    for _ in range(8):
        D = random_integral_big(model, rng, top=2)
        for m in (1, 2):
            assert h0_count(model, D, m) == brute_h0(model, D, m)


def test_no_fan(K3):
    with pytest.raises(NoFanError):
        h0_count(K3, (1, 1))


def test_bad_multiple(F2):
    with pytest.raises(InputError):
        h0_count(F2, (1, 6), 0)


def test_volume_estimate(F2):
    est = volume_estimate(F2, (1, 1), 40)
    assert est[39] == Fraction(2 * 21 * 21, 1600)
    assert abs(est[39] - Fraction(1, 2)) <= Fraction(3, 40)
    assert est[0] == 24 or volume_estimate(F2, (1, 6), 1) == [24]
    assert volume_estimate(F2, (0, 0), 3) == [2, Fraction(1, 2), Fraction(2, 9)]


def test_volume_estimate_of_zero_class_counts_constants(F2):
    # h0(0) = 1, so the normalized counts decay like 2/m^2
    assert all(v == Fraction(2, m * m) for m, v in enumerate(volume_estimate(F2, (0, 0), 10), 1))


@pytest.mark.parametrize("vec, m, dim", [((1, 6), 1, 2), ((1, 0), 20, 1), ((0, 0), 5, 1)])
def test_restricted_section_dim(F2, vec, m, dim):
    assert restricted_section_dim(F2, vec, "F", m) == dim


def test_restricted_dim_tracks_restricted_volume(F2):
    for m in range(10, 40):
        assert abs(Fraction(restricted_section_dim(F2, (1, 6), "F", m), m) - 1) <= Fraction(3, m)


def test_monomials_of_t_plus_6f(F2):
    pts = okounkov_via_monomials(F2, (1, 6), "F", "S", 1)
    assert len(pts) == 12
    body = okounkov_polygon(F2, (1, 6), Flag(F2.curve("F")))
    assert all(body.contains_point(p) for p in pts)
    assert okounkov_via_monomials(F2, (0, 0), "F", "S", 3) == {(0, 0)}


def test_monomial_hull_fills_body(F2):
    assert hull_area(monomial_hull(F2, (1, 6), "F", "S", 30)) >= 5 - Fraction(10, 30)


@pytest.mark.parametrize("name", TORIC)
def test_monomial_hull_inside_engine_body(name):
    model = MODELS[name]
    rng = random.Random(name + "hull")
    for _ in range(6):
        D = random_integral_big(model, rng, top=2)
        null = augmented_base_curves(model, D)
        for c in model.curves:
            flag = Flag(c)
            pair = monomial_flag(model, flag)
            if c in null or pair is None:
                continue
            body = okounkov_polygon(model, D, flag)
            for m in (1, 3, 7, 12):
                assert all(body.contains_point(p) for p in monomial_hull(model, D, pair[0], pair[1], m))


@pytest.mark.parametrize("name", TORIC)
def test_polytope_body_equals_engine_body(name):
    model = MODELS[name]
    rng = random.Random(name + "exact")
    for _ in range(20):
        D = random_big(model, rng)
        null = augmented_base_curves(model, D)
        for c in model.curves:
            for flag in [Flag(c)] + [Flag(c, point_on=o.label) for o in model.curves if o.flag_multiplicity and o is not c]:
                pair = monomial_flag(model, flag)
                if c in null or pair is None:
                    continue
                engine = {(x.as_fraction(), y.as_fraction()) for x, y in okounkov_polygon(model, D, flag).vertices()}
                assert engine == set(polytope_okounkov_vertices(model, D, *pair))


@pytest.mark.parametrize("name", TORIC)
def test_polytope_volume_equals_zariski_volume(name):
    model = MODELS[name]
    rng = random.Random(name + "vol")
    for _ in range(50):
        D = random_big(model, rng)
        assert polytope_volume(model, D) == volume(model, D)


@pytest.mark.parametrize("vec, kappa", [((1, 6), 2), ((0, 1), 1), ((0, 0), 0), ((0, -1), NEG_INF)])
def test_kappa(F2, vec, kappa):
    assert kappa_estimate(F2, vec, 20) == kappa
