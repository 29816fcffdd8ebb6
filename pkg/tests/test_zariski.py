import random
from fractions import Fraction

import pytest

from conftest import MODELS, TORIC, random_big, random_psef
from okbd.errors import NotBigError, NotPseudoEffectiveError
from okbd.toric import polytope_volume
from okbd.zariski import (
    NEG_INF,
    augmented_base_curves,
    decomposition_violations,
    is_nef,
    numerical_dimension,
    restricted_base_curves,
    volume,
    zariski_decompose,
)


def labels(curves):
    return {c.label for c in curves}


@pytest.mark.parametrize("vec, nef", [((1, 6), True), ((1, 1), False), ((0, 0), True)])
def test_is_nef(F2, vec, nef):
    assert is_nef(F2, vec) is nef


def test_decomposition_of_t_plus_f(F2):
    z = zariski_decompose(F2, (1, 1))
    assert tuple(z.positive) == (Fraction(1, 2), 1)
    assert [(c.label, a) for c, a in z.negative_support] == [("T", Fraction(1, 2))]


def test_nef_class_has_no_negative_part(F2):
    z = zariski_decompose(F2, (1, 6))
    assert tuple(z.positive) == (1, 6) and z.negative_support == ()


def test_minus_fiber_not_pseudoeffective(F2):
    with pytest.raises(NotPseudoEffectiveError):
        zariski_decompose(F2, (0, -1))


@pytest.mark.parametrize("vec, vol", [((1, 6), 10), ((1, 1), Fraction(1, 2)), ((0, 1), 0), ((0, -1), 0)])
def test_volume_examples(F2, vec, vol):
    assert volume(F2, vec) == vol


def test_base_loci(F2, F1):
    assert augmented_base_curves(F2, (1, 6)) == frozenset()
    assert labels(augmented_base_curves(F2, (1, 1))) == {"T"}
    assert augmented_base_curves(F2, (1, 5)) == frozenset()
    assert labels(restricted_base_curves(F2, (1, 1))) == {"T"}
    assert restricted_base_curves(F2, (1, 6)) == frozenset()
    assert restricted_base_curves(F1, (1, 1)) == frozenset()
    with pytest.raises(NotBigError):
        augmented_base_curves(F2, (0, 1))


@pytest.mark.parametrize("vec, dim", [((1, 6), 2), ((0, 1), 1), ((0, 0), 0), ((0, -1), NEG_INF)])
def test_numerical_dimension(F2, vec, dim):
    assert numerical_dimension(F2, vec) == dim


@pytest.mark.parametrize("name", sorted(MODELS))
def test_random_invariants(name):
    model = MODELS[name]
    rng = random.Random(name)
    for _ in range(100):
        D = random_psef(model, rng)
        z = zariski_decompose(model, D)
        assert decomposition_violations(model, D, z) == []


@pytest.mark.parametrize("name", sorted(MODELS))
def test_monotone_and_homogeneous(name):
    model = MODELS[name]
    rng = random.Random(name + "h")
    for _ in range(60):
        D = random_psef(model, rng)
        c = Fraction(rng.randint(1, 9), rng.randint(1, 5))
        assert volume(model, D * c) == c * c * volume(model, D)
        for g in model.effective_generators:
            assert volume(model, D + model.divisor(g)) >= volume(model, D)


@pytest.mark.parametrize("name", TORIC)
def test_volume_matches_polytope_area(name):
    model = MODELS[name]
    rng = random.Random(name + "p")
    for _ in range(60):
        D = random_big(model, rng)
        assert volume(model, D) == polytope_volume(model, D)


def test_volume_is_zero_off_the_big_cone(F2):
    # boundary of the effective cone
    assert volume(F2, (1, 2)) > 0
    assert volume(F2, (0, 5)) == 0
