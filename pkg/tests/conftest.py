"""Shared fixtures and random-class generators."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from okbd.fixtures import all_models, blown_up_plane, hirzebruch, k3_two_fibrations, ruled_f1

AMPLE = {
    "F0": (1, 1),
    "F1": (1, 1),
    "F2": (1, 3),
    "F3": (1, 4),
    "K3": (1, 1),
    "Bl2P2": (3, -1, -1),
}

MODELS = {m.name: m for m in all_models()}
TORIC = [name for name, m in MODELS.items() if m.toric_fan]


def ample(model):
    return model.divisor(AMPLE[model.name])


def random_fraction(rng: random.Random, top: int = 6, den: int = 4) -> Fraction:
    return Fraction(rng.randint(0, top * den), rng.choice(range(1, den + 1)))


def random_psef(model, rng: random.Random):
    """Nonnegative rational combination of the declared effective generators."""
    out = model.divisor([0] * model.rank)
    for g in model.effective_generators:
        out = out + model.divisor(g) * random_fraction(rng)
    return out


def random_big(model, rng: random.Random):
    """Pseudoeffective plus a positive multiple of an ample class."""
    c = Fraction(rng.randint(1, 12), rng.randint(1, 4))
    return random_psef(model, rng) + ample(model) * c


def random_integral_big(model, rng: random.Random, top: int = 5):
    vec = [0] * model.rank
    for g in model.effective_generators:
        k = rng.randint(0, top)
        vec = [a + k * b for a, b in zip(vec, g)]
    k = rng.randint(1, 3)
    vec = [a + k * b for a, b in zip(vec, AMPLE[model.name])]
    return model.divisor(vec)


@pytest.fixture
def F2():
    return hirzebruch(2)


@pytest.fixture
def F1():
    return ruled_f1()


@pytest.fixture
def K3():
    return k3_two_fibrations(2)


@pytest.fixture
def Bl2():
    return blown_up_plane()


@pytest.fixture
def rng():
    return random.Random(20241018)
