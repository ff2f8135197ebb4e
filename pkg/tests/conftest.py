import random

import pytest

from radsym.modgroup import GroupElement, GroupId, T, S


def random_sl2z(rng: random.Random, steps: int = 8) -> GroupElement:
    g = GroupElement.identity()
    for _ in range(rng.randint(2, steps)):
        g = g * T ** rng.randint(-3, 3) * S
    return g


def random_hyperbolic_sl2z(rng: random.Random, steps: int = 8) -> GroupElement:
    while True:
        g = random_sl2z(rng, steps)
        if abs(g.trace) > 2 and g.c != 0:
            return g if g.trace > 0 else -g


def random_principal(rng: random.Random, n: int, steps: int = 6) -> GroupElement:
    """Random word in the standard parabolic generators of Gamma(n)."""
    A = T ** n
    B = GroupElement(1, 0, n, 1)
    g = GroupElement.identity()
    for _ in range(rng.randint(2, steps)):
        g = g * (A if rng.random() < 0.5 else B) ** (rng.randint(-2, 2) or 1)
    return g


def random_principal_hyperbolic(rng: random.Random, n: int,
                                steps: int = 6) -> GroupElement:
    while True:
        g = random_principal(rng, n, steps)
        if abs(g.trace) > 2 and g.c != 0:
            return g if g.trace > 0 else -g


def random_in_group(rng: random.Random, G: GroupId,
                    steps: int = 5) -> GroupElement:
    """Random word in a Schreier generating set of G."""
    from radsym.modgroup import schreier_generators

    gens = [g for g in schreier_generators(G) if not g.canonical().is_identity()]
    g = GroupElement.identity()
    for _ in range(rng.randint(1, steps)):
        h = rng.choice(gens)
        g = g * (h if rng.random() < 0.5 else h.inverse())
    return g


@pytest.fixture
def rng():
    return random.Random(20260826)
