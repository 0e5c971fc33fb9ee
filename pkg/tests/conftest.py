import random

import pytest

from simpeff import nerve as nv
from simpeff import palg


@pytest.fixture(scope="session")
def l2():
    return palg.interval_effect_algebra(2)


@pytest.fixture(scope="session")
def l3():
    return palg.interval_effect_algebra(3)


@pytest.fixture(scope="session")
def bool2():
    return palg.boolean_effect_algebra(2)


@pytest.fixture(scope="session")
def q8():
    return nv.quaternion_group()


@pytest.fixture(scope="session")
def q8_magma(q8):
    return nv.commuting_magma(q8)


@pytest.fixture(scope="session")
def one_element_magma():
    return palg.PartialUnitalMagma(1, {(0, 0): 0})


def random_magma(rng: random.Random, size: int, density: float = 0.5) -> palg.PartialUnitalMagma:
    """A random partial unital magma: unit row/column forced, the rest coin-flipped."""
    product = {(0, m): m for m in range(size)}
    product.update({(m, 0): m for m in range(size)})
    for a in range(1, size):
        for b in range(1, size):
            if rng.random() < density:
                product[(a, b)] = rng.randrange(size)
    m = palg.PartialUnitalMagma(size, product)
    m.validate()
    return m
