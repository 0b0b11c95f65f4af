import random
from fractions import Fraction

import pytest


def random_unit_fraction(rng: random.Random, max_den: int = 10**4) -> Fraction:
    q = rng.randrange(1, max_den + 1)
    p = rng.randrange(0, q + 1)
    return Fraction(p, q)


@pytest.fixture
def rng():
    return random.Random(0)
