import math
import random

import pytest


@pytest.fixture
def rng():
    return random.Random(0x5EC7104)


def maclaurin_erf(x: float, terms: int = 60) -> float:
    """Independent erf oracle: alternating Maclaurin series with fsum."""
    parts = []
    power = x
    factorial = 1.0
    for k in range(terms):
        parts.append((-1.0) ** k * power / (factorial * (2 * k + 1)))
        power *= x * x
        factorial *= k + 1
    return 2.0 / math.sqrt(math.pi) * math.fsum(parts)


def pascal_binomial(n: int, k: int) -> int:
    """Binomial coefficient from an explicit Pascal triangle."""
    row = [1]
    for _ in range(n):
        row = [1] + [row[i] + row[i + 1] for i in range(len(row) - 1)] + [1]
    return row[k]
