import random
from fractions import Fraction

import pytest

ACCEPTANCE_LINES = []


def random_rational(rng, lo=Fraction(0), hi=Fraction(1), den=97):
    """Uniform-ish rational strictly inside (lo, hi)."""
    return lo + (hi - lo) * Fraction(rng.randint(1, den - 1), den)


def distinct_rationals(rng, n, lo=Fraction(0), hi=Fraction(1), den=97):
    while True:
        xs = sorted(random_rational(rng, lo, hi, den) for _ in range(n))
        if all(p < q for p, q in zip(xs, xs[1:])):
            return xs


@pytest.fixture
def rng():
    return random.Random(20260415)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
