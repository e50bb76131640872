import random
from contextlib import contextmanager
from fractions import Fraction

import pytest

from kradical.poly import Poly

ACCEPTANCE: list[str] = []


@contextmanager
def criterion(number: int, title: str):
    """Record one PASS/FAIL line for an acceptance criterion."""
    try:
        yield
    except BaseException as err:
        line = f"FAIL criterion {number}: {title} ({type(err).__name__}: {str(err).splitlines()[0] if str(err) else ''})"
        ACCEPTANCE.append(line)
        print(line)
        raise
    line = f"PASS criterion {number}: {title}"
    ACCEPTANCE.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)


def random_rational_poly(rng: random.Random, degree: int) -> Poly:
    coeffs = [Fraction(rng.randint(-9, 9), rng.choice((1, 1, 2, 3))) for _ in range(degree)]
    coeffs.append(Fraction(rng.choice((1, -1, 2, 3))))
    return Poly(coeffs)


@pytest.fixture
def rng():
    return random.Random(20240601)
