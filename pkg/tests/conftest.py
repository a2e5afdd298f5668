import numpy as np
import pytest
from hypothesis import settings

from multibid import Instance, Staircase

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def random_staircase(rng: np.random.Generator, m: int, n: int) -> Staircase:
    return Staircase(tuple(int(i) for i in rng.permutation(m)),
                     tuple(int(h) for h in rng.integers(0, m + 1, n)))


def random_multiplicative(rng: np.random.Generator, m: int, n: int, budget: float | None = None) -> Instance:
    rows = np.exp(rng.uniform(-2, 2, m))
    cols = np.exp(rng.uniform(-2, 2, n))
    prices = np.outer(rows, cols)
    values = rng.uniform(0, 1, (m, n))
    if budget is None:
        budget = 0.25 * float(prices.sum())
    return Instance(prices, values, budget, (rows, cols))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES: list[str] = []


def record(number: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}" + (f"  [{detail}]" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
