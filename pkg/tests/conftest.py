import numpy as np
import pytest
from hypothesis import strategies as st

from closedchain.chain import ChainSpec

# (criterion number, description, passed) collected by the acceptance module
CRITERIA: list[tuple[int, str, bool]] = []


def random_feasible_chain(rng: np.random.Generator, n: int, lo=0.5, hi=2.0) -> ChainSpec:
    while True:
        links = rng.uniform(lo, hi, size=n)
        if 2 * links.max() <= links.sum():
            return ChainSpec(links)


@st.composite
def chains(draw, min_n=4, max_n=8):
    n = draw(st.integers(min_n, max_n))
    links = draw(
        st.lists(st.floats(0.2, 3.0, allow_nan=False), min_size=n, max_size=n).filter(
            lambda v: 2 * max(v) <= sum(v)
        )
    )
    return ChainSpec(links)


@pytest.fixture
def unit4():
    return ChainSpec([1, 1, 1, 1])


@pytest.fixture
def unit5():
    return ChainSpec([1, 1, 1, 1, 1])


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num, text, ok in sorted(CRITERIA):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {text}")
