import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from jordansym import BlockAlgebra

settings.register_profile(
    "default", max_examples=25, deadline=None, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

dims_strategy = st.lists(st.integers(min_value=1, max_value=4), min_size=1, max_size=3).map(tuple)
seeds = st.integers(min_value=0, max_value=2**32 - 1)

ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def m2():
    return BlockAlgebra((2,))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2])):
            terminalreporter.write_line(line)
