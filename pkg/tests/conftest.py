from __future__ import annotations

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_even(rng, n, size=None):
    shape = ((n + 1) // 2,) if size is None else (size, (n + 1) // 2)
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
