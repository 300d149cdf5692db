import numpy as np
import pytest

from nkictt.landscape import Landscape


def constant_landscape(n, k, value=0.5):
    deps = [[q for q in range(n) if q != p][:k] for p in range(n)]
    deps = np.array(deps, dtype=np.int64).reshape(n, k)
    return Landscape.from_arrays(deps, np.full((2 ** (k + 1), n), value))


@pytest.fixture
def flat():
    return constant_landscape(8, 3)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
