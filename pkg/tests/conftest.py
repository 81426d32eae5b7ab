import numpy as np
import pytest

from chargedbec.grid import make_grid
from chargedbec.state import PhysicalParams


@pytest.fixture
def params():
    return PhysicalParams()


@pytest.fixture
def grid():
    return make_grid(256, 40.0)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def acceptance(pytestconfig):
    """Record one pass/fail line per acceptance criterion for the terminal summary."""
    lines = pytestconfig.__dict__.setdefault("_acceptance_lines", [])

    def record(number, name, ok, detail):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {name} -- {detail}"
        lines.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.__dict__.get("_acceptance_lines")
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion ")[1].split(":")[0].rstrip("ab"))):
            terminalreporter.write_line(line)
