import math

import numpy as np
import pytest

from hankelcert.objective import F1, F2
from hankelcert.optimize import branch_and_bound_max

ACCEPTANCE_LINES = []


def grid_maximum(name, n=2001):
    """Brute-force maximum over the feasible points of an n x n grid on [0,1] x [0,1/sqrt(3)].

    The objectives are transcribed independently of the library.
    """
    xs = np.linspace(0.0, 1.0, n)
    ys = np.linspace(0.0, 1.0 / math.sqrt(3.0), n)
    x, y = np.meshgrid(xs, ys, indexing="ij")
    u = 1.0 - x * x - 3.0 * y * y
    feasible = u >= 0.0
    root = np.sqrt(np.where(feasible, u, 0.0))
    if name == "F1":
        f = 4.0 / math.sqrt(5.0) * x * root + x**4 + 4.0 * y * y
    else:
        f = (2.0 / math.sqrt(7.0) + 4.0 * x * y + 2.0 * x**3) * root
        f += 0.8 - 0.8 * x * x - 2.4 * y * y + 3.0 * x * x * y * y + 2.0 * y**3
    f = np.where(feasible, f, -np.inf)
    k = int(np.argmax(f))
    return float(f.flat[k]), (float(x.flat[k]), float(y.flat[k]))


@pytest.fixture(scope="session")
def certified():
    return {obj.name: branch_and_bound_max(obj, 1e-6) for obj in (F1, F2)}


@pytest.fixture(scope="session")
def grid_maxima():
    return {name: grid_maximum(name) for name in ("F1", "F2")}


@pytest.fixture
def acceptance():
    def record(number, ok, detail):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
