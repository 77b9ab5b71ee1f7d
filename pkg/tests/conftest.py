import random
import sys

import pytest

from wsvol.linalg import ExactMatrix, Z


@pytest.fixture
def rng():
    return random.Random(20261016)


def random_int_matrix(rng, rows, cols, bound=9):
    return ExactMatrix.from_rows(
        [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)], Z, cols=cols)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
