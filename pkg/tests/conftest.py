import numpy as np
import pytest

from mating_forge.angles import Angle

RABBIT = complex([r for r in np.roots([1, 2, 1, 1]) if r.imag > 0][0])
AIRPLANE = float(min(np.roots([1, 2, 1, 1]).real))
CATALOG = {"1/3": -1.0 + 0j, "1/7": RABBIT, "6/7": RABBIT.conjugate(), "3/7": complex(AIRPLANE)}


def A(text: str) -> Angle:
    return Angle.parse(text)


def set_partitions(items):
    """Independent oracle: restricted-growth enumeration of all set partitions."""
    items = list(items)
    if not items:
        yield []
        return

    def rec(i, codes, m):
        if i == len(items):
            blocks = [[] for _ in range(m)]
            for x, k in zip(items, codes):
                blocks[k].append(x)
            yield blocks
            return
        for k in range(m + 1):
            yield from rec(i + 1, codes + [k], max(m, k + 1))

    yield from rec(0, [], 0)


@pytest.fixture
def catalog():
    return dict(CATALOG)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
