import random

import pytest

from threeplusone.samples import ten_vertex
from threeplusone.generator import generate_all

# filled by test_acceptance, printed after the run so the lines survive output capture
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def sample():
    return ten_vertex()


@pytest.fixture(scope="session")
def V(sample):
    """Vertex index by name in the ten-vertex sample."""
    return {sample.name(v): v for v in range(sample.n)}


_FREE: dict[int, list] = {}


def free_posets(n: int):
    """All (3+1)-free posets on n vertices up to isomorphism (memoised)."""
    if n not in _FREE:
        _FREE[n] = list(generate_all(n))
    return _FREE[n]


def shuffled(p, rng: random.Random):
    perm = list(range(p.n))
    rng.shuffle(perm)
    return p.relabel(perm), perm
