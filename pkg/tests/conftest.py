import random
import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from factorlab.corpus import generate_connected  # noqa: E402


@lru_cache(maxsize=None)
def corpus(n: int):
    return tuple(generate_connected(n))


def corpus_upto(n_max: int, n_min: int = 1):
    for n in range(n_min, n_max + 1):
        yield from corpus(n)


@pytest.fixture
def rng():
    return random.Random(20240611)


# Acceptance lines collected by tests/test_acceptance.py, printed after the run.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
