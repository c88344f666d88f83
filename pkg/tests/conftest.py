import random

import pytest

from zeckmod.fibseq import FibSequence
from zeckmod.module_space import Element, ModuleSpec, preset

PRESETS = ["integers", "gaussian", "eisenstein", "quadratic:2", "e8"]

# criterion number -> (passed, detail); filled in by test_acceptance
ACCEPTANCE = {}


@pytest.fixture(scope="session")
def gaussian():
    return preset("gaussian")


@pytest.fixture(scope="session")
def integers():
    return preset("integers")


@pytest.fixture
def rng():
    return random.Random(12345)


def random_int_sequence(rng: random.Random, k: int, rank: int) -> FibSequence:
    """Order-k sequence over Z^rank with a random window, entries in [-9, 9]."""
    spec = ModuleSpec(rank, tuple(f"e{j}" for j in range(rank)))
    window = [Element(tuple(rng.randint(-9, 9) for _ in range(rank))) for _ in range(k)]
    return FibSequence(k, spec, rng.randint(-5, 5), window)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {n:>2}: {detail}")
