import numpy as np
import pytest

from irrcorr.coords import random_state

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def random_states():
    def make(count, n=3, seed=0, scale=0.3, family=None):
        gen = np.random.default_rng(seed)
        return [random_state(n, gen, scale, family) for _ in range(count)]

    return make


def random_hermitian(rng, d, radius=None):
    a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    h = (a + a.conj().T) / 2
    if radius is not None:
        h *= radius / np.abs(np.linalg.eigvalsh(h)).max()
    return h


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
