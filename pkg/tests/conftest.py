import numpy as np
import pytest

from jordanblocks import BlaschkeProduct

ACCEPTANCE_LINES = []


def random_blaschke(rng, degree, radius=0.9):
    """Blaschke product with ``degree`` zeros uniform in the disc of ``radius``."""
    r = radius * np.sqrt(rng.uniform(size=degree))
    zeros = r * np.exp(2j * np.pi * rng.uniform(size=degree))
    const = np.exp(2j * np.pi * rng.uniform())
    return BlaschkeProduct(const, zeros)


def record_acceptance(number, title, passed, detail=""):
    line = f"criterion {number:2d} [{'PASS' if passed else 'FAIL'}] {title}"
    if detail:
        line += f" ({detail})"
    print(line)
    ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
