import numpy as np
import pytest

from ndpa.amplifier import AmplifierParams


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def p_ref():
    """Omega = 2, chi = 0.6: tilt angle ln 2, gap 1.6."""
    return AmplifierParams(1.2, 0.8, 0.6)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[2])):
            terminalreporter.write_line(line)
