import numpy as np
import pytest

from socialfabric.rng import stream

# filled by test_acceptance.py, printed once at the end of the session
ACCEPTANCE = {}


@pytest.fixture
def rng():
    return stream(12345)


def binomial_probs(D, theta):
    from scipy.stats import binom

    return binom.pmf(np.arange(D + 1), D, theta)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        name, ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d} {'PASS' if ok else 'FAIL'}  {name}: {detail}")
