import sys

import numpy as np
import pytest

from lozilab import SOLVED_C0, SOLVED_C01, Params, check_assumptions
from lozilab.precision import set_precision

REF = Params(1.8, 0.3, 0.0)


def sample_admissible(n, seed, a=(1.4, 2.2), b=(0.0, 0.6), c=(0.0, 0.3)):
    """Rejection-sample ``n`` triples satisfying A1-A3."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        p = Params(rng.uniform(*a), rng.uniform(*b), rng.uniform(*c))
        if check_assumptions(p).passed:
            out.append(p)
    return out


@pytest.fixture(autouse=True)
def _double_profile():
    set_precision("double")
    yield
    set_precision("double")


@pytest.fixture
def ref():
    return REF


@pytest.fixture
def solved_c0():
    return SOLVED_C0


@pytest.fixture
def solved_c01():
    return SOLVED_C01


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.summary_lines():
        terminalreporter.write_line(line)
