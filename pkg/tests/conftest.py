import functools
import random

import pytest

from wlax import LieAlgebraFamily, build_graded_setup, lax
from wlax.uea import UEA

SEED = 20170704


@functools.lru_cache(maxsize=None)
def setup_for(family, n, partition):
    return build_graded_setup(LieAlgebraFamily(family, n), partition)


@functools.lru_cache(maxsize=None)
def lax_for(family, n, partition, floor=None):
    s = setup_for(family, n, partition)
    return lax(s, floor, UEA(s))


@pytest.fixture
def rng():
    return random.Random(SEED)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in range(1, 11):
        status, dt = results.get(n, ("NOT RUN", None))
        extra = "" if dt is None else f" ({dt:.2f}s)"
        terminalreporter.write_line(f"criterion {n}: {status}{extra}")
