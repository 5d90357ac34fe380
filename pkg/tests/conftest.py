import os

import pytest
from hypothesis import HealthCheck, settings

from crystalrr.crystal import catalog
from crystalrr.rules import build_rules

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=300, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def a2():
    return catalog("a2-basic")


@pytest.fixture(scope="session")
def A2(a2):
    return a2.alphabet


@pytest.fixture(scope="session")
def E2(a2):
    return a2.matrix


@pytest.fixture(scope="session")
def D2(E2):
    return build_rules(E2)


@pytest.fixture(scope="session")
def a3():
    return catalog("a3-basic")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        ok, detail = RESULTS[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
