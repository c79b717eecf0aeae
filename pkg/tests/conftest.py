import functools
import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "repo",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


@functools.lru_cache(maxsize=None)
def _f333(rot):
    from entcert.constructions import family_333

    return family_333(rot)


@pytest.fixture(scope="session")
def f222():
    from entcert.constructions import family_222

    return family_222()


@pytest.fixture(scope="session")
def omega2():
    from entcert.constructions import omega_222

    return omega_222()


@pytest.fixture(scope="session")
def f000():
    return _f333((0, 0, 0))


@pytest.fixture(scope="session")
def family333():
    return _f333


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
