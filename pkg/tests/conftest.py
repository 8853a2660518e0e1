"""Shared fixtures: small fields and schemes reused across test modules."""
from __future__ import annotations

import sys

import pytest
from hypothesis import settings

from lwhss import GF, construct_scheme

settings.register_profile("suite", deadline=None, max_examples=60)
settings.load_profile("suite")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Echo the one-line-per-criterion acceptance results after the run."""
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "ACCEPTANCE_LINES", None) if mod else None
    if not lines:
        return
    terminalreporter.ensure_newline()
    terminalreporter.section("acceptance criteria", sep="-")
    for n in sorted(lines):
        terminalreporter.write_line(lines[n])


@pytest.fixture(scope="session")
def gf2():
    return GF(2)


@pytest.fixture(scope="session")
def gf3():
    return GF(3)


@pytest.fixture(scope="session")
def gf4():
    return GF(4)


@pytest.fixture(scope="session")
def gf5():
    return GF(5)


@pytest.fixture(scope="session")
def tiny_scheme():
    """Smallest nontrivial scheme: q=2, s=3, t=d=m=1, two instances."""
    return construct_scheme(2, 3, 1, 1, 1)


@pytest.fixture(scope="session")
def degree2_scheme():
    """Degree-2 scheme needing extension-field scaffolding: q=2, s=5."""
    return construct_scheme(2, 5, 1, 2, 2)


@pytest.fixture(scope="session")
def gf9():
    return GF(9)
