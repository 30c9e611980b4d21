from __future__ import annotations

import pytest

from tcx.io import load_fixture

CORPUS = [
    "point",
    "edge",
    "full_triangle",
    "hollow_triangle",
    "cone",
    "figure1",
    "hollow_triangle_expanded",
    "full_triangle_expanded",
]

# fixtures whose strong homotopy type is a point
COLLAPSIBLE = {"point", "edge", "full_triangle", "cone", "full_triangle_expanded"}


@pytest.fixture(scope="session")
def corpus():
    return {name: load_fixture(name) for name in CORPUS}


@pytest.fixture(scope="session")
def hollow():
    return load_fixture("hollow_triangle")


@pytest.fixture(scope="session")
def full():
    return load_fixture("full_triangle")


@pytest.fixture(scope="session")
def figure1():
    return load_fixture("figure1")


# one line per acceptance criterion, collected by tests/test_acceptance.py
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])


@pytest.fixture(scope="session")
def acceptance():
    return ACCEPTANCE
