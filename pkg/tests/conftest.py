from __future__ import annotations

from importlib import resources

import pytest

from lfquiver.exactalg import FieldSpec

FIELDS = [FieldSpec.gf(2), FieldSpec.gf(5), FieldSpec.rationals()]


def fixture_path(name: str):
    return resources.files("lfquiver").joinpath("fixtures", name)


@pytest.fixture
def gf2():
    return FieldSpec.gf(2)


@pytest.fixture
def gf5():
    return FieldSpec.gf(5)


@pytest.fixture
def qq():
    return FieldSpec.rationals()


# one line per acceptance criterion, collected by tests/test_acceptance.py
ACCEPTANCE: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
