import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hessbetti.rootsys import build_root_system  # noqa: E402
from hessbetti.weyl import WeylGroup  # noqa: E402


@lru_cache(maxsize=None)
def system(label):
    return build_root_system(label[0], int(label[1:]))


@lru_cache(maxsize=None)
def group(label):
    return WeylGroup(system(label))


def vec(rs, *coeffs):
    """Root index of a coefficient vector."""
    return rs.index_of[tuple(coeffs)]


@pytest.fixture
def a2():
    return system("A2"), group("A2")


_criteria = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" in report.nodeid and report.when == "call":
        _criteria[report.nodeid.split("::")[-1]] = report.outcome
    elif "test_acceptance.py::test_criterion_" in report.nodeid and report.failed:
        _criteria[report.nodeid.split("::")[-1]] = "failed"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria, key=lambda s: int(s.split("_")[2])):
        verdict = "PASS" if _criteria[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {name}")
