from __future__ import annotations

import pytest

from quandlekit.permgroup import Permutation, generate
from quandlekit.quandle import dihedral_quandle, trivial_quandle, validate

CRITERIA = {
    1: "oracle equivalence of the two factorization deciders",
    2: "closure formulas agree (all quandles, order <= 6)",
    3: "presentation round trip (connected, order <= 8)",
    4: "triples vs exhaustive enumeration, n = 1..6",
    5: "omega exists iff N1 <= N2",
    6: "congruence iff normal (catalog, order <= 6)",
    7: "every surjection factors as rigid after orbit quotient",
    8: "quotient presentation checks",
    9: "Inn abelian iff trivial (connected, order <= 8)",
    10: "CLI exit codes and byte-exact round trip",
}

_outcomes: dict[int, tuple[str, str]] = {}


def p(text: str, degree: int) -> Permutation:
    return Permutation.from_cycles(text, degree)


@pytest.fixture
def R3():
    return dihedral_quandle(3)


@pytest.fixture
def R4():
    return dihedral_quandle(4)


@pytest.fixture
def T3():
    return trivial_quandle(3)


@pytest.fixture
def point():
    return validate([[0]])


@pytest.fixture
def S3():
    return generate(3, [p("(0 1)", 3), p("(1 2)", 3)])


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    n = marker.args[0]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        detail = "; ".join(f"{k}={v}" for k, v in report.user_properties)
        _outcomes[n] = ("PASS" if report.passed else "FAIL", detail)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        if n in _outcomes:
            status, detail = _outcomes[n]
            suffix = f" ({detail})" if detail else ""
            terminalreporter.write_line(f"criterion {n:2d} {status}: {CRITERIA[n]}{suffix}")
