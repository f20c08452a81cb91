from __future__ import annotations

import pytest

CRITERIA = {
    1: "cone formula on S^1, T^2, S^2, Klein bottle",
    2: "suspended torus: middle (1,2,2,1), top (1,0,2,1), zero (1,2,0,1), under 5 s",
    3: "middle IH of compact oriented corpus spaces is palindromic",
    4: "extension criterion: link map, lift and surgery agree on both pairs",
    5: "surgery soundness on at least three fixtures",
    6: "projective-cone table for point and two points in P^1",
    7: "circle bundle homology and Euler characteristic zero",
    8: "Gysin chase vanishes on random and fixture data",
    9: "Chern-Mather lift for P^2, conic and cubic",
    10: "byte-identical reruns of every golden fixture",
}

_outcomes: dict[int, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _outcomes.setdefault(mark.args[0], []).append(rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n, text in CRITERIA.items():
        results = _outcomes.get(n)
        if results is None:
            status = "NOT RUN"
        else:
            status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"{status} criterion {n}: {text} ({sum(results or [])}/{len(results or [])} checks)")
