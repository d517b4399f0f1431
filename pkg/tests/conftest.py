from __future__ import annotations

CRITERIA = {
    1: "cubic clash: both routes and the -1/3 hbar^2 residual",
    2: "metaplectic Dirac check on the 15 quadratic pairs",
    3: "sigma_eta Dirac check on the coordinate algebra up to degree 8",
    4: "scalar ambiguities E, F, G",
    5: "extension infeasibility and the quadratic restriction",
    6: "closure suite",
    7: "generation and maximality evidence",
    8: "quadratic span classifier",
    9: "algebraic property suites",
}

_outcomes: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k): acceptance criterion number k")


def pytest_collection_modifyitems(items):
    for item in items:
        for mark in item.iter_markers("criterion"):
            item.user_properties.append(("criterion", mark.args[0]))


def pytest_runtest_logreport(report):
    # a failure in setup counts, otherwise only the call phase does
    if report.when != "call" and not report.failed:
        return
    for key, k in report.user_properties:
        if key == "criterion":
            _outcomes.setdefault(k, []).append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(CRITERIA):
        if k not in _outcomes:
            continue
        verdict = "PASS" if all(_outcomes[k]) else "FAIL"
        terminalreporter.write_line(f"criterion {k}: {verdict}  {CRITERIA[k]}")
