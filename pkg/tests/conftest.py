import numpy as np
import pytest

_acceptance: dict[str, list[str]] = {}

CRITERIA = {
    "C1": "R-gate identity",
    "C2": "braid group relations",
    "C3": "Bell bases",
    "C4": "sigma_1 sigma_2 Pauli expansion",
    "C5": "traced three-qubit Bell state",
    "C6": "all three-qubit reductions separable",
    "C7": "HS golden tables",
    "C8": "four-qubit trace",
    "C9": "coefficient counting and Parseval",
    "C10": "property suite",
}


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = report.keywords.get("criterion")
    if not marker:
        return
    crit = next((k for k in report.keywords if k.startswith("C") and k[1:].isdigit()), None)
    if crit:
        _acceptance.setdefault(crit, []).append(report.outcome)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion: acceptance criterion test")
    for i in range(1, 11):
        config.addinivalue_line("markers", f"C{i}: acceptance criterion {i}")


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(_acceptance, key=lambda c: int(c[1:])):
        outcomes = _acceptance[crit]
        status = "PASS" if all(o == "passed" for o in outcomes) else "FAIL"
        terminalreporter.write_line(f"{crit:>4}: {status}  {CRITERIA.get(crit, '')} ({len(outcomes)} test(s))")
