import re
from collections import defaultdict

CRITERIA = {
    1: "worked cubic equilibrium via the CLI",
    2: "orthonormal basis closed forms",
    3: "zero rows/columns beyond the kernel degree",
    4: "reduced-coordinate payoff consistency",
    5: "support reduction",
    6: "symmetrization identities",
    7: "matrix-game LP certificates",
    8: "support bound and certification on a game corpus",
    9: "Monte Carlo cross-check",
}

_outcomes: dict[int, list[bool]] = defaultdict(list)
_pattern = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_")


def pytest_runtest_logreport(report):
    m = _pattern.search(report.nodeid)
    if m and (report.when == "call" or report.outcome == "failed"):
        _outcomes[int(m.group(1))].append(report.outcome == "passed")


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(CRITERIA):
        if k not in _outcomes:
            continue
        status = "PASS" if all(_outcomes[k]) else "FAIL"
        terminalreporter.write_line(f"criterion {k}: {status}  {CRITERIA[k]}")
