"""Shared test plumbing: the acceptance summary printed after the run."""

ACCEPTANCE_RESULTS = []


def record_acceptance(criterion: int, name: str, passed: bool, detail: str):
    ACCEPTANCE_RESULTS.append((criterion, name, passed, detail))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for criterion, name, passed, detail in sorted(ACCEPTANCE_RESULTS):
        verdict = "PASS" if passed else "FAIL"
        tr.write_line(f"criterion {criterion} [{name}]: {verdict} - {detail}")
