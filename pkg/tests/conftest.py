import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", deadline=None, max_examples=500)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


ACCEPTANCE_LINES: dict[int, str] = {}


def record_criterion(number: int, title: str, checks: list[tuple[str, bool]]) -> bool:
    """Store one PASS/FAIL line for an acceptance criterion and print it."""
    failed = [name for name, ok in checks if not ok]
    status = "FAIL" if failed else "PASS"
    detail = f" (failed: {'; '.join(failed)})" if failed else ""
    line = f"criterion {number:2d} {status}: {title}{detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)
    return not failed


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[number])
