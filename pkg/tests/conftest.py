import pytest

# criterion number -> (passed, description, elapsed seconds), filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str, float]] = {}


@pytest.fixture
def record_criterion():
    def record(number: int, passed: bool, text: str, elapsed: float) -> None:
        ACCEPTANCE[number] = (passed, text, elapsed)
        print(f"criterion {number}: {'PASS' if passed else 'FAIL'} {text} ({elapsed:.1f}s)")

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        passed, text, elapsed = ACCEPTANCE[number]
        terminalreporter.write_line(
            f"criterion {number}: {'PASS' if passed else 'FAIL'} {text} ({elapsed:.1f}s)"
        )
