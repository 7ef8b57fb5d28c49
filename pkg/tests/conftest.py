import pytest

from emopulse.analyzer import default_resources


@pytest.fixture(scope="session")
def demo_resources():
    return default_resources()


def pytest_runtest_logreport(report):
    """One visible pass/fail line per acceptance criterion."""
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    outcome = "PASS" if report.passed else "FAIL"
    print(f"\n[acceptance] {outcome} {name} ({report.duration:.2f}s)")
