import pytest

_acceptance: list[tuple[str, str, str]] = []


@pytest.hookimpl(tryfirst=True)
def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        detail = "; ".join(str(v) for k, v in report.user_properties if k == "detail")
        name = report.nodeid.split("::")[-1]
        _acceptance.append((name, "PASS" if report.passed else "FAIL", detail))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome, detail in _acceptance:
        terminalreporter.write_line(f"{outcome}  {name}" + (f"  ({detail})" if detail else ""))


@pytest.fixture
def constant_profile():
    from logret.workload import DailyVolumeProfile

    return DailyVolumeProfile((100_000,) * 90, (15_000_000,) * 90)
