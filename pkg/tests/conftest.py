import pytest

_ACCEPTANCE: dict[str, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    key = f"{number:02d}"
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        status = "PASS" if report.passed else "FAIL"
        timing = getattr(item, "elapsed", None)
        note = f" ({timing:.2f} s)" if timing is not None else ""
        _ACCEPTANCE[key] = (status, f"{title}{note}")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE):
        status, text = _ACCEPTANCE[key]
        terminalreporter.write_line(f"CRITERION {key} {status}  {text}")
    passed = sum(1 for s, _ in _ACCEPTANCE.values() if s == "PASS")
    terminalreporter.write_line(f"{passed}/{len(_ACCEPTANCE)} criteria passed")
