import pytest

_LINES = "acceptance_lines"


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion checked by the test")
    setattr(config, _LINES, {})


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and rep.passed:
        return
    num, title = mark.args
    detail = dict(item.user_properties).get("detail", "")
    if rep.failed:
        msg = str(call.excinfo.value).splitlines()[0] if call.excinfo else rep.when
        detail = f"{detail}; {msg}" if detail else msg
    status = "PASS" if rep.passed else "FAIL"
    lines = getattr(item.config, _LINES)
    if rep.when == "call" or rep.failed:
        lines[num] = f"{status} criterion {num}: {title}" + (f" [{detail}]" if detail else "")


def pytest_terminal_summary(terminalreporter, config):
    lines = getattr(config, _LINES, {})
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(lines):
        terminalreporter.write_line(lines[num])
