import pytest

_criteria: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): numbered acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    entry = _criteria.setdefault(number, {"title": title, "passed": True, "measured": ""})
    if report.failed:
        entry["passed"] = False
    if report.when == "call":
        entry["measured"] = "; ".join(str(v) for k, v in item.user_properties if k == "measured")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        status = "PASS" if entry["passed"] else "FAIL"
        line = f"[{status}] criterion {number:>2}: {entry['title']}"
        if entry["measured"]:
            line += f"  ({entry['measured']})"
        terminalreporter.write_line(line)
    passed = sum(e["passed"] for e in _criteria.values())
    terminalreporter.write_line(f"{passed}/{len(_criteria)} criteria pass")
