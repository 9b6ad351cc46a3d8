import pytest

_descriptions: dict[str, str] = {}
_outcomes: dict[str, str] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        if item.name.startswith("test_criterion_"):
            doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
            _descriptions[item.nodeid] = doc


def pytest_runtest_logreport(report):
    if report.nodeid not in _descriptions:
        return
    if report.when == "call" or report.failed:
        _outcomes.setdefault(report.nodeid, "PASS" if report.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, doc in _descriptions.items():
        if nodeid in _outcomes:
            terminalreporter.write_line(f"{_outcomes[nodeid]}  {doc}")
