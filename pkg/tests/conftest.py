import os

import pytest

_ACCEPTANCE: list[str] = []


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run long reproduction checks")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow") or os.environ.get("ALTQW_SLOW") == "1":
        return
    skip = pytest.mark.skip(reason="long check; use --runslow or ALTQW_SLOW=1")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def criterion():
    """Record one pass/fail line for an acceptance criterion."""

    def record(label: str, ok: bool, detail: str) -> bool:
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {label}: {detail}"
        _ACCEPTANCE.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
