import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import acclog  # noqa: E402
from hdflow.ff import FieldCtx  # noqa: E402


def pytest_terminal_summary(terminalreporter):
    if not acclog.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for crit, status, detail in acclog.LINES:
        terminalreporter.write_line(f"{status}  {crit}  {detail}")


@pytest.fixture(scope="session")
def f81():
    return FieldCtx.preset("paper-f81")
