import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

import pytest

from tspp5 import ubasis


@pytest.fixture(scope="session")
def appendix():
    return ubasis.appendix_rows()


@pytest.fixture(scope="session")
def computed_rows():
    return ubasis.compute_base_rows(ubasis.DEFAULT_PREC)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
