import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dehnkit.layered import build_lst, core, layer_once  # noqa: E402
from dehnkit.triangulation import Triangulation  # noqa: E402


@pytest.fixture(scope="session")
def core_tri():
    return core()


@pytest.fixture(scope="session")
def lone_tet():
    return Triangulation([[None] * 4])


@pytest.fixture(scope="session")
def two_layer():
    """The core with one layer on its second boundary edge."""
    return layer_once(core(), 2)


@pytest.fixture(scope="session")
def lst_3_7():
    return build_lst("3/7")


@pytest.fixture(scope="session")
def lst_2_5():
    return build_lst("2/5")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(lines):
        terminalreporter.write_line(lines[n])
