import pathlib

import numpy as np
import pytest

from ebi_forge import build_instance

DATA = pathlib.Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def qubit():
    return build_instance(2)


@pytest.fixture(scope="session")
def qutrit():
    return build_instance(3, "hesse")


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture(scope="session")
def d5_fiducial_path():
    return DATA / "fiducial_d5.json"


ACCEPTANCE_LINES = []


@pytest.fixture
def criterion(request):
    """Record one pass/fail line per acceptance criterion for the terminal summary."""
    label = request.node.get_closest_marker("criterion").args[0]
    state = {"ok": False}

    def passed():
        state["ok"] = True

    yield passed
    ACCEPTANCE_LINES.append(f"{'PASS' if state['ok'] else 'FAIL'}  {label}")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion label")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip("."))):
            terminalreporter.write_line(line)
