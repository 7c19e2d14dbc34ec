import pytest

from rdssdual.confusion import Codebook
from rdssdual.graph import cycle_graph, five_server_graph

ACCEPTANCE_LINES: list[str] = []

PENTAGON_WORDS = ["00000", "01100", "00011", "11011", "11101"]


@pytest.fixture
def pentagon():
    return cycle_graph(5)


@pytest.fixture
def five_server():
    return five_server_graph()


@pytest.fixture
def pentagon_code():
    return Codebook.from_strings(PENTAGON_WORDS, 2)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
