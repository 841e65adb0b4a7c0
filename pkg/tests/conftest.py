import pytest

from hierconf import build_taxonomy

T1_EDGES = [
    ("R", "A"), ("R", "B"),
    ("A", "A1"), ("A", "A2"),
    ("B", "B1"), ("B", "B2"),
    ("A1", "A1a"), ("A1", "A1b"),
]
D1_EDGES = [("R", "A"), ("R", "B"), ("A", "C"), ("B", "C")]


@pytest.fixture
def t1():
    return build_taxonomy(T1_EDGES)


@pytest.fixture
def d1():
    return build_taxonomy(D1_EDGES)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
