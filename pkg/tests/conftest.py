import pytest

from grover_clique.graph import Graph, example_graph


@pytest.fixture
def g32():
    """Path 1-2-3; its complement is the single edge (1, 3)."""
    return example_graph("g32")


@pytest.fixture
def g21():
    return example_graph("g21")


@pytest.fixture
def fig1():
    return example_graph("fig1")


@pytest.fixture
def k4():
    return Graph(4, frozenset({(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)}))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        ok, title, elapsed = RESULTS[number]
        terminalreporter.write_line(f"AC{number:02d} {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s) {title}")
