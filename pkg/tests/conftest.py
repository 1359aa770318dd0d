import pytest

from cliquematch.graph import AttributedGraph, complete_graph, path_graph


@pytest.fixture
def p2():
    return path_graph(2)


@pytest.fixture
def p3():
    return path_graph(3)


@pytest.fixture
def k3():
    return complete_graph(3)


@pytest.fixture
def vertex_a():
    return AttributedGraph([["a"]])


@pytest.fixture
def vertex_b():
    return AttributedGraph([["b"]])


_ACCEPTANCE: list[str] = []


@pytest.fixture
def acceptance_line():
    """Record one pass/fail line for the terminal summary."""

    def record(criterion, ok, detail):
        _ACCEPTANCE.append(f"criterion {criterion}: {'PASS' if ok else 'FAIL'} - {detail}")

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
