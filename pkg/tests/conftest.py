import pytest

from oracles import ADJ_DIGRAPH, ADJ_LABELS


@pytest.fixture
def adj_digraph():
    from graphcons.matrices import graph_from_adjacency

    return graph_from_adjacency(ADJ_DIGRAPH, directed=True, labels=ADJ_LABELS)


def pytest_terminal_summary(terminalreporter):
    from oracles import ACCEPTANCE

    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
