import networkx as nx

from chainspec.matrices import adjacency_matrix
from chainspec.strings import ChainString


def to_graph(g: ChainString) -> nx.Graph:
    return nx.from_numpy_array(adjacency_matrix(g))


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
