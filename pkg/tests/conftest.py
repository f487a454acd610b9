# tests/conftest.py
import os
from pathlib import Path

import networkx as nx
import numpy as np
import pytest

# Umgebungsvariablen Setup
os.environ.update({
    "ENVIRONMENT": "test",
    "LOGGING__LOG_DIR": "",
    "LOGGING__COLORED_CONSOLE": "false",
    "DETECTION__SEED": "0",
})

from src.backend.models.graph import Graph  # noqa: E402
from src.backend.services.graph.parsers import load_graph  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def toy_graph() -> Graph:
    """15-Knoten-Beispielnetz mit Labels 1..15."""
    return load_graph(FIXTURES / "toy.edgelist").graph


@pytest.fixture(scope="session")
def star_graph() -> Graph:
    """Beispielnetz plus Sterngraph 16-{17,18,19}."""
    return load_graph(FIXTURES / "star.edgelist").graph


@pytest.fixture
def mask():
    """Liefert eine Funktion labels -> Bitset für einen Graphen."""
    def _mask(graph: Graph, *labels) -> int:
        return graph.mask_of_labels(labels)
    return _mask


@pytest.fixture
def to_networkx():
    """Konvertiert einen Graphen in einen networkx-Graphen über Knotenindizes."""
    def _convert(graph: Graph) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(graph.num_nodes))
        g.add_edges_from(graph.edges())
        return g
    return _convert


def random_graph(n: int, p: float, seed: int) -> Graph:
    """Erdős–Rényi-Graph G(n, p) über den Labels 0..n-1."""
    rng = np.random.default_rng(seed)
    upper = np.triu(rng.random((n, n)) < p, k=1)
    pairs = [(int(u), int(v)) for u, v in zip(*np.nonzero(upper))]
    return Graph.from_edges(list(range(n)), pairs)


@pytest.fixture(scope="session")
def random_corpus():
    """Liefert eine Funktion size -> Liste zufälliger Graphen (n <= 25, p in {0.1, 0.3, 0.5})."""
    def _corpus(size: int, max_nodes: int = 25):
        rng = np.random.default_rng(2018)
        graphs = []
        for i in range(size):
            n = int(rng.integers(1, max_nodes + 1))
            p = (0.1, 0.3, 0.5)[i % 3]
            graphs.append(random_graph(n, p, seed=i))
        return graphs
    return _corpus
