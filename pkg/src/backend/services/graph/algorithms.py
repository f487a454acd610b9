"""
Klassische Graph-Primitive.
Grade, Brücken (DFS mit Low-Link), maximale Cliquen (Bron–Kerbosch mit Pivot)
und Zusammenhangskomponenten. Dienen als Pipeline-Bausteine und als
unabhängige Orakel in den Tests.
"""

from typing import List, Tuple

from src.config.logging_config import get_logger, log_function_call
from src.backend.models.evaluation import Partition
from src.backend.models.graph import CliqueSet, Graph, UnknownEdgeError
from src.backend.utils.bitsets import iter_bits, members

# Logger für dieses Modul initialisieren
logger = get_logger(__name__)

Edge = Tuple[int, int]


def degree(graph: Graph, v: int) -> int:
    """|adj(v)|; unbekannte Knoten lösen UnknownNodeError aus."""
    return graph.neighbor_mask(v).bit_count()


@log_function_call(logger)
def find_bridges(graph: Graph) -> List[Edge]:
    """
    Findet alle Brücken (Schnittkanten) in linearer Zeit.

    Iterative Tiefensuche mit Entdeckungszeit und Low-Link; eine Baumkante
    (p, v) ist Brücke genau dann, wenn low[v] > disc[p].

    Returns:
        Sortierte Liste von Kanten (u, v) mit u < v
    """
    n = graph.num_nodes
    disc = [-1] * n
    low = [0] * n
    timer = 0
    bridges: List[Edge] = []

    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        # Stack-Einträge: (Knoten, Elternknoten, verbleibende Nachbarn)
        stack = [(root, -1, graph.adjacency[root])]
        while stack:
            v, parent, pending = stack[-1]
            if pending:
                low_bit = pending & -pending
                w = low_bit.bit_length() - 1
                stack[-1] = (v, parent, pending ^ low_bit)
                if w == parent:
                    continue
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, v, graph.adjacency[w]))
                else:
                    low[v] = min(low[v], disc[w])
            else:
                stack.pop()
                if parent != -1:
                    low[parent] = min(low[parent], low[v])
                    if low[v] > disc[parent]:
                        bridges.append((min(parent, v), max(parent, v)))

    bridges.sort()
    logger.debug("Brücken gefunden", extra={"bridges": len(bridges)})
    return bridges


def is_nontrivial_bridge(graph: Graph, edge: Edge) -> bool:
    """
    Prüft, ob eine Kante eine nicht-triviale Brücke ist: Brücke, und beide
    Endknoten haben Grad > 2.

    Für eine einzelne Kante genügt eine Erreichbarkeitssuche von u ohne
    die Kante (u, v); sie bleibt auf die Komponente von u beschränkt.

    Raises:
        UnknownEdgeError: Wenn die Kante nicht im Graphen liegt
    """
    u, v = edge
    if not graph.has_edge(u, v):
        raise UnknownEdgeError(f"Unbekannte Kante: {edge}", {"edge": edge})
    if degree(graph, u) <= 2 or degree(graph, v) <= 2:
        return False
    return not _reachable_without_edge(graph, u, v)


def _reachable_without_edge(graph: Graph, u: int, v: int) -> bool:
    adjacency = graph.adjacency
    target = 1 << v
    seen = 1 << u
    frontier = adjacency[u] & ~target
    while frontier:
        if frontier & target:
            return True
        seen |= frontier
        reached = 0
        for w in iter_bits(frontier):
            reached |= adjacency[w]
        frontier = reached & ~seen
    return False



@log_function_call(logger)
def maximal_cliques(graph: Graph) -> CliqueSet:
    """
    Zählt alle maximalen Cliquen auf (Bron–Kerbosch mit Pivotisierung).

    Als Pivot dient der Knoten aus P ∪ X mit den meisten Nachbarn in P
    (bei Gleichstand der kleinste Index). Isolierte Knoten ergeben
    Singleton-Cliquen. Das Ergebnis ist kanonisch sortiert.
    """
    adjacency = graph.adjacency
    found: List[int] = []

    def expand(r: int, p: int, x: int) -> None:
        if not p and not x:
            found.append(r)
            return
        pivot = max(iter_bits(p | x), key=lambda u: ((p & adjacency[u]).bit_count(), -u))
        candidates = p & ~adjacency[pivot]
        while candidates:
            low_bit = candidates & -candidates
            v = low_bit.bit_length() - 1
            expand(r | low_bit, p & adjacency[v], x & adjacency[v])
            p &= ~low_bit
            x |= low_bit
            candidates ^= low_bit

    if graph.num_nodes:
        expand(0, graph.node_mask, 0)
    cliques = CliqueSet.canonical(found)
    logger.debug("Maximale Cliquen aufgezählt", extra={"cliques": len(cliques)})
    return cliques


def connected_components(graph: Graph) -> Partition:
    """
    Zusammenhangskomponenten per Breitensuche über Bitsets.

    Komponenten sind nach ihrem kleinsten Knotenindex geordnet, Knoten
    innerhalb einer Komponente aufsteigend.
    """
    remaining = graph.node_mask
    blocks = []
    while remaining:
        start = remaining & -remaining
        component = start
        frontier = start
        while frontier:
            reached = 0
            for v in iter_bits(frontier):
                reached |= graph.adjacency[v]
            frontier = reached & ~component
            component |= frontier
        remaining &= ~component
        blocks.append(tuple(members(component)))
    return Partition(blocks=tuple(blocks))


def is_isolated_clique(graph: Graph, nodes: int) -> bool:
    """Keine Kante verlässt die Knotenmenge (isolierte Clique, strukturell)."""
    return all(graph.adjacency[v] & ~nodes == 0 for v in iter_bits(nodes))


def is_clique(graph: Graph, nodes: int) -> bool:
    """Alle Knotenpaare der Menge sind adjazent."""
    return all(nodes & ~(graph.adjacency[v] | (1 << v)) == 0 for v in iter_bits(nodes))
