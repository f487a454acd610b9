"""
Export-Modul.
Schreibt einen Graphen mit nach Community eingefärbten Knoten im DOT-Format.
"""

from typing import Optional

from src.backend.models.community import CommunitySet
from src.backend.models.graph import Graph

# Farbschema "set312" von Graphviz
PALETTE_SIZE = 12


def _quote(label) -> str:
    text = str(label).replace("\\", "\\\\").replace('"', '\\"')
    return f'"{text}"'


def export_dot(graph: Graph, communities: Optional[CommunitySet] = None, name: str = "coin") -> str:
    """
    DOT-Darstellung des Graphen.

    Knoten tragen das Attribut community (Index in kanonischer Reihenfolge)
    und eine Füllfarbe aus der Palette; nicht abgedeckte Knoten bleiben weiß.
    """
    index = {}
    if communities is not None:
        for i, community in enumerate(communities.communities):
            for v in community.member_indices():
                index[v] = i

    lines = [f"graph {_quote(name)} {{", '  node [style=filled, colorscheme=set312];']
    for v, label in enumerate(graph.labels):
        if v in index:
            color = index[v] % PALETTE_SIZE + 1
            lines.append(f"  {_quote(label)} [community={index[v]}, fillcolor={color}];")
        else:
            lines.append(f"  {_quote(label)} [fillcolor=white];")
    for u, v in graph.edges():
        lines.append(f"  {_quote(graph.labels[u])} -- {_quote(graph.labels[v])};")
    lines.append("}")
    return "\n".join(lines) + "\n"
