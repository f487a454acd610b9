"""
Parser-Modul für Graphdateien.
Liest Kantenlisten, GML (über networkx), JSON-Exporte und Label-Sidecar-Dateien.
"""

import json
import re
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field

from src.config.logging_config import get_logger, log_execution_time, log_function_call
from src.backend.interfaces.base import GraphError
from src.backend.models.graph import Graph, NodeLabel, NodeLabeling, parse_node_label

# Logger für dieses Modul initialisieren
logger = get_logger(__name__)

GraphFormat = Literal["edgelist", "gml", "json"]

GRAPH_SUFFIXES: Dict[str, GraphFormat] = {
    ".gml": "gml",
    ".json": "json",
    ".edgelist": "edgelist",
    ".edges": "edgelist",
}

# Position in NetworkXError-Meldungen: "at (zeile, spalte)"
_NX_POSITION_RE = re.compile(r"at \((\d+), \d+\)")
_GML_GRAPH_RE = re.compile(r"\bgraph\s*\[")


class GraphParseError(GraphError):
    """Fehler beim Einlesen einer Graphdatei (mit Zeilennummer, sofern bekannt)."""

    def __init__(self, message: str, line: Optional[int] = None, details: Optional[Dict[str, Any]] = None):
        self.line = line
        prefix = f"Zeile {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}", {**(details or {}), "line": line})


class ParseReport(BaseModel):
    """Ergebnis eines Parser-Laufs inklusive Warnungszähler."""

    model_config = ConfigDict(frozen=True)

    graph: Graph
    labeling: NodeLabeling
    self_loops: int = Field(default=0, description="Verworfene Selbstschleifen")
    duplicate_edges: int = Field(default=0, description="Entfernte Kantenduplikate")
    directed_ignored: bool = Field(default=False, description="GML-Flag directed 1 ignoriert")


class _EdgeCollector:
    """Sammelt Kanten über Labels, zählt Selbstschleifen und Duplikate."""

    def __init__(self):
        self.index: Dict[NodeLabel, int] = {}
        self.edges: set[Tuple[int, int]] = set()
        self.ordered: List[Tuple[int, int]] = []
        self.self_loops = 0
        self.duplicates = 0

    def node(self, label: NodeLabel) -> int:
        return self.index.setdefault(label, len(self.index))

    def add(self, u: int, v: int) -> None:
        if u == v:
            self.self_loops += 1
            return
        key = (min(u, v), max(u, v))
        if key in self.edges:
            self.duplicates += 1
            return
        self.edges.add(key)
        self.ordered.append(key)

    def build(self) -> Graph:
        return Graph.from_edges(list(self.index), self.ordered)


@log_function_call(logger)
def parse_edge_list_with_report(text: str) -> ParseReport:
    """
    Liest eine Kantenliste `<labelA> <labelB>` je Zeile.

    `#` leitet einen Kommentar ein, Leerzeilen werden übersprungen. Knoten
    erhalten Indizes in der Reihenfolge ihres ersten Auftretens; ganzzahlige
    Labels werden als int gespeichert.

    Raises:
        GraphParseError: Bei Zeilen, die nicht genau zwei Labels enthalten
    """
    collector = _EdgeCollector()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphParseError(
                f"Erwartet '<labelA> <labelB>', gefunden: {raw.strip()!r}",
                line=line_no
            )
        u = collector.node(parse_node_label(parts[0]))
        v = collector.node(parse_node_label(parts[1]))
        collector.add(u, v)

    if collector.self_loops:
        logger.warning(
            f"{collector.self_loops} Selbstschleife(n) verworfen",
            extra={"self_loops": collector.self_loops}
        )
    graph = collector.build()
    return ParseReport(
        graph=graph,
        labeling=NodeLabeling(labels=graph.labels),
        self_loops=collector.self_loops,
        duplicate_edges=collector.duplicates
    )


def parse_edge_list(text: str) -> Graph:
    """Kantenliste -> Graph (siehe parse_edge_list_with_report)."""
    return parse_edge_list_with_report(text).graph


# GML

def _gml_error(error: nx.NetworkXError) -> GraphParseError:
    """NetworkXError -> GraphParseError, Zeilennummer aus '(zeile, spalte)' übernommen."""
    position = _NX_POSITION_RE.search(str(error))
    line = int(position.group(1)) if position else None
    return GraphParseError(f"Ungültiges GML: {error}", line=line)


@log_function_call(logger)
def parse_gml_with_report(text: str) -> ParseReport:
    """
    Liest GML `graph [ node [ id N label "..." value V ] edge [ source A target B ] ]`
    über networkx.

    IDs dürfen lückenhaft sein. `label` wird als externes Label verwendet,
    wenn es auf allen Knoten vorhanden und eindeutig ist, sonst die ID.
    `value` liefert die Ground Truth, wenn es auf allen Knoten vorhanden ist.
    `directed 1` wird mit Warnung ignoriert, Kantenduplikate entfernt.

    Raises:
        GraphParseError: Unausgeglichene Klammern, fehlende source/target,
            Kante auf unbekannte ID, fehlende oder doppelte Knoten-ID
    """
    with log_execution_time(logger, "gml_parsing"):
        # Als Multigraph lesen, Duplikate zählt der Collector
        source = _GML_GRAPH_RE.sub(r"\g<0> multigraph 1", text, count=1)
        try:
            nx_graph = nx.parse_gml(source, label="id")
        except nx.NetworkXError as e:
            raise _gml_error(e) from e

        directed_ignored = nx_graph.is_directed()
        if directed_ignored:
            logger.warning("GML-Flag 'directed 1' ignoriert, Kanten werden ungerichtet behandelt")

        ids = list(nx_graph.nodes)
        node_labels = [data.get("label") for _, data in nx_graph.nodes(data=True)]
        values = [data.get("value") for _, data in nx_graph.nodes(data=True)]

        collector = _EdgeCollector()
        for node_id in ids:
            collector.node(node_id)
        for u, v in nx_graph.edges():
            collector.add(collector.index[u], collector.index[v])

        if collector.duplicates:
            logger.warning(
                f"{collector.duplicates} doppelte Kante(n) entfernt",
                extra={"duplicates": collector.duplicates}
            )
        if collector.self_loops:
            logger.warning(
                f"{collector.self_loops} Selbstschleife(n) verworfen",
                extra={"self_loops": collector.self_loops}
            )

        use_labels = all(lbl is not None for lbl in node_labels) and len(set(node_labels)) == len(node_labels)
        labels = node_labels if use_labels else ids
        graph = Graph.from_edges(labels, collector.ordered)
        has_values = bool(values) and all(v is not None for v in values)
        labeling = NodeLabeling.with_values(labels, values if has_values else None)

        logger.info(
            "GML eingelesen",
            extra={
                "nodes": graph.num_nodes,
                "edges": graph.num_edges,
                "ground_truth": labeling.has_ground_truth
            }
        )
        return ParseReport(
            graph=graph,
            labeling=labeling,
            self_loops=collector.self_loops,
            duplicate_edges=collector.duplicates,
            directed_ignored=directed_ignored
        )


def parse_gml(text: str) -> Tuple[Graph, NodeLabeling]:
    """GML -> (Graph, NodeLabeling) (siehe parse_gml_with_report)."""
    report = parse_gml_with_report(text)
    return report.graph, report.labeling


# JSON

def serialize_graph_json(graph: Graph) -> str:
    """Graph-Export als JSON {nodes: [labels], edges: [[a, b], ...]}."""
    payload = {
        "nodes": list(graph.labels),
        "edges": [[graph.labels[u], graph.labels[v]] for u, v in graph.edges()],
    }
    return json.dumps(payload, ensure_ascii=False)


def parse_graph_json(text: str) -> Graph:
    """Liest den JSON-Export von serialize_graph_json."""
    try:
        payload = json.loads(text)
        nodes = payload["nodes"]
        edges = [tuple(e) for e in payload["edges"]]
        known = set(nodes)
    except (json.JSONDecodeError, KeyError, TypeError) as e:
        raise GraphParseError(f"Ungültiger Graph-JSON-Export: {e}")
    for a, b in edges:
        if a not in known or b not in known:
            raise GraphParseError(f"Kante ({a}, {b}) verweist auf unbekannten Knoten")
    return Graph.from_labeled_edges(edges, nodes=nodes)


# Ground Truth Sidecar

def _label_lines(text: str):
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphParseError("Erwartet '<label> <community>'", line=line_no)
        yield line_no, parse_node_label(parts[0]), parse_node_label(parts[1])


def parse_label_mapping(text: str) -> Dict[NodeLabel, NodeLabel]:
    """
    Liest `<label> <community>` je Zeile ohne Bezug zu einem Graphen.

    Raises:
        GraphParseError: Bei fehlerhaften oder doppelten Zeilen
    """
    mapping: Dict[NodeLabel, NodeLabel] = {}
    for line_no, node, community in _label_lines(text):
        if node in mapping:
            raise GraphParseError(f"Knotenlabel {node!r} mehrfach zugeordnet", line=line_no)
        mapping[node] = community
    return mapping


def parse_label_file(text: str, graph: Graph) -> NodeLabeling:
    """
    Liest eine Sidecar-Datei `<label> <community>` je Zeile als Ground Truth.

    Raises:
        GraphParseError: Bei fehlerhaften Zeilen, unbekannten Labels oder
            Knoten ohne Zuordnung
    """
    values: Dict[int, NodeLabel] = {}
    for line_no, label, community in _label_lines(text):
        try:
            node = graph.index_of(label)
        except GraphError:
            raise GraphParseError(f"Unbekanntes Knotenlabel {label!r}", line=line_no)
        values[node] = community
    missing = [graph.labels[i] for i in range(graph.num_nodes) if i not in values]
    if missing:
        raise GraphParseError(
            f"{len(missing)} Knoten ohne Community-Zuordnung",
            details={"missing": missing[:10]}
        )
    return NodeLabeling.with_values(graph.labels, [values[i] for i in range(graph.num_nodes)])


def detect_format(path: Path) -> GraphFormat:
    """Format anhand der Dateiendung (Standard: Kantenliste)."""
    return GRAPH_SUFFIXES.get(path.suffix.lower(), "edgelist")


def load_graph(path: str | Path, fmt: Optional[GraphFormat] = None) -> ParseReport:
    """
    Liest eine Graphdatei von der Platte.

    Raises:
        FileNotFoundError: Wenn die Datei nicht existiert
        GraphParseError: Bei Formatfehlern
    """
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    fmt = fmt or detect_format(path)
    logger.debug(f"Lese {path} als {fmt}")
    if fmt == "gml":
        return parse_gml_with_report(text)
    if fmt == "json":
        graph = parse_graph_json(text)
        return ParseReport(graph=graph, labeling=NodeLabeling(labels=graph.labels))
    return parse_edge_list_with_report(text)
