"""
Kontext-Builder-Modul.
Baut den einmodalen formalen Kontext eines Graphen (modifizierte
Adjazenzmatrix) und liest/schreibt Kontexte im Burmeister-Format.
"""

from typing import List

from src.config.logging_config import get_logger
from src.backend.models.context import FormalContext
from src.backend.models.graph import Graph, parse_node_label
from src.backend.services.graph.parsers import GraphParseError

# Logger für dieses Modul initialisieren
logger = get_logger(__name__)


def build_one_mode_context(graph: Graph) -> FormalContext:
    """
    Einmodaler Kontext K~ = (G, G, I): (g_i, g_j) = 1 gdw. Kante oder i = j.

    Der Kontext ist quadratisch, symmetrisch und hat eine volle Diagonale.
    """
    rows = [nbrs | (1 << v) for v, nbrs in enumerate(graph.adjacency)]
    context = FormalContext(
        objects=graph.labels,
        attributes=graph.labels,
        rows=tuple(rows),
        cols=tuple(rows)
    )
    logger.debug(
        "Einmodaler Kontext erstellt",
        extra={"objects": context.num_objects}
    )
    return context


def write_burmeister(context: FormalContext, name: str = "") -> str:
    """
    Serialisiert einen Kontext im Burmeister-Format (.cxt):
    `B`, Name, Objekt- und Attributanzahl, Namen, Kreuztabelle aus X und Punkt.
    """
    lines: List[str] = ["B", name, str(context.num_objects), str(context.num_attributes), ""]
    lines += [str(o) for o in context.objects]
    lines += [str(a) for a in context.attributes]
    for row in context.rows:
        lines.append("".join("X" if row >> m & 1 else "." for m in range(context.num_attributes)))
    return "\n".join(lines) + "\n"


def read_burmeister(text: str) -> FormalContext:
    """
    Liest einen Kontext im Burmeister-Format.

    Raises:
        GraphParseError: Bei fehlerhaftem Kopf oder Kreuztabelle
    """
    lines = text.splitlines()
    if not lines or lines[0].strip() != "B":
        raise GraphParseError("Burmeister-Datei muss mit 'B' beginnen", line=1)
    # Zeile 2 ist der (optionale) Name; leere Zeilen im Kopf werden übersprungen
    cursor = 2
    dims: List[int] = []
    while len(dims) < 2 and cursor < len(lines):
        token = lines[cursor].strip()
        cursor += 1
        if not token:
            continue
        if not token.isdigit():
            raise GraphParseError(f"Ungültige Dimension {token!r}", line=cursor)
        dims.append(int(token))
    if len(dims) < 2:
        raise GraphParseError("Dimensionen fehlen im Burmeister-Kopf")
    n_obj, n_attr = dims
    while cursor < len(lines) and not lines[cursor].strip():
        cursor += 1

    body = lines[cursor:]
    if len(body) < n_obj + n_attr + n_obj:
        raise GraphParseError("Burmeister-Datei ist unvollständig")
    objects = [parse_node_label(s) for s in body[:n_obj]]
    attributes = [parse_node_label(s) for s in body[n_obj:n_obj + n_attr]]
    rows = []
    for offset, raw in enumerate(body[n_obj + n_attr:n_obj + n_attr + n_obj]):
        line_no = cursor + n_obj + n_attr + offset + 1
        cells = raw.strip()
        if len(cells) != n_attr or set(cells) - {"X", "x", "."}:
            raise GraphParseError("Ungültige Zeile der Kreuztabelle", line=line_no)
        rows.append(sum(1 << m for m, c in enumerate(cells) if c in "Xx"))
    return FormalContext.from_rows(objects, attributes, rows)
