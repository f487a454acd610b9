"""
Graph-Modell-Modul.
Definiert den ungerichteten, einfachen Graphen sowie Knotenbeschriftungen
und Cliquenmengen.
"""

from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, model_validator

from src.config.logging_config import get_logger
from src.backend.interfaces.base import GraphError
from src.backend.utils.bitsets import canonical_sort, full_mask, iter_bits, members

# Logger für dieses Modul initialisieren
logger = get_logger(__name__)

NodeLabel = Union[int, str]


class UnknownNodeError(GraphError):
    """Der angefragte Knoten existiert nicht im Graphen."""
    pass


class UnknownEdgeError(GraphError):
    """Die angefragte Kante existiert nicht im Graphen."""
    pass


class Graph(BaseModel):
    """
    Ungerichteter, einfacher Graph U = (G, I) über beschrifteten Knoten.

    Knoten tragen dichte interne Indizes 0..n-1; die Adjazenz wird je Knoten
    als Bitset gehalten. Nach der Konstruktion ist der Graph unveränderlich
    und damit für parallele Lesezugriffe geeignet.
    """

    model_config = ConfigDict(frozen=True)

    labels: Tuple[NodeLabel, ...] = Field(
        default=(),
        description="Externe Knotenbeschriftungen, Position = interner Index"
    )
    adjacency: Tuple[int, ...] = Field(
        default=(),
        description="Nachbarschafts-Bitsets ohne Selbstschleifen"
    )

    _index: Dict[NodeLabel, int] = PrivateAttr(default_factory=dict)

    @model_validator(mode="after")
    def _check_structure(self) -> "Graph":
        if len(self.labels) != len(self.adjacency):
            raise GraphError(
                "Anzahl der Labels passt nicht zur Adjazenz",
                {"labels": len(self.labels), "adjacency": len(self.adjacency)}
            )
        if len(set(self.labels)) != len(self.labels):
            raise GraphError("Knotenlabels sind nicht eindeutig")
        for v, nbrs in enumerate(self.adjacency):
            if nbrs >> v & 1:
                raise GraphError("Selbstschleife im Graphen", {"node": self.labels[v]})
            for u in iter_bits(nbrs):
                if u >= len(self.adjacency) or not self.adjacency[u] >> v & 1:
                    raise GraphError(
                        "Adjazenz ist nicht symmetrisch",
                        {"node": self.labels[v], "neighbor": u}
                    )
        return self

    def model_post_init(self, __context) -> None:
        self._index = {label: i for i, label in enumerate(self.labels)}

    @classmethod
    def from_edges(
        cls,
        labels: Sequence[NodeLabel],
        edges: Iterable[Tuple[int, int]]
    ) -> "Graph":
        """
        Baut einen Graphen aus Indexpaaren.

        Selbstschleifen und Duplikate werden stillschweigend verworfen; die
        Parser zählen sie vorher und melden sie.
        """
        adjacency = [0] * len(labels)
        for u, v in edges:
            if u == v:
                continue
            adjacency[u] |= 1 << v
            adjacency[v] |= 1 << u
        return cls(labels=tuple(labels), adjacency=tuple(adjacency))

    @classmethod
    def from_labeled_edges(
        cls,
        edges: Iterable[Tuple[NodeLabel, NodeLabel]],
        nodes: Iterable[NodeLabel] = ()
    ) -> "Graph":
        """Baut einen Graphen aus Labelpaaren (Knotenreihenfolge = erstes Auftreten)."""
        index: Dict[NodeLabel, int] = {}
        for label in nodes:
            index.setdefault(label, len(index))
        pairs = []
        for a, b in edges:
            ia = index.setdefault(a, len(index))
            ib = index.setdefault(b, len(index))
            pairs.append((ia, ib))
        return cls.from_edges(list(index), pairs)

    # Zugriff

    @property
    def num_nodes(self) -> int:
        """|G|"""
        return len(self.labels)

    @property
    def num_edges(self) -> int:
        """|I|"""
        return sum(m.bit_count() for m in self.adjacency) // 2

    @property
    def node_mask(self) -> int:
        return full_mask(self.num_nodes)

    def check_node(self, v: int) -> int:
        if not 0 <= v < self.num_nodes:
            raise UnknownNodeError(f"Unbekannter Knoten: {v}", {"node": v})
        return v

    def index_of(self, label: NodeLabel) -> int:
        """Interner Index zu einem externen Label."""
        try:
            return self._index[label]
        except KeyError:
            # Zahlen-Labels dürfen als String angefragt werden und umgekehrt
            alt = _alternate_label(label)
            if alt is not None and alt in self._index:
                return self._index[alt]
            raise UnknownNodeError(f"Unbekannter Knoten: {label!r}", {"label": label})

    def labels_of(self, mask: int) -> List[NodeLabel]:
        """Labels einer Knotenmenge in Indexreihenfolge."""
        return [self.labels[i] for i in iter_bits(mask)]

    def mask_of_labels(self, labels: Iterable[NodeLabel]) -> int:
        mask = 0
        for label in labels:
            mask |= 1 << self.index_of(label)
        return mask

    def neighbor_mask(self, v: int) -> int:
        return self.adjacency[self.check_node(v)]

    def has_edge(self, u: int, v: int) -> bool:
        self.check_node(u)
        return bool(self.neighbor_mask(v) >> u & 1)

    def edges(self) -> List[Tuple[int, int]]:
        """Alle Kanten als (u, v) mit u < v, sortiert."""
        result = []
        for u, nbrs in enumerate(self.adjacency):
            for v in iter_bits(nbrs >> (u + 1)):
                result.append((u, u + 1 + v))
        return result

    def without_edge(self, u: int, v: int) -> "Graph":
        """Kopie ohne die Kante (u, v)."""
        if not self.has_edge(u, v):
            raise UnknownEdgeError(
                f"Unbekannte Kante: ({self.labels[u]}, {self.labels[v]})",
                {"edge": (u, v)}
            )
        adjacency = list(self.adjacency)
        adjacency[u] &= ~(1 << v)
        adjacency[v] &= ~(1 << u)
        return Graph(labels=self.labels, adjacency=tuple(adjacency))

    def __str__(self) -> str:
        return f"Graph ({self.num_nodes} Knoten, {self.num_edges} Kanten)"


def parse_node_label(token: str) -> NodeLabel:
    """
    Externes Label aus einem Texttoken.

    Nur kanonische Ganzzahlen (`str(int(t)) == t`) werden zu int;
    `1`, `01` und `+1` bleiben verschiedene Knoten.
    """
    token = token.strip()
    try:
        number = int(token)
    except ValueError:
        return token
    return number if str(number) == token else token


def _alternate_label(label: NodeLabel) -> Optional[NodeLabel]:
    if isinstance(label, int):
        return str(label)
    alt = parse_node_label(label)
    return alt if isinstance(alt, int) else None



class NodeLabeling(BaseModel):
    """
    Knotenbeschriftung mit optionaler Ground Truth.

    ground_truth enthält je Knotenindex eine normalisierte, lückenlose
    Community-ID (0..c-1); raw_values die Originalwerte aus der Quelle.
    """

    model_config = ConfigDict(frozen=True)

    labels: Tuple[NodeLabel, ...] = Field(
        default=(),
        description="Externe Labels je Knotenindex"
    )
    raw_values: Optional[Tuple[NodeLabel, ...]] = Field(
        default=None,
        description="Ground-Truth-Werte wie in der Quelle"
    )
    ground_truth: Optional[Tuple[int, ...]] = Field(
        default=None,
        description="Normalisierte Community-IDs je Knotenindex"
    )

    @classmethod
    def with_values(
        cls,
        labels: Sequence[NodeLabel],
        values: Optional[Sequence[NodeLabel]]
    ) -> "NodeLabeling":
        """Normalisiert Rohwerte zu lückenlosen IDs (sortierte Reihenfolge der Rohwerte)."""
        if values is None:
            return cls(labels=tuple(labels))
        if len(values) != len(labels):
            raise GraphError(
                "Ground Truth ist nicht total über alle Knoten",
                {"labels": len(labels), "values": len(values)}
            )
        distinct = sorted(set(values), key=lambda x: (isinstance(x, str), x))
        ids = {value: i for i, value in enumerate(distinct)}
        return cls(
            labels=tuple(labels),
            raw_values=tuple(values),
            ground_truth=tuple(ids[v] for v in values)
        )

    @property
    def has_ground_truth(self) -> bool:
        return self.ground_truth is not None

    @property
    def num_communities(self) -> int:
        return len(set(self.ground_truth)) if self.ground_truth else 0

    def truth_blocks(self) -> List[List[int]]:
        """Ground-Truth-Blöcke als Indexlisten, geordnet nach Community-ID."""
        if self.ground_truth is None:
            raise GraphError("Keine Ground Truth vorhanden")
        blocks: Dict[int, List[int]] = {}
        for node, cid in enumerate(self.ground_truth):
            blocks.setdefault(cid, []).append(node)
        return [blocks[c] for c in sorted(blocks)]


class CliqueSet(BaseModel):
    """
    Liste von Cliquen (Knoten-Bitsets) in kanonischer Reihenfolge:
    Größe absteigend, dann lexikographisch nach sortierten Indizes.
    """

    model_config = ConfigDict(frozen=True)

    cliques: Tuple[int, ...] = Field(
        default=(),
        description="Cliquen als Bitsets"
    )

    @classmethod
    def canonical(cls, cliques: Iterable[int]) -> "CliqueSet":
        return cls(cliques=tuple(canonical_sort(cliques)))

    def __len__(self) -> int:
        return len(self.cliques)

    def __iter__(self):
        return iter(self.cliques)

    def as_index_lists(self) -> List[List[int]]:
        return [members(c) for c in self.cliques]
