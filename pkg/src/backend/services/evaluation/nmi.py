"""
Evaluations-Modul.
Konfusionsmatrix, Normalized Mutual Information und Validierung von
Partitionen für den Vergleich mit Ground-Truth-Communities.
"""

from typing import Any, Dict, Hashable, Iterable, List, Mapping, Sequence

import numpy as np
from scipy.special import xlogy

from src.config.logging_config import get_logger
from src.backend.interfaces.base import EvaluationError
from src.backend.models.community import CommunitySet
from src.backend.models.evaluation import (
    ConfusionMatrix,
    NodeId,
    Partition,
    PartitionCoverageError,
    UniverseMismatchError,
)
from src.backend.models.graph import Graph, NodeLabeling

# Logger für dieses Modul initialisieren
logger = get_logger(__name__)


class DegenerateNMIError(EvaluationError):
    """Der NMI-Nenner verschwindet und der Wert ist nicht definiert."""
    pass


def _node_key(node: NodeId):
    return (isinstance(node, str), node)


def _block_key(block: Sequence[NodeId]):
    return (-len(block), [_node_key(v) for v in block])


def canonical_partition(blocks: Iterable[Iterable[NodeId]]) -> Partition:
    """Blöcke intern sortiert, Blöcke nach Größe absteigend, dann lexikographisch."""
    sorted_blocks = [tuple(sorted(block, key=_node_key)) for block in blocks]
    sorted_blocks.sort(key=_block_key)
    return Partition(blocks=tuple(sorted_blocks))


def validate_partition(blocks: Iterable[Iterable[NodeId]], universe: Iterable[NodeId]) -> Partition:
    """
    Prüft Blöcke gegen ein Universum und liefert eine kanonische Partition.

    Raises:
        PartitionOverlapError: Knoten in mehreren Blöcken
        PartitionCoverageError: Knoten des Universums fehlt
        UniverseMismatchError: Block enthält Knoten außerhalb des Universums
    """
    partition = canonical_partition(blocks)
    expected = frozenset(universe)
    covered = partition.universe
    missing = expected - covered
    if missing:
        node = min(missing, key=_node_key)
        raise PartitionCoverageError(
            f"Knoten {node!r} liegt in keinem Block",
            {"node": node, "missing": len(missing)}
        )
    extra = covered - expected
    if extra:
        node = min(extra, key=_node_key)
        raise UniverseMismatchError(
            f"Knoten {node!r} gehört nicht zum Universum",
            {"node": node, "extra": len(extra)}
        )
    return partition


def _check_universes(truth: Partition, pred: Partition) -> None:
    if truth.universe != pred.universe:
        only_truth = sorted(truth.universe - pred.universe, key=_node_key)[:5]
        only_pred = sorted(pred.universe - truth.universe, key=_node_key)[:5]
        raise UniverseMismatchError(
            "Partitionen beziehen sich auf unterschiedliche Knotenmengen",
            {"only_truth": only_truth, "only_pred": only_pred}
        )


def confusion_matrix(truth: Partition, pred: Partition) -> ConfusionMatrix:
    """
    n_ij = Anzahl der Knoten in Ground-Truth-Block i und vorhergesagtem Block j.

    Zeilen- und Spaltenreihenfolge folgen der Blockreihenfolge der Partitionen.

    Raises:
        UniverseMismatchError: Unterschiedliche Knotenmengen
    """
    _check_universes(truth, pred)
    column: Dict[Hashable, int] = {
        node: j for j, block in enumerate(pred.blocks) for node in block
    }
    matrix = np.zeros((len(truth), len(pred)), dtype=np.int64)
    for i, block in enumerate(truth.blocks):
        for node in block:
            matrix[i, column[node]] += 1
    return ConfusionMatrix(matrix=tuple(tuple(int(x) for x in row) for row in matrix))


def nmi(truth: Partition, pred: Partition) -> float:
    """
    Normalized Mutual Information (natürlicher Logarithmus, 0·log0 = 0):

        -2 ΣΣ n_ij log(n_ij n / (n_i n_j)) / (Σ n_i log(n_i / n) + Σ n_j log(n_j / n))

    Sind beide Partitionen einblockig, ist der Nenner 0; bei gleichem
    Universum sind sie dann identisch und der Wert ist 1.

    Raises:
        UniverseMismatchError: Unterschiedliche Knotenmengen
        DegenerateNMIError: Leeres Universum
    """
    cm = confusion_matrix(truth, pred)
    n = cm.total
    if n == 0:
        raise DegenerateNMIError("NMI ist für ein leeres Universum nicht definiert")

    counts = cm.array.astype(float)
    rows = counts.sum(axis=1)
    cols = counts.sum(axis=0)
    expected = np.outer(rows, cols) / n
    numerator = -2.0 * float(xlogy(counts, np.divide(counts, expected)).sum())
    denominator = float(xlogy(rows, rows / n).sum() + xlogy(cols, cols / n).sum())

    if denominator == 0.0:
        if truth.block_sets() == pred.block_sets():
            return 1.0
        raise DegenerateNMIError("NMI-Nenner ist 0 bei verschiedenen Partitionen")
    value = numerator / denominator
    return float(min(1.0, max(0.0, value)))


def partition_from_labels(mapping: Mapping[NodeId, Any]) -> Partition:
    """Partition aus einer Zuordnung Knoten -> Community-ID."""
    blocks: Dict[Any, List[NodeId]] = {}
    for node, community in mapping.items():
        blocks.setdefault(community, []).append(node)
    return canonical_partition(blocks.values())


def partition_from_labeling(labeling: NodeLabeling) -> Partition:
    """Ground-Truth-Partition (über Labels) aus einer NodeLabeling."""
    return canonical_partition(
        [labeling.labels[v] for v in block] for block in labeling.truth_blocks()
    )


def partition_from_communities(community_set: CommunitySet, graph: Graph) -> Partition:
    """
    Vorhergesagte Partition (über Labels) aus einer CommunitySet.

    Raises:
        PartitionCoverageError: Wenn Knoten nicht abgedeckt sind (Backfill deaktiviert)
    """
    return validate_partition(
        (graph.labels_of(mask) for mask in community_set.masks()),
        graph.labels
    )
