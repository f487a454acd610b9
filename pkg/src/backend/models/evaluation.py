"""
Evaluations-Modell-Modul.
Definiert Partitionen und Konfusionsmatrizen für den Ground-Truth-Vergleich.
"""

from typing import FrozenSet, List, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.backend.interfaces.base import EvaluationError

NodeId = Union[int, str]


class PartitionOverlapError(EvaluationError):
    """Ein Knoten liegt in mehreren Blöcken."""
    pass


class PartitionCoverageError(EvaluationError):
    """Ein Knoten des Universums liegt in keinem Block."""
    pass


class UniverseMismatchError(EvaluationError):
    """Zwei Partitionen beziehen sich auf unterschiedliche Knotenmengen."""
    pass


class Partition(BaseModel):
    """
    Partition eines Knotenuniversums in disjunkte, nichtleere Blöcke.

    Das Universum ist die Vereinigung der Blöcke; validate_partition prüft
    zusätzlich gegen ein vorgegebenes Universum.
    """

    model_config = ConfigDict(frozen=True)

    blocks: Tuple[Tuple[NodeId, ...], ...] = Field(
        default=(),
        description="Blöcke der Partition"
    )

    @model_validator(mode="after")
    def _check_blocks(self) -> "Partition":
        seen: set = set()
        for i, block in enumerate(self.blocks):
            if not block:
                raise EvaluationError("Leerer Block in Partition", {"block": i})
            for node in block:
                if node in seen:
                    raise PartitionOverlapError(
                        f"Knoten {node!r} liegt in mehreren Blöcken",
                        {"node": node}
                    )
                seen.add(node)
        return self

    @property
    def universe(self) -> FrozenSet[NodeId]:
        return frozenset(node for block in self.blocks for node in block)

    @property
    def n(self) -> int:
        """Größe des Universums."""
        return sum(len(block) for block in self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def block_sets(self) -> List[FrozenSet[NodeId]]:
        return [frozenset(block) for block in self.blocks]


class ConfusionMatrix(BaseModel):
    """
    Konfusionsmatrix N: Zeilen = Ground-Truth-Communities, Spalten =
    vorhergesagte Communities; n_ij = Anzahl gemeinsamer Knoten.
    """

    model_config = ConfigDict(frozen=True)

    matrix: Tuple[Tuple[int, ...], ...] = Field(
        default=(),
        description="n_ij, |D^| x |D|"
    )

    @property
    def array(self) -> np.ndarray:
        if not self.matrix:
            return np.zeros((0, 0), dtype=np.int64)
        return np.array(self.matrix, dtype=np.int64)

    @property
    def row_sums(self) -> List[int]:
        """n_i"""
        return [int(x) for x in self.array.sum(axis=1)]

    @property
    def col_sums(self) -> List[int]:
        """n_j"""
        return [int(x) for x in self.array.sum(axis=0)]

    @property
    def total(self) -> int:
        """n"""
        return int(self.array.sum())

    def to_lists(self) -> List[List[int]]:
        return [list(row) for row in self.matrix]
