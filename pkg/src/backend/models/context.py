"""
Kontext-Modell-Modul.
Definiert formale Kontexte, formale Begriffe und identische Begriffe
samt Ableitungs- und Hüllenoperatoren.
"""

from typing import List, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.backend.interfaces.base import ContextError
from src.backend.utils.bitsets import canonical_key, full_mask, iter_bits, mask_of
from src.backend.utils.bitsets import members as member_list

Label = Union[int, str]


class FormalContext(BaseModel):
    """
    Formaler Kontext K = (G, M, I) als Bitmatrix.

    rows[g] ist die Attributmenge des Objekts g, cols[m] die Objektmenge
    des Attributs m. Nach dem Aufbau unveränderlich.
    """

    model_config = ConfigDict(frozen=True)

    objects: Tuple[Label, ...] = Field(default=(), description="Objekte G")
    attributes: Tuple[Label, ...] = Field(default=(), description="Attribute M")
    rows: Tuple[int, ...] = Field(default=(), description="Zeilen-Bitsets je Objekt")
    cols: Tuple[int, ...] = Field(default=(), description="Spalten-Bitsets je Attribut")

    @model_validator(mode="after")
    def _check_incidence(self) -> "FormalContext":
        if len(self.rows) != len(self.objects) or len(self.cols) != len(self.attributes):
            raise ContextError(
                "Dimensionen des Kontexts passen nicht",
                {"objects": len(self.objects), "rows": len(self.rows),
                 "attributes": len(self.attributes), "cols": len(self.cols)}
            )
        attr_limit = full_mask(len(self.attributes))
        for g, row in enumerate(self.rows):
            if row & ~attr_limit:
                raise ContextError("Zeile referenziert unbekanntes Attribut", {"object": g})
            for m in iter_bits(row):
                if not self.cols[m] >> g & 1:
                    raise ContextError("Zeilen und Spalten sind inkonsistent", {"object": g, "attribute": m})
        if sum(r.bit_count() for r in self.rows) != sum(c.bit_count() for c in self.cols):
            raise ContextError("Zeilen und Spalten sind inkonsistent")
        return self

    @classmethod
    def from_rows(
        cls,
        objects: Sequence[Label],
        attributes: Sequence[Label],
        rows: Sequence[int]
    ) -> "FormalContext":
        """Baut den Kontext aus Zeilen-Bitsets; Spalten werden abgeleitet."""
        cols = [0] * len(attributes)
        for g, row in enumerate(rows):
            for m in iter_bits(row):
                cols[m] |= 1 << g
        return cls(
            objects=tuple(objects),
            attributes=tuple(attributes),
            rows=tuple(rows),
            cols=tuple(cols)
        )

    @classmethod
    def from_matrix(
        cls,
        matrix: np.ndarray,
        objects: Sequence[Label] = (),
        attributes: Sequence[Label] = ()
    ) -> "FormalContext":
        """Baut den Kontext aus einer booleschen Matrix (Objekte x Attribute)."""
        matrix = np.asarray(matrix, dtype=bool)
        n_obj, n_attr = matrix.shape
        objects = tuple(objects) or tuple(range(n_obj))
        attributes = tuple(attributes) or tuple(range(n_attr))
        rows = [mask_of(np.flatnonzero(matrix[g]).tolist()) for g in range(n_obj)]
        return cls.from_rows(objects, attributes, rows)

    @property
    def num_objects(self) -> int:
        return len(self.objects)

    @property
    def num_attributes(self) -> int:
        return len(self.attributes)

    @property
    def all_objects(self) -> int:
        return full_mask(self.num_objects)

    @property
    def all_attributes(self) -> int:
        return full_mask(self.num_attributes)

    # Ableitungsoperatoren

    def derive_extent(self, objects: int) -> int:
        """A' = Attribute, die alle Objekte aus A teilen (A = ∅ -> alle Attribute)."""
        result = self.all_attributes
        for g in iter_bits(objects):
            result &= self.rows[g]
            if not result:
                break
        return result

    def derive_intent(self, attributes: int) -> int:
        """B' = Objekte, die alle Attribute aus B besitzen (B = ∅ -> alle Objekte)."""
        result = self.all_objects
        for m in iter_bits(attributes):
            result &= self.cols[m]
            if not result:
                break
        return result

    def closure(self, objects: int) -> int:
        """A'' (extensiv, idempotent, monoton)."""
        return self.derive_intent(self.derive_extent(objects))

    # Struktur

    def to_matrix(self) -> np.ndarray:
        """Inzidenz als boolesche numpy-Matrix (Objekte x Attribute)."""
        matrix = np.zeros((self.num_objects, self.num_attributes), dtype=bool)
        for g, row in enumerate(self.rows):
            matrix[g, member_list(row)] = True
        return matrix

    @property
    def is_one_mode(self) -> bool:
        """Objekt- und Attributmenge stimmen überein."""
        return self.objects == self.attributes

    def is_symmetric(self) -> bool:
        return self.is_one_mode and self.rows == self.cols

    def has_full_diagonal(self) -> bool:
        return self.is_one_mode and all(row >> g & 1 for g, row in enumerate(self.rows))

    def __str__(self) -> str:
        return f"FormalContext ({self.num_objects} x {self.num_attributes})"


class FormalConcept(BaseModel):
    """Formaler Begriff c = (A, B) mit A' = B und B' = A."""

    model_config = ConfigDict(frozen=True)

    extent: int = Field(..., description="Objekt-Bitset A")
    intent: int = Field(..., description="Attribut-Bitset B")

    @property
    def is_identical(self) -> bool:
        """Extent und Intent sind gleich (nur im einmodalen Kontext sinnvoll)."""
        return self.extent == self.intent

    def is_closed_in(self, context: FormalContext) -> bool:
        return (context.derive_extent(self.extent) == self.intent
                and context.derive_intent(self.intent) == self.extent)


def concept_leq(c1: FormalConcept, c2: FormalConcept) -> bool:
    """Halbordnung des Begriffsverbands: c1 <= c2 gdw. A1 ⊆ A2."""
    return c1.extent & ~c2.extent == 0


class ConceptSet(BaseModel):
    """
    Menge formaler Begriffe eines Kontexts in kanonischer Reihenfolge
    (Extent-Größe absteigend, dann lexikographisch).
    """

    model_config = ConfigDict(frozen=True)

    context: FormalContext
    concepts: Tuple[FormalConcept, ...] = Field(default=())

    @classmethod
    def canonical(cls, context: FormalContext, concepts: Sequence[FormalConcept]) -> "ConceptSet":
        ordered = sorted(concepts, key=lambda c: (canonical_key(c.extent), member_list(c.intent)))
        return cls(context=context, concepts=tuple(ordered))

    @property
    def size(self) -> int:
        """L, die Größe des Verbands."""
        return len(self.concepts)

    def __len__(self) -> int:
        return len(self.concepts)


class IdenticalConcept(BaseModel):
    """Identischer Begriff (A, A); im einmodalen Kontext eine maximale Clique."""

    model_config = ConfigDict(frozen=True)

    members: int = Field(..., description="Bitset A = B")

    @property
    def size(self) -> int:
        """k = |A|"""
        return self.members.bit_count()

    def member_indices(self) -> List[int]:
        return member_list(self.members)
