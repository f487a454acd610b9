"""
Community-Modell-Modul.
Definiert Pipeline-Konfiguration, Communities mit Herkunft sowie
Laufberichte der COIN-Erkennung.
"""

import json
from enum import Enum
from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.backend.interfaces.base import PipelineError
from src.backend.models.graph import Graph, NodeLabel
from src.backend.models.stability import ConceptClass, ScoredConcept
from src.backend.utils.bitsets import canonical_key, members


class Provenance(str, Enum):
    """Herkunft einer Community."""
    ISOLATED = "isolated"       # isolierte maximale Clique (Stufe 1)
    PERCOLATED = "percolated"   # Ergebnis der Perkolation (Stufe 2)
    SINGLETON = "singleton"     # einzelner, sonst nicht abgedeckter Knoten


class CoinConfig(BaseModel):
    """
    Konfiguration eines COIN-Laufs.

    Wird normalerweise über Settings.detection_config erzeugt, damit
    YAML-, Umgebungs- und CLI-Werte zusammengeführt werden.
    """

    model_config = ConfigDict(frozen=True)

    exact_threshold: int = Field(default=20, ge=1)
    sampling_budget: int = Field(default=4096, ge=64)
    seed: int = Field(default=0)
    error_constant: float = Field(default=10.0, gt=0)
    singleton_backfill: bool = Field(default=True)
    max_passes: Optional[int] = Field(default=None, ge=1)
    merge_sizes: Literal["current", "original"] = Field(default="current")
    overlap_policy: Literal["resolve", "strict"] = Field(default="resolve")


class Community(BaseModel):
    """Eine Community als Knoten-Bitset mit Herkunft."""

    model_config = ConfigDict(frozen=True)

    members: int = Field(..., description="Knoten-Bitset")
    provenance: Provenance

    @property
    def size(self) -> int:
        return self.members.bit_count()

    def member_indices(self) -> List[int]:
        return members(self.members)


class CommunitySet(BaseModel):
    """
    Menge 𝒟 der erkannten Communities eines Graphen.

    Communities sind paarweise disjunkt und kanonisch sortiert
    (Größe absteigend, dann lexikographisch).
    """

    model_config = ConfigDict(frozen=True)

    num_nodes: int = Field(..., ge=0, description="|G| des zugrunde liegenden Graphen")
    communities: Tuple[Community, ...] = Field(default=())

    @model_validator(mode="after")
    def _check_disjoint(self) -> "CommunitySet":
        seen = 0
        for community in self.communities:
            if not community.members:
                raise PipelineError("Leere Community")
            if community.members & seen:
                raise PipelineError(
                    "Communities sind nicht disjunkt",
                    {"overlap": members(community.members & seen)}
                )
            seen |= community.members
        if seen >> self.num_nodes:
            raise PipelineError("Community enthält unbekannte Knoten")
        return self

    @classmethod
    def canonical(cls, num_nodes: int, communities: List[Community]) -> "CommunitySet":
        ordered = sorted(communities, key=lambda c: canonical_key(c.members))
        return cls(num_nodes=num_nodes, communities=tuple(ordered))

    @property
    def covered(self) -> int:
        """Bitset aller abgedeckten Knoten."""
        mask = 0
        for community in self.communities:
            mask |= community.members
        return mask

    @property
    def coverage(self) -> float:
        """Anteil der Knoten, die einer Community angehören."""
        if not self.num_nodes:
            return 0.0
        return self.covered.bit_count() / self.num_nodes

    def __len__(self) -> int:
        return len(self.communities)

    def masks(self) -> List[int]:
        return [c.members for c in self.communities]

    def by_provenance(self, provenance: Provenance) -> List[Community]:
        return [c for c in self.communities if c.provenance == provenance]


class Timings(BaseModel):
    """Laufzeiten τ je Stufe in Millisekunden."""

    stage1: float = Field(default=0.0, ge=0.0)
    stage2: float = Field(default=0.0, ge=0.0)
    total: float = Field(default=0.0, ge=0.0)


class CoinRun(BaseModel):
    """Vollständiges Ergebnis eines Pipeline-Laufs."""

    model_config = ConfigDict(frozen=True)

    config: CoinConfig
    communities: CommunitySet
    scored: Tuple[ScoredConcept, ...] = Field(default=())
    percolation_passes: int = Field(default=0, ge=0)
    timings: Timings = Field(default_factory=Timings)

    def to_json(self, graph: Graph, include_timings: bool = True) -> str:
        """
        Kanonische JSON-Ausgabe (sortierte Schlüssel, kanonische Reihenfolge).

        Ohne Zeiten ist die Ausgabe für gleiche Eingaben byte-identisch.
        """
        payload: Dict[str, Any] = {
            "algorithm": "coin",
            "config": self.config.model_dump(),
            "communities": [
                {
                    "members": graph.labels_of(c.members),
                    "provenance": c.provenance.value
                }
                for c in self.communities.communities
            ],
            "coverage": self.communities.coverage,
        }
        if include_timings:
            payload["timings_ms"] = self.timings.model_dump()
        return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


class ComplexityReport(BaseModel):
    """Zählgrößen zur Aufwandsabschätzung O(|C|·ξ + |C|²) eines Laufs."""

    num_identical_concepts: int = Field(default=0, ge=0)
    budget: int = Field(default=0, ge=0, description="Deklariertes Stichprobenbudget ξ")
    num_exact: int = Field(default=0, ge=0)
    num_sampled: int = Field(default=0, ge=0)
    num_isolated: int = Field(default=0, ge=0)
    num_noisy_bridges: int = Field(default=0, ge=0)
    num_relevant: int = Field(default=0, ge=0)
    num_communities: int = Field(default=0, ge=0)
    percolation_passes: int = Field(default=0, ge=0)
    timings: Timings = Field(default_factory=Timings)


def community_labels(graph: Graph, community_set: CommunitySet) -> List[List[NodeLabel]]:
    """Communities als Label-Listen in kanonischer Reihenfolge."""
    return [graph.labels_of(mask) for mask in community_set.masks()]


def count_classes(scored: Tuple[ScoredConcept, ...]) -> Dict[ConceptClass, int]:
    counts = {cls: 0 for cls in ConceptClass}
    for item in scored:
        counts[item.classification] += 1
    return counts
