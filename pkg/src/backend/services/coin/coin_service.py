"""
COIN-Service-Modul.
Orchestriert die zweistufige Community-Erkennung: identische Begriffe
bewerten, isolierte Cliquen übernehmen, verrauschte Brücken abschneiden
und relevante Cliquen perkolieren.
"""

import time
from typing import List, Optional, Sequence, Tuple

from src.config.settings import settings
from src.config.logging_config import get_logger, log_execution_time, run_context
from src.backend.interfaces.base import BaseService, PipelineError
from src.backend.models.community import (
    CoinConfig,
    CoinRun,
    Community,
    CommunitySet,
    ComplexityReport,
    Provenance,
    Timings,
    count_classes,
)
from src.backend.models.context import IdenticalConcept
from src.backend.models.graph import Graph
from src.backend.models.stability import ConceptClass, ScoredConcept
from src.backend.services.coin.percolation import resolve_overlaps, run_percolation
from src.backend.services.fca.concept_enumerator import fast_identical_concepts
from src.backend.services.fca.context_builder import build_one_mode_context
from src.backend.services.interestingness.stability_service import score_concepts
from src.backend.utils.bitsets import iter_bits

# Logger für dieses Modul initialisieren
logger = get_logger(__name__)


def stage1_filter(
    scored: Sequence[ScoredConcept],
    num_nodes: int
) -> Tuple[CommunitySet, List[IdenticalConcept]]:
    """
    Stufe 1: isolierte maximale Cliquen werden Communities, verrauschte
    Brücken entfallen, relevante Cliquen gehen in die Perkolation.

    Die Eingabereihenfolge bleibt für die relevanten Cliquen erhalten.
    Isolierte Begriffe der Größe 1 erhalten die Herkunft Singleton.
    """
    isolated: List[Community] = []
    relevant: List[IdenticalConcept] = []
    for item in scored:
        if item.classification == ConceptClass.ISOLATED_MAX_CLIQUE:
            provenance = Provenance.SINGLETON if item.concept.size == 1 else Provenance.ISOLATED
            isolated.append(Community(members=item.concept.members, provenance=provenance))
        elif item.classification == ConceptClass.RELEVANT_CLIQUE:
            relevant.append(item.concept)
    return CommunitySet.canonical(num_nodes, isolated), relevant


class CoinService(BaseService):
    """
    Pipeline-Service für COIN.

    Ein Aufruf von run() entspricht einem Lauf mit eigener Run-ID; die
    Instanz hält keinen Zustand zwischen Läufen.
    """

    def __init__(self, config: Optional[CoinConfig] = None):
        """
        Args:
            config: Laufkonfiguration (Standard aus den Settings)
        """
        super().__init__()
        self.config = config or settings.detection_config()

    def initialize(self) -> None:
        self.logger.debug("COIN-Service initialisiert", extra={"config": self.config.model_dump()})

    def run(self, graph: Graph) -> CoinRun:
        """
        Führt die Erkennung auf einem Graphen aus.

        Raises:
            PipelineError: Bei Fehlern in der Perkolation oder Zusammenführung
        """
        config = self.config
        timings: dict = {}
        with run_context():
            self.logger.info(
                "Starte Community-Erkennung",
                extra={"nodes": graph.num_nodes, "edges": graph.num_edges}
            )
            start = time.perf_counter()

            with log_execution_time(self.logger, "stage1", timings):
                context = build_one_mode_context(graph)
                concepts = fast_identical_concepts(graph)
                scored = score_concepts(context, concepts, graph, config)
                isolated, relevant = stage1_filter(scored, graph.num_nodes)

            with log_execution_time(self.logger, "stage2", timings):
                percolated, passes = run_percolation(relevant, config.max_passes, config.merge_sizes)
                percolated = resolve_overlaps(graph, percolated, config.overlap_policy)
                communities = self._assemble(graph, isolated, percolated)

            timings["total"] = (time.perf_counter() - start) * 1000

        counts = count_classes(tuple(scored))
        self.logger.info(
            "Community-Erkennung abgeschlossen",
            extra={
                "communities": len(communities),
                "isolated": counts[ConceptClass.ISOLATED_MAX_CLIQUE],
                "noisy_bridges": counts[ConceptClass.NOISY_BRIDGE],
                "relevant": counts[ConceptClass.RELEVANT_CLIQUE],
                "coverage": communities.coverage
            }
        )
        return CoinRun(
            config=config,
            communities=communities,
            scored=tuple(scored),
            percolation_passes=passes,
            timings=Timings(**timings)
        )

    def _assemble(self, graph: Graph, isolated: CommunitySet, percolated: List[int]) -> CommunitySet:
        """Vereinigt isolierte und perkolierte Mengen und ergänzt ggf. Singletons."""
        parts = list(isolated.communities)
        taken = isolated.covered
        for mask in percolated:
            if mask & taken:
                raise PipelineError(
                    "Perkolierte Menge überschneidet eine isolierte Clique",
                    {"nodes": graph.labels_of(mask & taken)}
                )
            parts.append(Community(members=mask, provenance=Provenance.PERCOLATED))
            taken |= mask
        if self.config.singleton_backfill:
            for v in iter_bits(graph.node_mask & ~taken):
                parts.append(Community(members=1 << v, provenance=Provenance.SINGLETON))
        return CommunitySet.canonical(graph.num_nodes, parts)


def detect_communities(graph: Graph, config: Optional[CoinConfig] = None) -> CommunitySet:
    """Erkennt die Communities eines Graphen mit COIN."""
    with CoinService(config) as service:
        return service.run(graph).communities


def coin_complexity_report(run: CoinRun) -> ComplexityReport:
    """Zählgrößen eines abgeschlossenen Laufs (identische Begriffe, Budget, Stufenzeiten)."""
    counts = count_classes(run.scored)
    return ComplexityReport(
        num_identical_concepts=len(run.scored),
        budget=run.config.sampling_budget,
        num_exact=sum(1 for s in run.scored if s.stability.is_exact),
        num_sampled=sum(1 for s in run.scored if not s.stability.is_exact),
        num_isolated=counts[ConceptClass.ISOLATED_MAX_CLIQUE],
        num_noisy_bridges=counts[ConceptClass.NOISY_BRIDGE],
        num_relevant=counts[ConceptClass.RELEVANT_CLIQUE],
        num_communities=len(run.communities),
        percolation_passes=run.percolation_passes,
        timings=run.timings
    )
