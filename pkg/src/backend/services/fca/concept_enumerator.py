"""
Begriffsaufzählungs-Modul.
Close-by-One mit lexikographischem Kanonizitätstest sowie die Extraktion
identischer Begriffe (über den Verband oder direkt über maximale Cliquen).
"""

from typing import List, Optional

from src.config.settings import settings
from src.config.logging_config import get_logger, log_execution_time, log_function_call
from src.backend.interfaces.base import ContextError
from src.backend.models.context import ConceptSet, FormalConcept, FormalContext, IdenticalConcept
from src.backend.models.graph import Graph
from src.backend.services.graph.algorithms import maximal_cliques
from src.backend.utils.bitsets import full_mask

# Logger für dieses Modul initialisieren
logger = get_logger(__name__)


class ContextLimitError(ContextError):
    """Der Kontext ist für die vollständige Verbandsaufzählung zu groß."""
    pass


@log_function_call(logger)
def enumerate_concepts(context: FormalContext, object_limit: Optional[int] = None) -> ConceptSet:
    """
    Zählt alle formalen Begriffe eines Kontexts auf (Close-by-One).

    Ausgehend vom obersten Begriff (G, G') wird für jedes Attribut j oberhalb
    der aktuellen Position C = A ∩ j' und D = C' gebildet; der Zweig wird
    nur verfolgt, wenn D unterhalb von j mit B übereinstimmt. So entsteht
    jeder Begriff genau einmal.

    Args:
        context: Zu analysierender Kontext
        object_limit: Maximale Objektanzahl (Standard aus den Settings)

    Raises:
        ContextLimitError: Wenn der Kontext mehr Objekte als erlaubt hat
    """
    limit = settings.concepts.object_limit if object_limit is None else object_limit
    if context.num_objects > limit:
        raise ContextLimitError(
            f"Kontext mit {context.num_objects} Objekten überschreitet das Limit von {limit}; "
            "für identische Begriffe fast_identical_concepts verwenden",
            {"objects": context.num_objects, "limit": limit}
        )

    n_attr = context.num_attributes
    found: List[FormalConcept] = []
    with log_execution_time(logger, "close_by_one"):
        top_extent = context.all_objects
        top_intent = context.derive_extent(top_extent)
        # Stack-Einträge: (Extent, Intent, erstes zu prüfendes Attribut)
        stack = [(top_extent, top_intent, 0)]
        while stack:
            extent, intent, start = stack.pop()
            found.append(FormalConcept(extent=extent, intent=intent))
            children = []
            for j in range(start, n_attr):
                if intent >> j & 1:
                    continue
                new_extent = extent & context.cols[j]
                new_intent = context.derive_extent(new_extent)
                below = full_mask(j)
                if (new_intent ^ intent) & below == 0:
                    children.append((new_extent, new_intent, j + 1))
            # umgekehrt, damit die Reihenfolge der Tiefensuche erhalten bleibt
            stack.extend(reversed(children))

    concepts = ConceptSet.canonical(context, found)
    logger.info(
        "Begriffsverband aufgezählt",
        extra={"concepts": concepts.size, "objects": context.num_objects}
    )
    return concepts


def extract_identical_concepts(concepts: ConceptSet) -> List[IdenticalConcept]:
    """
    Alle Begriffe mit Extent = Intent, in kanonischer Reihenfolge (O(L)).

    Raises:
        ContextError: Wenn der Kontext nicht einmodal ist
    """
    if not concepts.context.is_one_mode:
        raise ContextError("Identische Begriffe erfordern einen einmodalen Kontext")
    return [
        IdenticalConcept(members=c.extent)
        for c in concepts.concepts
        if c.extent and c.extent == c.intent
    ]


@log_function_call(logger)
def fast_identical_concepts(graph: Graph) -> List[IdenticalConcept]:
    """
    Identische Begriffe direkt als maximale Cliquen des Graphen.

    Liefert dieselbe Liste wie extract_identical_concepts über dem
    vollständigen Verband des einmodalen Kontexts, ohne den Verband zu bauen.
    """
    return [IdenticalConcept(members=c) for c in maximal_cliques(graph)]
