"""
Perkolations-Modul.
Verschmilzt relevante Cliquen, deren Schnitt mindestens min(|Ai|, |Aj|) - 1
Knoten umfasst, und löst verbleibende Überlappungen auf.
"""

from typing import List, Literal, Optional, Sequence, Tuple

from src.config.logging_config import get_logger
from src.backend.interfaces.base import PipelineError
from src.backend.models.context import IdenticalConcept
from src.backend.models.graph import Graph
from src.backend.utils.bitsets import canonical_key, canonical_sort, iter_bits

# Logger für dieses Modul initialisieren
logger = get_logger(__name__)


class PercolationLimitError(PipelineError):
    """Das Durchlauflimit wurde vor dem Fixpunkt erreicht."""

    def __init__(self, message: str, partial: List[int], passes: int):
        self.partial = partial
        self.passes = passes
        super().__init__(message, {"passes": passes, "sets": len(partial)})


class OverlapError(PipelineError):
    """Perkolierte Mengen überlappen (nur bei overlap_policy=strict)."""
    pass


def percolates(a: int, b: int) -> bool:
    """|A ∩ B| >= min(|A|, |B|) - 1"""
    return (a & b).bit_count() >= min(a.bit_count(), b.bit_count()) - 1


def _sweep(sets: List[int]) -> Tuple[List[int], bool]:
    """Ein Durchlauf über alle Paare in kanonischer Reihenfolge."""
    result = list(sets)
    merged = False
    i = 0
    while i < len(result):
        j = i + 1
        while j < len(result):
            if percolates(result[i], result[j]):
                result[i] |= result.pop(j)
                merged = True
                # result[i] ist gewachsen, Partner erneut prüfen
                j = i + 1
            else:
                j += 1
        i += 1
    return canonical_sort(result), merged


def _percolate_original(sets: List[int]) -> List[int]:
    """Zusammenhangskomponenten des Cliquengraphs über den Originalgrößen (Union-Find)."""
    parent = list(range(len(sets)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            if percolates(sets[i], sets[j]):
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)

    groups: dict = {}
    for i, mask in enumerate(sets):
        groups[find(i)] = groups.get(find(i), 0) | mask
    return canonical_sort(groups.values())


def run_percolation(
    relevant: Sequence[IdenticalConcept],
    passes: Optional[int] = None,
    merge_sizes: Literal["current", "original"] = "current"
) -> Tuple[List[int], int]:
    """
    Perkoliert relevante Cliquen bis zum Fixpunkt.

    Args:
        relevant: Relevante identische Begriffe
        passes: Maximale Anzahl Durchläufe (None = Anzahl Mengen + 1)
        merge_sizes: Test auf aktuellen (verschmolzenen) oder ursprünglichen Größen

    Returns:
        (kanonisch sortierte Knotenmengen, Anzahl der Durchläufe)

    Raises:
        PercolationLimitError: Limit vor dem Fixpunkt erreicht (mit Teilergebnis)
    """
    sets = canonical_sort(c.members for c in relevant)
    if merge_sizes == "original":
        return _percolate_original(sets), 1

    limit = passes or len(sets) + 1
    done = 0
    while done < limit:
        sets, merged = _sweep(sets)
        done += 1
        if not merged:
            logger.debug("Perkolation am Fixpunkt", extra={"passes": done, "sets": len(sets)})
            return sets, done
    raise PercolationLimitError(
        f"Perkolation nach {done} Durchläufen ohne Fixpunkt abgebrochen",
        partial=sets,
        passes=done
    )


def percolate(
    relevant: Sequence[IdenticalConcept],
    passes: Optional[int] = None,
    merge_sizes: Literal["current", "original"] = "current"
) -> List[int]:
    """Wie run_percolation, liefert nur die Knotenmengen."""
    sets, _ = run_percolation(relevant, passes, merge_sizes)
    return sets


def resolve_overlaps(
    graph: Graph,
    sets: Sequence[int],
    policy: Literal["resolve", "strict"] = "resolve"
) -> List[int]:
    """
    Macht perkolierte Mengen disjunkt.

    Ein mehrfach enthaltener Knoten bleibt in der Menge, in der er die
    meisten Nachbarn hat (bei Gleichstand die kanonisch erste); geleerte
    Mengen entfallen.

    Raises:
        OverlapError: Bei policy=strict und mindestens einer Überlappung
    """
    ordered = sorted(sets, key=canonical_key)
    seen = 0
    shared = 0
    for mask in ordered:
        shared |= seen & mask
        seen |= mask
    if not shared:
        return ordered
    if policy == "strict":
        raise OverlapError(
            "Perkolierte Mengen überlappen",
            {"nodes": graph.labels_of(shared)}
        )

    result = list(ordered)
    for v in iter_bits(shared):
        holders = [i for i, mask in enumerate(ordered) if mask >> v & 1]
        keep = max(holders, key=lambda i: ((graph.adjacency[v] & ordered[i]).bit_count(), -i))
        for i in holders:
            if i != keep:
                result[i] &= ~(1 << v)
    logger.warning(
        "Überlappende Knoten aufgelöst",
        extra={"nodes": shared.bit_count()}
    )
    return canonical_sort(mask for mask in result if mask)
