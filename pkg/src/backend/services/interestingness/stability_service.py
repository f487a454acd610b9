"""
Stabilitäts-Service-Modul.
Berechnet den Stabilitätsindex identischer Begriffe exakt (Potenzmenge)
oder per Low-Discrepancy-Stichprobe und klassifiziert die Begriffe für
Stufe 1 von COIN.
"""

import math
import warnings
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np
from scipy.stats import qmc

from src.config.settings import settings
from src.config.logging_config import get_logger, log_execution_time
from src.backend.interfaces.base import StabilityError
from src.backend.models.community import CoinConfig
from src.backend.models.context import FormalContext, IdenticalConcept
from src.backend.models.graph import Graph
from src.backend.models.stability import ConceptClass, ScoredConcept, StabilityValue
from src.backend.services.graph.algorithms import is_isolated_clique
from src.backend.utils.bitsets import members

# Logger für dieses Modul initialisieren
logger = get_logger(__name__)

MIN_SAMPLING_BUDGET = 64
NOISY_BRIDGE_STABILITY = Fraction(1, 4)


class ExtentTooLargeError(StabilityError):
    """Extent überschreitet die Schwelle der exakten Berechnung."""
    pass


class InvalidBudgetError(StabilityError):
    """Ungültiges Stichprobenbudget."""
    pass


def _bits_to_bool(mask: int, width: int) -> np.ndarray:
    """Bitset als boolesches Array der Länge width."""
    raw = mask.to_bytes(max(1, (width + 7) // 8), "little")
    return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:width].astype(bool)


def _outside_rows(context: FormalContext, concept: IdenticalConcept) -> np.ndarray:
    """
    Zeilen der Extent-Objekte, eingeschränkt auf Attribute außerhalb des
    Intents (k x |M \\ B|, True = Objekt besitzt das Attribut).

    e' = B gilt genau dann, wenn jede Spalte einen Eintrag False unter den
    Objekten aus e hat.
    """
    intent = context.derive_extent(concept.members)
    outside = members(context.all_attributes & ~intent)
    rows = np.array(
        [_bits_to_bool(context.rows[g], context.num_attributes) for g in concept.member_indices()],
        dtype=bool
    ).reshape(concept.size, context.num_attributes)
    return rows[:, outside]


def stability_exact(
    context: FormalContext,
    concept: IdenticalConcept,
    exact_threshold: Optional[int] = None
) -> StabilityValue:
    """
    σ(c) = |{e ⊆ A : e' = B}| / 2^|A| durch Aufzählung aller Teilmengen.

    Die Schnitte der Zeilen werden für alle 2^k Teilmengen durch Verdoppeln
    aufgebaut: Teilmenge e ∪ {d} entsteht aus e durch UND mit Zeile d.

    Raises:
        ExtentTooLargeError: Wenn |A| die Schwelle überschreitet
    """
    threshold = settings.detection.exact_threshold if exact_threshold is None else exact_threshold
    k = concept.size
    if k > threshold:
        raise ExtentTooLargeError(
            f"Extent der Größe {k} überschreitet die exakte Schwelle {threshold}; "
            "stability_sampled verwenden",
            {"extent_size": k, "exact_threshold": threshold}
        )

    outside = _outside_rows(context, concept)
    # Füllbits von packbits sind 0 und verfälschen den Nulltest nicht
    rows = np.packbits(outside, axis=1, bitorder="little")
    inter = np.empty((1 << k, rows.shape[1]), dtype=np.uint8)
    inter[0] = np.packbits(np.ones(outside.shape[1], dtype=bool), bitorder="little")
    for d in range(k):
        half = 1 << d
        np.bitwise_and(inter[:half], rows[d], out=inter[half:2 * half])

    numerator = int(np.count_nonzero(~inter.any(axis=1)))
    return StabilityValue.exact(numerator=numerator, extent_size=k)


def stability_sampled(
    context: FormalContext,
    concept: IdenticalConcept,
    budget: int,
    seed: Optional[int],
    error_constant: Optional[float] = None
) -> StabilityValue:
    """
    Schätzt σ(c) aus |S| = budget Teilmengen einer verwürfelten
    Sobol-Folge (Basis 2) über dem Teilmengenraum.

    Jeder Punkt wählt Mitglied d genau dann, wenn seine Koordinate d
    mindestens 1/2 ist. Deckt das Budget die Potenzmenge ab, wird exakt
    gerechnet. Fehlerschranke: C·ln|S|/|S|.

    Raises:
        InvalidBudgetError: Budget unter 64 (sofern nicht exakt gerechnet wird)
    """
    k = concept.size
    if budget < 1:
        raise InvalidBudgetError("Stichprobenbudget muss positiv sein", {"budget": budget})
    if k < 63 and budget >= 1 << k:
        return stability_exact(context, concept, exact_threshold=max(k, 1))
    if budget < MIN_SAMPLING_BUDGET:
        raise InvalidBudgetError(
            f"Stichprobenbudget {budget} liegt unter dem Minimum {MIN_SAMPLING_BUDGET}",
            {"budget": budget, "extent_size": k}
        )

    constant = settings.detection.error_constant if error_constant is None else error_constant
    lacks = ~_outside_rows(context, concept)
    with warnings.catch_warnings():
        # Sobol meldet Budgets, die keine Zweierpotenz sind
        warnings.simplefilter("ignore", category=UserWarning)
        sampler = qmc.Sobol(d=k, scramble=True, seed=seed)
        points = sampler.random(budget)
    selected = points >= 0.5

    # Anzahl gewählter Objekte, denen das jeweilige Attribut fehlt
    misses = selected.astype(np.int32) @ lacks.astype(np.int32)
    hits = int(np.count_nonzero((misses > 0).all(axis=1)))
    estimate = hits / budget
    error_bound = constant * math.log(budget) / budget

    logger.debug(
        "Stabilität geschätzt",
        extra={"extent_size": k, "budget": budget, "estimate": estimate}
    )
    return StabilityValue.sampled(
        estimate=estimate,
        extent_size=k,
        samples=budget,
        error_bound=error_bound,
        seed=seed
    )


def expected_isolated_stability(k: int) -> Fraction:
    """Höchstmögliche Stabilität (2^k - 1) / 2^k einer isolierten maximalen Clique."""
    if k < 1:
        raise StabilityError("Extent-Größe muss mindestens 1 sein", {"k": k})
    return Fraction(2 ** k - 1, 2 ** k)


def classify(
    context: FormalContext,
    concept: IdenticalConcept,
    stability: StabilityValue,
    graph: Graph
) -> ConceptClass:
    """
    Ordnet einen identischen Begriff einer Klasse von Stufe 1 zu.

    Isoliert: σ = (2^k - 1)/2^k als exakter Bruch; umfasst der Extent alle
    Objekte, qualifiziert zusätzlich ∅ und σ = 1. Bei geschätzten Werten
    entscheidet die strukturelle Prüfung (keine Kante verlässt A).
    Verrauschte Brücke: k = 2 und σ = 1/4.
    """
    k = concept.size
    if stability.is_exact:
        value = stability.fraction()
        if value == expected_isolated_stability(k) or concept.members == context.all_objects:
            return ConceptClass.ISOLATED_MAX_CLIQUE
        if k == 2 and value == NOISY_BRIDGE_STABILITY:
            return ConceptClass.NOISY_BRIDGE
        return ConceptClass.RELEVANT_CLIQUE

    if is_isolated_clique(graph, concept.members):
        return ConceptClass.ISOLATED_MAX_CLIQUE
    return ConceptClass.RELEVANT_CLIQUE


def score_concept(
    context: FormalContext,
    concept: IdenticalConcept,
    graph: Graph,
    config: CoinConfig
) -> ScoredConcept:
    """Stabilität (exakt bis exact_threshold, sonst geschätzt) plus Klassifikation."""
    if concept.size <= config.exact_threshold:
        stability = stability_exact(context, concept, exact_threshold=config.exact_threshold)
    else:
        stability = stability_sampled(
            context,
            concept,
            budget=config.sampling_budget,
            seed=config.seed,
            error_constant=config.error_constant
        )
    return ScoredConcept(
        concept=concept,
        stability=stability,
        classification=classify(context, concept, stability, graph)
    )


def score_concepts(
    context: FormalContext,
    concepts: Sequence[IdenticalConcept],
    graph: Graph,
    config: CoinConfig
) -> List[ScoredConcept]:
    """Bewertet alle identischen Begriffe; die Reihenfolge bleibt erhalten."""
    with log_execution_time(logger, "score_concepts"):
        scored = [score_concept(context, c, graph, config) for c in concepts]
    logger.info(
        "Identische Begriffe bewertet",
        extra={
            "concepts": len(scored),
            "sampled": sum(1 for s in scored if not s.stability.is_exact)
        }
    )
    return scored
