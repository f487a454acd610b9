"""
Test-Suite für den Stabilitätsindex und die Klassifikation identischer Begriffe.
"""

import itertools
from fractions import Fraction

import numpy as np
import pytest

from src.backend.interfaces.base import StabilityError
from src.backend.models.community import CoinConfig
from src.backend.models.context import IdenticalConcept
from src.backend.models.graph import Graph
from src.backend.models.stability import ConceptClass, StabilityValue
from src.backend.services.fca.concept_enumerator import fast_identical_concepts
from src.backend.services.fca.context_builder import build_one_mode_context
from src.backend.services.graph.algorithms import degree, is_isolated_clique
from src.backend.services.interestingness.stability_service import (
    ExtentTooLargeError,
    InvalidBudgetError,
    classify,
    expected_isolated_stability,
    score_concepts,
    stability_exact,
    stability_sampled,
)
from src.backend.utils.bitsets import full_mask

pytestmark = pytest.mark.unit


def _complete(labels):
    n = len(labels)
    return Graph.from_edges(labels, itertools.combinations(range(n), 2))


def _clique_with_satellites(k: int, satellites: int, seed: int) -> Graph:
    """K_k plus Satellitenknoten, die je an eine echte Teilmenge der Clique grenzen."""
    rng = np.random.default_rng(seed)
    edges = list(itertools.combinations(range(k), 2))
    for s in range(satellites):
        node = k + s
        size = int(rng.integers(1, k))
        for member in rng.choice(k, size=size, replace=False):
            edges.append((int(member), node))
    return Graph.from_edges(list(range(k + satellites)), edges)


def _exact(graph, mask_value):
    return stability_exact(build_one_mode_context(graph), IdenticalConcept(members=mask_value))


@pytest.mark.parametrize("labels, expected", [
    ((13, 14, 15), Fraction(7, 8)),
    ((4, 5), Fraction(1, 4)),
    ((6, 12), Fraction(1, 4)),
    ((1, 2, 3, 4), Fraction(14, 16)),
    ((5, 6, 7), Fraction(5, 8)),
])
def test_stability_exact_toy(toy_graph, mask, labels, expected):
    """Test der exakten Stabilität am Beispielnetz."""
    value = _exact(toy_graph, mask(toy_graph, *labels))
    assert value.is_exact
    assert value.fraction() == expected


def test_stability_star_leaf(star_graph, mask):
    """Test: Blattkante des Sterns hat Stabilität 2/4."""
    assert _exact(star_graph, mask(star_graph, 16, 17)).fraction() == Fraction(1, 2)


def test_stability_path():
    """Test: Pfad a-b-c, Begriff {a, b} hat Stabilität 1/2."""
    path = Graph.from_labeled_edges([("a", "b"), ("b", "c")])
    assert _exact(path, path.mask_of_labels(["a", "b"])).value == 0.5


def test_stability_whole_context():
    """Test: umfasst der Extent alle Objekte, qualifiziert auch ∅ (σ = 1)."""
    k4 = _complete([1, 2, 3, 4])
    assert _exact(k4, full_mask(4)).fraction() == 1


def test_stability_bounds(random_corpus):
    """Test: 1/2^k <= σ <= (2^k - 1)/2^k für jeden identischen Begriff."""
    for graph in random_corpus(60, max_nodes=14):
        context = build_one_mode_context(graph)
        for concept in fast_identical_concepts(graph):
            value = stability_exact(context, concept)
            assert value.numerator >= 1
            if concept.members != context.all_objects:
                assert value.fraction() <= expected_isolated_stability(concept.size)


def test_isolation_equivalence(random_corpus):
    """Test: σ = (2^k - 1)/2^k genau dann, wenn keine Kante A verlässt."""
    for graph in random_corpus(80, max_nodes=16):
        context = build_one_mode_context(graph)
        for concept in fast_identical_concepts(graph):
            if concept.members == context.all_objects:
                continue
            value = stability_exact(context, concept).fraction()
            isolated = is_isolated_clique(graph, concept.members)
            assert (value == expected_isolated_stability(concept.size)) == isolated


def test_bridge_two_cliques_have_quarter_stability(random_corpus):
    """Test: maximale 2-Cliquen mit Endknotengrad >= 2 haben σ = 1/4."""
    checked = 0
    for graph in random_corpus(80, max_nodes=16):
        context = build_one_mode_context(graph)
        for concept in fast_identical_concepts(graph):
            if concept.size != 2:
                continue
            u, v = concept.member_indices()
            if degree(graph, u) >= 2 and degree(graph, v) >= 2:
                assert stability_exact(context, concept).fraction() == Fraction(1, 4)
                checked += 1
    assert checked > 0


@pytest.mark.parametrize("k, expected", [
    (1, Fraction(1, 2)),
    (3, Fraction(7, 8)),
    (10, Fraction(1023, 1024)),
])
def test_expected_isolated_stability(k, expected):
    """Test der geschlossenen Form (2^k - 1)/2^k."""
    assert expected_isolated_stability(k) == expected


def test_expected_isolated_stability_invalid():
    with pytest.raises(StabilityError):
        expected_isolated_stability(0)


def test_extent_too_large():
    """Test: oberhalb der Schwelle wird auf den Stichprobenweg verwiesen."""
    k5 = _complete(list(range(5)))
    with pytest.raises(ExtentTooLargeError):
        stability_exact(build_one_mode_context(k5), IdenticalConcept(members=full_mask(5)), exact_threshold=3)


def test_sampled_degrades_to_exact(toy_graph, mask):
    """Test: deckt das Budget die Potenzmenge ab, wird exakt gerechnet."""
    context = build_one_mode_context(toy_graph)
    bridge = stability_sampled(context, IdenticalConcept(members=mask(toy_graph, 4, 5)), budget=64, seed=1)
    assert bridge.is_exact and bridge.value == 0.25
    isolated = stability_sampled(context, IdenticalConcept(members=mask(toy_graph, 13, 14, 15)), budget=1024, seed=1)
    assert abs(isolated.value - 0.875) <= (isolated.error_bound or 0.0)


def test_sampled_invalid_budget():
    """Test: Budget 0 und Budgets unter 64 werden abgelehnt."""
    graph = _clique_with_satellites(10, 3, seed=0)
    context = build_one_mode_context(graph)
    concept = IdenticalConcept(members=full_mask(10))
    with pytest.raises(InvalidBudgetError):
        stability_sampled(context, concept, budget=0, seed=0)
    with pytest.raises(InvalidBudgetError):
        stability_sampled(context, concept, budget=32, seed=0)


def test_sampled_is_deterministic_and_bounded():
    """Test: gleicher Seed liefert gleiche Schätzung, Fehlerschranke C·ln|S|/|S|."""
    graph = _clique_with_satellites(14, 6, seed=3)
    context = build_one_mode_context(graph)
    concept = IdenticalConcept(members=full_mask(14))
    first = stability_sampled(context, concept, budget=4096, seed=5, error_constant=10.0)
    second = stability_sampled(context, concept, budget=4096, seed=5, error_constant=10.0)
    assert first == second
    assert first.method == "sampled"
    assert first.samples == 4096
    assert first.error_bound == pytest.approx(10.0 * np.log(4096) / 4096)
    exact = stability_exact(context, concept)
    assert abs(first.value - exact.value) <= first.error_bound


def test_sampled_accuracy_over_seeds():
    """Test: die Schätzung liegt für fast alle Seeds innerhalb der Fehlerschranke."""
    graph = _clique_with_satellites(13, 5, seed=9)
    context = build_one_mode_context(graph)
    concept = IdenticalConcept(members=full_mask(13))
    exact = stability_exact(context, concept).value
    hits = 0
    for seed in range(20):
        value = stability_sampled(context, concept, budget=4096, seed=seed)
        hits += abs(value.value - exact) <= value.error_bound
    assert hits >= 19


def test_sampled_estimator_is_unbiased():
    """Test: Mittel über 200 Seeds liegt bei Budget 64 < 2^12 innerhalb 0.01 vom exakten Wert."""
    graph = _clique_with_satellites(12, 5, seed=4)
    context = build_one_mode_context(graph)
    concept = IdenticalConcept(members=full_mask(12))
    exact = stability_exact(context, concept).value
    estimates = [stability_sampled(context, concept, budget=64, seed=seed) for seed in range(200)]
    assert all(e.method == "sampled" for e in estimates)
    assert abs(np.mean([e.value for e in estimates]) - exact) <= 0.01


def test_explicit_zero_arguments_are_not_defaults():
    """Test: explizite Nullwerte ersetzen die Standardwerte aus den Settings."""
    graph = _clique_with_satellites(10, 3, seed=0)
    context = build_one_mode_context(graph)
    concept = IdenticalConcept(members=full_mask(10))
    with pytest.raises(ExtentTooLargeError):
        stability_exact(context, concept, exact_threshold=0)
    assert stability_sampled(context, concept, budget=64, seed=0, error_constant=0.0).error_bound == 0.0



def test_stability_value_validation():
    """Test der Modellprüfung für exakte und geschätzte Werte."""
    with pytest.raises(StabilityError):
        StabilityValue.exact(numerator=9, extent_size=3)
    with pytest.raises(StabilityError):
        StabilityValue(method="sampled", extent_size=3)
    sampled = StabilityValue.sampled(estimate=0.5, extent_size=30, samples=64, error_bound=0.1, seed=0)
    with pytest.raises(StabilityError):
        sampled.fraction()


@pytest.mark.parametrize("labels, expected", [
    ((13, 14, 15), ConceptClass.ISOLATED_MAX_CLIQUE),
    ((4, 5), ConceptClass.NOISY_BRIDGE),
    ((6, 12), ConceptClass.NOISY_BRIDGE),
    ((8, 9, 10), ConceptClass.RELEVANT_CLIQUE),
    ((1, 2, 3, 4), ConceptClass.RELEVANT_CLIQUE),
])
def test_classify_toy(toy_graph, mask, labels, expected):
    """Test der Klassifikation am Beispielnetz."""
    context = build_one_mode_context(toy_graph)
    concept = IdenticalConcept(members=mask(toy_graph, *labels))
    assert classify(context, concept, stability_exact(context, concept), toy_graph) == expected


def test_classify_star_leaves(star_graph, mask):
    """Test: Blattkanten des Sterns sind keine verrauschten Brücken."""
    context = build_one_mode_context(star_graph)
    concept = IdenticalConcept(members=mask(star_graph, 16, 18))
    assert classify(context, concept, stability_exact(context, concept), star_graph) == ConceptClass.RELEVANT_CLIQUE


def test_classify_complete_graph_is_isolated():
    """Test: der vollständige Graph ist eine isolierte Clique (σ = 1)."""
    k3 = _complete(["a", "b", "c"])
    context = build_one_mode_context(k3)
    concept = IdenticalConcept(members=full_mask(3))
    assert classify(context, concept, stability_exact(context, concept), k3) == ConceptClass.ISOLATED_MAX_CLIQUE


def test_classify_sampled_uses_structural_check():
    """Test: bei geschätzter Stabilität entscheidet die strukturelle Isolation."""
    big = 25
    edges = list(itertools.combinations(range(big), 2)) + [(big, big + 1), (big + 1, big + 2), (big, big + 2)]
    graph = Graph.from_edges(list(range(big + 3)), edges)
    config = CoinConfig(sampling_budget=64, seed=0)
    context = build_one_mode_context(graph)
    scored = score_concepts(context, fast_identical_concepts(graph), graph, config)
    assert scored[0].concept.size == big
    assert scored[0].stability.method == "sampled"
    assert scored[0].classification == ConceptClass.ISOLATED_MAX_CLIQUE
    assert scored[1].stability.is_exact


def test_score_concepts_preserves_order(toy_graph):
    """Test: score_concepts behält die kanonische Reihenfolge bei."""
    concepts = fast_identical_concepts(toy_graph)
    scored = score_concepts(build_one_mode_context(toy_graph), concepts, toy_graph, CoinConfig())
    assert [s.concept for s in scored] == concepts
    classes = [s.classification for s in scored]
    assert classes.count(ConceptClass.ISOLATED_MAX_CLIQUE) == 1
    assert classes.count(ConceptClass.NOISY_BRIDGE) == 2
    assert classes.count(ConceptClass.RELEVANT_CLIQUE) == 5
