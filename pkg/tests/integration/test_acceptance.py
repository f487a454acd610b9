"""
Abnahmetests auf großen Zufallskorpora und den Benchmark-Datensätzen.

Laufen nicht standardmäßig:
    pytest -m slow
    COIN_DATASETS=/pfad/zu/datasets pytest -m benchmark
"""

import itertools
import os
import time
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from src.backend.models.community import CoinConfig
from src.backend.models.context import IdenticalConcept
from src.backend.models.graph import Graph
from src.backend.services.bench.bench_runner import LABEL_SUFFIX
from src.backend.services.coin.coin_service import CoinService
from src.backend.services.evaluation.nmi import (
    nmi,
    partition_from_communities,
    partition_from_labeling,
    partition_from_labels,
)
from src.backend.services.fca.concept_enumerator import enumerate_concepts, extract_identical_concepts
from src.backend.services.fca.context_builder import build_one_mode_context
from src.backend.services.graph.algorithms import degree, is_isolated_clique, maximal_cliques
from src.backend.services.graph.parsers import load_graph, parse_label_file
from src.backend.services.interestingness.stability_service import (
    expected_isolated_stability,
    stability_exact,
    stability_sampled,
)
from src.backend.utils.bitsets import full_mask

DATASETS = os.environ.get("COIN_DATASETS")

# Datei, erwartete NMI, erwartete Community-Anzahl, NMI-Toleranz, Anzahl-Toleranz
BENCHMARKS = [
    ("dolphins.gml", 1.00, 2, 0.01, 0),
    pytest.param(
        "karate.gml", 0.837, 2, 0.05, 1,
        marks=pytest.mark.xfail(
            reason="bekannte Abweichung: 6 Communities, NMI 0.623 (siehe DESIGN.md)",
            raises=AssertionError,
            strict=True
        )
    ),
    ("football.gml", 0.978, 12, 0.05, 1),
    ("polbooks.gml", 0.885, 3, 0.05, 1),
]


@pytest.mark.slow
def test_lattice_identical_concepts_equal_cliques(random_corpus):
    """Identische Begriffe des vollständigen Verbands = maximale Cliquen (500 Graphen)."""
    start = time.perf_counter()
    for graph in random_corpus(500):
        lattice = enumerate_concepts(build_one_mode_context(graph))
        identical = [c.members for c in extract_identical_concepts(lattice)]
        assert identical == list(maximal_cliques(graph))
    assert time.perf_counter() - start < 60


@pytest.mark.slow
def test_stability_theorems(random_corpus):
    """Isolation und verrauschte Brücken über die exakte Stabilität (500 Graphen)."""
    for graph in random_corpus(500):
        context = build_one_mode_context(graph)
        for mask in maximal_cliques(graph):
            concept = IdenticalConcept(members=mask)
            value = stability_exact(context, concept).fraction()
            if mask != context.all_objects:
                isolated = value == expected_isolated_stability(concept.size)
                assert isolated == is_isolated_clique(graph, mask)
            if concept.size == 2:
                u, v = concept.member_indices()
                if degree(graph, u) >= 2 and degree(graph, v) >= 2:
                    assert value == Fraction(1, 4)


@pytest.mark.slow
def test_sampled_estimator_accuracy():
    """|Schätzung - exakt| <= Fehlerschranke in mindestens 95 von 100 Läufen."""
    rng = np.random.default_rng(2018)
    hits = 0
    for run in range(100):
        k = int(rng.integers(8, 17))
        edges = list(itertools.combinations(range(k), 2))
        for s in range(int(rng.integers(1, 8))):
            size = int(rng.integers(1, k))
            edges += [(int(m), k + s) for m in rng.choice(k, size=size, replace=False)]
        nodes = 1 + max(max(e) for e in edges)
        graph = Graph.from_edges(list(range(nodes)), edges)
        context = build_one_mode_context(graph)
        concept = IdenticalConcept(members=full_mask(k))
        exact = stability_exact(context, concept).value
        sampled = stability_sampled(context, concept, budget=4096, seed=run)
        if sampled.is_exact:
            hits += sampled.value == exact
        else:
            hits += abs(sampled.value - exact) <= sampled.error_bound
    assert hits >= 95


@pytest.mark.slow
def test_nmi_fuzz():
    """NMI-Eigenschaften auf 1000 zufälligen Partitionspaaren (n <= 200)."""
    rng = np.random.default_rng(99)
    for _ in range(1000):
        n = int(rng.integers(1, 201))
        k1, k2 = (int(x) for x in rng.integers(1, n + 1, size=2))
        truth = partition_from_labels({v: int(c) for v, c in enumerate(rng.integers(0, k1, size=n))})
        pred = partition_from_labels({v: int(c) for v, c in enumerate(rng.integers(0, k2, size=n))})
        value = nmi(truth, pred)
        assert 0.0 <= value <= 1.0
        assert nmi(pred, truth) == pytest.approx(value)
        assert nmi(truth, truth) == pytest.approx(1.0)
        relabeled = partition_from_labels({v: f"x{i}" for i, block in enumerate(pred.blocks) for v in block})
        assert nmi(truth, relabeled) == pytest.approx(value)


@pytest.mark.slow
def test_determinism_on_fixtures(fixtures_dir):
    """Zwei Läufe liefern byte-identisches JSON auf allen Fixtures."""
    for path in sorted(fixtures_dir.iterdir()):
        if path.suffix not in (".edgelist", ".gml"):
            continue
        graph = load_graph(path).graph
        outputs = {CoinService(CoinConfig()).run(graph).to_json(graph, include_timings=False) for _ in range(2)}
        assert len(outputs) == 1


@pytest.mark.benchmark
@pytest.mark.skipif(DATASETS is None, reason="COIN_DATASETS nicht gesetzt")
@pytest.mark.parametrize("name, expected_nmi, expected_count, nmi_tol, count_tol", BENCHMARKS)
def test_benchmark_reproduction(name, expected_nmi, expected_count, nmi_tol, count_tol):
    """NMI und Community-Anzahl auf den Benchmark-Datensätzen."""
    path = Path(DATASETS) / name
    if not path.is_file():
        pytest.skip(f"{name} nicht vorhanden")
    report = load_graph(path)
    labeling = report.labeling
    sidecar = path.with_suffix(LABEL_SUFFIX)
    if not labeling.has_ground_truth and sidecar.is_file():
        labeling = parse_label_file(sidecar.read_text(encoding="utf-8"), report.graph)
    if not labeling.has_ground_truth:
        pytest.skip(f"{name} ohne Ground Truth")

    start = time.perf_counter()
    first = CoinService(CoinConfig()).run(report.graph)
    assert time.perf_counter() - start < 30
    second = CoinService(CoinConfig()).run(report.graph)
    assert first.to_json(report.graph, False) == second.to_json(report.graph, False)

    score = nmi(partition_from_labeling(labeling), partition_from_communities(first.communities, report.graph))
    assert abs(score - expected_nmi) <= nmi_tol
    assert abs(len(first.communities) - expected_count) <= count_tol
