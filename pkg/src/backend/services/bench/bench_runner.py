"""
Benchmark-Modul.
Führt COIN wiederholt auf den bereitgestellten Datensätzen aus und fasst
mittlere Laufzeit, NMI und Community-Anzahl in einer Tabelle zusammen.
"""

import json
import statistics
from pathlib import Path
from typing import List, Optional

import pandas as pd
from pydantic import BaseModel, Field
from tqdm import tqdm

from src.config.settings import settings
from src.config.logging_config import get_logger, log_error_with_context
from src.backend.interfaces.base import CoinError
from src.backend.models.community import CoinConfig
from src.backend.services.coin.coin_service import CoinService, coin_complexity_report
from src.backend.services.evaluation.nmi import (
    nmi,
    partition_from_communities,
    partition_from_labeling,
)
from src.backend.services.graph.parsers import GRAPH_SUFFIXES, load_graph, parse_label_file

# Logger für dieses Modul initialisieren
logger = get_logger(__name__)

# Ground-Truth-Sidecar neben dem Datensatz (karate.gml -> karate.labels)
LABEL_SUFFIX = ".labels"


class BenchError(CoinError):
    """Keine auswertbaren Datensätze gefunden."""
    pass


class RunReport(BaseModel):
    """Zusammenfassung eines Datensatzes über alle Wiederholungen."""

    dataset: str
    nodes: int = Field(..., ge=0)
    edges: int = Field(..., ge=0)
    identical_concepts: int = Field(..., ge=0)
    communities: int = Field(..., ge=0)
    nmi: Optional[float] = None
    truth_communities: Optional[int] = None
    repeats: int = Field(..., ge=1)
    tau_ms: float = Field(..., ge=0.0, description="Mittlere Gesamtlaufzeit")
    tau_std_ms: float = Field(default=0.0, ge=0.0)
    stage1_ms: float = Field(default=0.0, ge=0.0)
    stage2_ms: float = Field(default=0.0, ge=0.0)
    config: CoinConfig
    version: str


def discover_datasets(directory: Path, names: Optional[List[str]] = None) -> List[Path]:
    """
    Datensätze im Verzeichnis: zuerst die konfigurierten Namen (sofern
    vorhanden), sonst alle Dateien mit unterstützter Endung.
    """
    if not directory.is_dir():
        raise BenchError(f"Datensatzverzeichnis nicht gefunden: {directory}", {"path": str(directory)})
    names = names if names is not None else settings.bench.datasets
    found = [directory / name for name in names if (directory / name).is_file()]
    if not found:
        found = sorted(p for p in directory.iterdir() if p.suffix.lower() in GRAPH_SUFFIXES)
    if not found:
        raise BenchError(f"Keine Datensätze in {directory}", {"path": str(directory)})
    return found


def bench_dataset(path: Path, config: CoinConfig, repeats: int, version: str) -> RunReport:
    """Führt COIN repeats-mal auf einem Datensatz aus."""
    report = load_graph(path)
    graph = report.graph
    durations: List[float] = []
    stage1: List[float] = []
    stage2: List[float] = []
    run = None
    with CoinService(config) as service:
        for _ in tqdm(range(repeats), desc=path.stem, unit="run", leave=False):
            run = service.run(graph)
            durations.append(run.timings.total)
            stage1.append(run.timings.stage1)
            stage2.append(run.timings.stage2)

    complexity = coin_complexity_report(run)
    labeling = report.labeling
    sidecar = path.with_suffix(LABEL_SUFFIX)
    if not labeling.has_ground_truth and sidecar.is_file():
        labeling = parse_label_file(sidecar.read_text(encoding="utf-8"), graph)

    score = None
    truth_count = None
    if labeling.has_ground_truth:
        score = nmi(
            partition_from_labeling(labeling),
            partition_from_communities(run.communities, graph)
        )
        truth_count = labeling.num_communities

    return RunReport(
        dataset=path.stem,
        nodes=graph.num_nodes,
        edges=graph.num_edges,
        identical_concepts=complexity.num_identical_concepts,
        communities=len(run.communities),
        nmi=score,
        truth_communities=truth_count,
        repeats=repeats,
        tau_ms=statistics.fmean(durations),
        tau_std_ms=statistics.pstdev(durations),
        stage1_ms=statistics.fmean(stage1),
        stage2_ms=statistics.fmean(stage2),
        config=config,
        version=version
    )


def run_bench(
    directory: Path,
    config: CoinConfig,
    repeats: Optional[int] = None,
    version: str = "",
    names: Optional[List[str]] = None
) -> pd.DataFrame:
    """
    Benchmark über alle gefundenen Datensätze.

    Fehlerhafte Datensätze werden protokolliert und übersprungen.

    Returns:
        Tabelle mit einer Zeile je Datensatz

    Raises:
        BenchError: Wenn kein Datensatz ausgewertet werden konnte
    """
    repeats = repeats or settings.bench.repeats
    rows = []
    for path in discover_datasets(directory, names):
        try:
            rows.append(bench_dataset(path, config, repeats, version))
        except CoinError as e:
            log_error_with_context(logger, e, {"dataset": str(path)}, "Datensatz übersprungen")
        else:
            logger.info(
                "Datensatz ausgewertet",
                extra={"dataset": path.stem, "nmi": rows[-1].nmi, "communities": rows[-1].communities}
            )
    if not rows:
        raise BenchError("Kein Datensatz konnte ausgewertet werden", {"path": str(directory)})
    return pd.DataFrame([row.model_dump(exclude={"config"}) for row in rows])


def write_results(table: pd.DataFrame, csv_path: Path, config: CoinConfig) -> Path:
    """Schreibt CSV und daneben eine JSON-Datei mit Konfigurationsecho."""
    csv_path.parent.mkdir(parents=True, exist_ok=True)
    table.to_csv(csv_path, index=False)
    json_path = csv_path.with_suffix(".json")
    payload = {"config": config.model_dump(), "results": json.loads(table.to_json(orient="records"))}
    json_path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return json_path
