"""
Kommandozeilen-Modul.
Stellt die Befehle detect, eval, concepts, stability und bench bereit.

Exit-Codes: 0 Erfolg, 2 Aufruf-/Ein-/Ausgabe-/Parserfehler,
3 Fehler in der Pipeline.
"""

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

import pandas as pd

from src import __version__
from src.config.settings import Settings
from src.config.logging_config import get_logger, log_error_with_context, setup_logging
from src.backend.interfaces.base import CoinError, EvaluationError, GraphError
from src.backend.models.community import CoinConfig
from src.backend.models.graph import Graph
from src.backend.services.bench.bench_runner import BenchError, run_bench, write_results
from src.backend.services.coin.coin_service import CoinService
from src.backend.services.evaluation.nmi import (
    canonical_partition,
    confusion_matrix,
    nmi,
    partition_from_communities,
    partition_from_labeling,
    partition_from_labels,
)
from src.backend.services.fca.concept_enumerator import (
    enumerate_concepts,
    fast_identical_concepts,
)
from src.backend.services.fca.context_builder import build_one_mode_context
from src.backend.services.graph.exporters import export_dot
from src.backend.services.graph.parsers import (
    ParseReport,
    load_graph,
    parse_gml_with_report,
    parse_label_file,
    parse_label_mapping,
)
from src.backend.services.interestingness.stability_service import score_concept

# Logger für dieses Modul initialisieren
logger = get_logger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PIPELINE = 3


def _add_detection_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=None, help="Seed der Stichprobe (Fallback: COIN_SEED)")
    parser.add_argument("--budget", type=int, default=None, help="Stichprobenbudget |S| (>= 64)")
    parser.add_argument("--exact-threshold", type=int, default=None, help="Maximale Extent-Größe für exakte Stabilität")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coin",
        description="Community-Erkennung über identische formale Begriffe (COIN)"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", type=Path, default=Path("config.yaml"), help="YAML-Konfigurationsdatei")
    parser.add_argument("--log-level", default=None, help="Log-Level der Konsole")
    parser.add_argument("--log-dir", default=None, help="Verzeichnis für Log-Dateien")
    sub = parser.add_subparsers(dest="command", required=True)

    detect = sub.add_parser("detect", help="Communities erkennen und als JSON ausgeben")
    detect.add_argument("graph", type=Path)
    detect.add_argument("--format", choices=["edgelist", "gml", "json"], default=None)
    _add_detection_options(detect)
    detect.add_argument("--no-backfill", action="store_true", help="Keine Singleton-Communities ergänzen")
    detect.add_argument("--max-passes", type=int, default=None, help="Limit der Perkolationsdurchläufe")
    detect.add_argument("--merge-sizes", choices=["current", "original"], default=None)
    detect.add_argument("--overlap-policy", choices=["resolve", "strict"], default=None)
    detect.add_argument("-o", "--output", type=Path, default=None, help="Ziel-JSON (Standard: stdout)")
    detect.add_argument("--dot", type=Path, default=None, help="DOT-Export mit eingefärbten Communities")
    detect.add_argument("--labels", type=Path, default=None, help="Ground-Truth-Datei '<label> <community>'")
    detect.add_argument("--no-timings", action="store_true", help="Laufzeiten nicht ausgeben (byte-identische Ausgabe)")

    evaluate = sub.add_parser("eval", help="Vorhersage gegen Ground Truth mit NMI bewerten")
    evaluate.add_argument("prediction", type=Path, help="JSON-Ausgabe von detect")
    truth = evaluate.add_mutually_exclusive_group(required=True)
    truth.add_argument("--truth-gml", type=Path, help="GML mit value-Attribut je Knoten")
    truth.add_argument("--truth-labels", type=Path, help="Datei '<label> <community>'")

    concepts = sub.add_parser("concepts", help="Identische Begriffe auflisten")
    concepts.add_argument("graph", type=Path)
    concepts.add_argument("--format", choices=["edgelist", "gml", "json"], default=None)
    concepts.add_argument("--full-lattice", action="store_true", help="Alle Begriffe des Verbands ausgeben")

    stability = sub.add_parser("stability", help="Stabilität je identischem Begriff als CSV")
    stability.add_argument("graph", type=Path)
    stability.add_argument("--format", choices=["edgelist", "gml", "json"], default=None)
    _add_detection_options(stability)

    bench = sub.add_parser("bench", help="COIN auf Benchmark-Datensätzen wiederholt ausführen")
    bench.add_argument("dataset_dir", type=Path)
    bench.add_argument("--repeats", type=int, default=None)
    _add_detection_options(bench)
    bench.add_argument("-o", "--output", type=Path, default=None, help="Ziel-CSV")
    return parser


def _detection_config(settings: Settings, args: argparse.Namespace, **extra: Any) -> CoinConfig:
    return settings.detection_config(
        seed=args.seed,
        sampling_budget=args.budget,
        exact_threshold=args.exact_threshold,
        **extra
    )


def _write(text: str, target: Optional[Path]) -> None:
    if target is None:
        sys.stdout.write(text)
    else:
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text, encoding="utf-8")
        logger.info(f"Ausgabe geschrieben: {target}")


def _members(graph: Graph, mask: int) -> str:
    return " ".join(str(label) for label in graph.labels_of(mask))


def cmd_detect(args: argparse.Namespace, settings: Settings) -> int:
    report = load_graph(args.graph, args.format)
    graph = report.graph
    config = _detection_config(
        settings,
        args,
        singleton_backfill=False if args.no_backfill else None,
        max_passes=args.max_passes,
        merge_sizes=args.merge_sizes,
        overlap_policy=args.overlap_policy
    )
    with CoinService(config) as service:
        run = service.run(graph)
    _write(run.to_json(graph, include_timings=not args.no_timings), args.output)

    if args.dot is not None:
        _write(export_dot(graph, run.communities, name=args.graph.stem), args.dot)

    labeling = report.labeling
    if args.labels is not None:
        labeling = parse_label_file(args.labels.read_text(encoding="utf-8"), graph)
    if labeling.has_ground_truth:
        score = nmi(partition_from_labeling(labeling), partition_from_communities(run.communities, graph))
        logger.info(f"NMI gegen Ground Truth: {score:.3f}", extra={"nmi": score})
    return EXIT_OK


def _prediction_blocks(path: Path) -> List[List[Any]]:
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
        return [list(c["members"]) for c in payload["communities"]]
    except (json.JSONDecodeError, KeyError, TypeError) as e:
        raise GraphError(f"Ungültige Vorhersagedatei {path}: {e}", {"path": str(path)})


def cmd_eval(args: argparse.Namespace, settings: Settings) -> int:
    blocks = _prediction_blocks(args.prediction)
    if args.truth_gml is not None:
        report: ParseReport = parse_gml_with_report(args.truth_gml.read_text(encoding="utf-8"))
        if not report.labeling.has_ground_truth:
            raise GraphError(f"{args.truth_gml} enthält keine value-Attribute")
        truth = partition_from_labeling(report.labeling)
    else:
        truth = partition_from_labels(parse_label_mapping(args.truth_labels.read_text(encoding="utf-8")))

    pred = canonical_partition(blocks)
    matrix = confusion_matrix(truth, pred)
    result: Dict[str, Any] = {
        "nmi": nmi(truth, pred),
        "num_pred": len(pred),
        "num_truth": len(truth),
        "confusion": matrix.to_lists(),
    }
    _write(json.dumps(result, sort_keys=True) + "\n", None)
    return EXIT_OK


def cmd_concepts(args: argparse.Namespace, settings: Settings) -> int:
    graph = load_graph(args.graph, args.format).graph
    if args.full_lattice:
        context = build_one_mode_context(graph)
        lattice = enumerate_concepts(context, settings.concepts.object_limit)
        for concept in lattice.concepts:
            marker = "identical" if concept.is_identical else ""
            print(f"{{{_members(graph, concept.extent)}}}\t{{{_members(graph, concept.intent)}}}\t{marker}".rstrip())
        logger.info(f"{lattice.size} Begriffe im Verband")
        return EXIT_OK

    concepts = fast_identical_concepts(graph)
    for concept in concepts:
        print(f"{concept.size}\t{_members(graph, concept.members)}")
    logger.info(f"{len(concepts)} identische Begriffe")
    return EXIT_OK


def cmd_stability(args: argparse.Namespace, settings: Settings) -> int:
    graph = load_graph(args.graph, args.format).graph
    config = _detection_config(settings, args)
    context = build_one_mode_context(graph)
    rows = []
    for concept in fast_identical_concepts(graph):
        value = score_concept(context, concept, graph, config).stability
        rows.append({
            "concept_members": _members(graph, concept.members),
            "size": concept.size,
            "method": value.method,
            "value": value.value,
            "numerator_or_samples": value.numerator if value.is_exact else value.samples,
            "error_bound": value.error_bound if not value.is_exact else 0.0,
        })
    table = pd.DataFrame(
        rows,
        columns=["concept_members", "size", "method", "value", "numerator_or_samples", "error_bound"]
    )
    sys.stdout.write(table.to_csv(index=False))
    return EXIT_OK


def cmd_bench(args: argparse.Namespace, settings: Settings) -> int:
    config = _detection_config(settings, args)
    table = run_bench(args.dataset_dir, config, args.repeats or settings.bench.repeats, __version__)
    output = args.output or Path(settings.bench.output_csv)
    json_path = write_results(table, output, config)
    columns = ["dataset", "nodes", "edges", "communities", "truth_communities", "nmi", "tau_ms"]
    print(table[columns].to_string(index=False, float_format=lambda x: f"{x:.3f}"))
    logger.info(f"Ergebnisse geschrieben: {output}, {json_path}")
    return EXIT_OK


COMMANDS: Dict[str, Callable[[argparse.Namespace, Settings], int]] = {
    "detect": cmd_detect,
    "eval": cmd_eval,
    "concepts": cmd_concepts,
    "stability": cmd_stability,
    "bench": cmd_bench,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Einstiegspunkt der Kommandozeile."""
    args = build_parser().parse_args(argv)
    settings = Settings.from_yaml(args.config)
    log = settings.logging
    setup_logging(
        debug=settings.debug or log.debug_mode,
        log_dir=args.log_dir or log.log_dir or None,
        enable_performance_logging=log.enable_performance_logging,
        log_level=args.log_level or log.log_level,
        colored_console=log.colored_console,
        max_file_size=log.max_file_size,
        backup_count=log.backup_count
    )

    try:
        return COMMANDS[args.command](args, settings)
    except (OSError, ValueError, GraphError, EvaluationError, BenchError) as e:
        log_error_with_context(logger, e, {"command": args.command})
        print(f"Fehler: {e}", file=sys.stderr)
        return EXIT_USAGE
    except CoinError as e:
        log_error_with_context(logger, e, {"command": args.command})
        print(f"Fehler: {e}", file=sys.stderr)
        return EXIT_PIPELINE


if __name__ == "__main__":
    sys.exit(main())
