"""
Integrationstests für die Kommandozeile.
Jeder Test ruft main() direkt auf und prüft Ausgabe und Exit-Code.
"""

import io
import itertools
import json

import pandas as pd
import pytest

from src.cli.main import EXIT_OK, EXIT_PIPELINE, EXIT_USAGE, main

pytestmark = pytest.mark.integration


@pytest.fixture
def run_cli(tmp_path, capsys):
    """Ruft die CLI mit einer nicht vorhandenen Konfigurationsdatei auf."""
    def _run(*argv):
        code = main(["--config", str(tmp_path / "keine.yaml"), *map(str, argv)])
        captured = capsys.readouterr()
        return code, captured.out
    return _run


@pytest.fixture
def big_clique_file(tmp_path):
    """K25 plus disjunktes Dreieck als Kantenliste."""
    lines = [f"{u} {v}" for u, v in itertools.combinations(range(25), 2)]
    lines += ["25 26", "26 27", "25 27"]
    path = tmp_path / "k25.edgelist"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def test_detect_toy(run_cli, fixtures_dir):
    """Test: detect liefert vier Communities als JSON."""
    code, out = run_cli("detect", fixtures_dir / "toy.edgelist")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["algorithm"] == "coin"
    assert len(payload["communities"]) == 4
    assert payload["coverage"] == 1.0
    assert set(payload["timings_ms"]) == {"stage1", "stage2", "total"}


def test_detect_is_byte_identical_without_timings(run_cli, fixtures_dir):
    """Test: zwei Läufe mit --no-timings liefern dieselben Bytes."""
    _, first = run_cli("detect", fixtures_dir / "toy.edgelist", "--no-timings", "--seed", "5")
    _, second = run_cli("detect", fixtures_dir / "toy.edgelist", "--no-timings", "--seed", "5")
    assert first == second
    assert json.loads(first)["config"]["seed"] == 5


def test_detect_writes_output_and_dot(run_cli, fixtures_dir, tmp_path):
    """Test: -o und --dot schreiben Dateien statt stdout."""
    target = tmp_path / "out" / "toy.json"
    dot = tmp_path / "toy.dot"
    code, out = run_cli(
        "detect", fixtures_dir / "toy.edgelist",
        "-o", target, "--dot", dot, "--labels", fixtures_dir / "toy_truth.txt"
    )
    assert code == EXIT_OK
    assert out == ""
    assert len(json.loads(target.read_text())["communities"]) == 4
    assert dot.read_text().startswith('graph "toy" {')


def test_detect_no_backfill(run_cli, tmp_path):
    """Test: ohne Backfill bleibt der mittlere Pfadknoten unabgedeckt."""
    path = tmp_path / "path.edgelist"
    path.write_text("1 2\n2 3\n3 4\n4 5\n", encoding="utf-8")
    _, out = run_cli("detect", path, "--no-backfill", "--no-timings")
    assert json.loads(out)["coverage"] == pytest.approx(0.8)


def test_detect_strict_overlap_is_pipeline_error(run_cli, tmp_path):
    """Test: Überlappung bei --overlap-policy strict ergibt Exit-Code 3."""
    path = tmp_path / "bowtie.edgelist"
    path.write_text("1 2\n1 3\n2 3\n3 4\n3 5\n4 5\n", encoding="utf-8")
    code, _ = run_cli("detect", path, "--overlap-policy", "strict")
    assert code == EXIT_PIPELINE


@pytest.mark.parametrize("name, content", [
    ("fehlt.edgelist", None),
    ("kaputt.edgelist", "1 2 3\n"),
    ("kaputt.gml", "graph [ node [ id 0 ]"),
])
def test_detect_input_errors(run_cli, tmp_path, name, content):
    """Test: fehlende oder fehlerhafte Eingaben ergeben Exit-Code 2."""
    path = tmp_path / name
    if content is not None:
        path.write_text(content, encoding="utf-8")
    code, _ = run_cli("detect", path)
    assert code == EXIT_USAGE


def test_detect_invalid_budget(run_cli, fixtures_dir):
    """Test: Budget unter 64 wird als Aufruffehler abgelehnt."""
    code, _ = run_cli("detect", fixtures_dir / "toy.edgelist", "--budget", "10")
    assert code == EXIT_USAGE


def test_eval_toy(run_cli, fixtures_dir, tmp_path):
    """Test: eval bewertet die Vorhersage des Beispielnetzes mit NMI = 1."""
    prediction = tmp_path / "toy.json"
    run_cli("detect", fixtures_dir / "toy.edgelist", "-o", prediction)
    code, out = run_cli("eval", prediction, "--truth-labels", fixtures_dir / "toy_truth.txt")
    assert code == EXIT_OK
    result = json.loads(out)
    assert result["nmi"] == pytest.approx(1.0)
    assert result["num_pred"] == result["num_truth"] == 4
    assert sum(map(sum, result["confusion"])) == 15


def test_eval_truth_gml(run_cli, fixtures_dir, tmp_path):
    """Test: Ground Truth aus einer GML-Datei."""
    prediction = tmp_path / "minimal.json"
    run_cli("detect", fixtures_dir / "minimal.gml", "-o", prediction)
    code, out = run_cli("eval", prediction, "--truth-gml", fixtures_dir / "minimal.gml")
    assert code == EXIT_OK
    assert json.loads(out)["nmi"] == pytest.approx(1.0)


def test_eval_universe_mismatch(run_cli, fixtures_dir, tmp_path):
    """Test: Vorhersage über andere Knoten ergibt Exit-Code 2."""
    prediction = tmp_path / "star.json"
    run_cli("detect", fixtures_dir / "star.edgelist", "-o", prediction)
    code, _ = run_cli("eval", prediction, "--truth-labels", fixtures_dir / "toy_truth.txt")
    assert code == EXIT_USAGE


def test_eval_invalid_prediction(run_cli, fixtures_dir, tmp_path):
    """Test: unlesbare Vorhersagedatei ergibt Exit-Code 2."""
    prediction = tmp_path / "kaputt.json"
    prediction.write_text("{}", encoding="utf-8")
    code, _ = run_cli("eval", prediction, "--truth-labels", fixtures_dir / "toy_truth.txt")
    assert code == EXIT_USAGE


def test_concepts(run_cli, fixtures_dir):
    """Test: acht identische Begriffe, im Verband mit Markierung."""
    code, out = run_cli("concepts", fixtures_dir / "toy.edgelist")
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert len(lines) == 8
    assert lines[0] == "4\t1 2 3 4"

    code, out = run_cli("concepts", fixtures_dir / "toy.edgelist", "--full-lattice")
    assert code == EXIT_OK
    assert "{5 6 7}\t{5 6 7}\tidentical" in out.splitlines()
    assert sum(1 for line in out.splitlines() if line.endswith("identical")) == 8


def test_stability_csv(run_cli, fixtures_dir):
    """Test: CSV mit exakten Werten für das Beispielnetz."""
    code, out = run_cli("stability", fixtures_dir / "toy.edgelist")
    assert code == EXIT_OK
    table = pd.read_csv(io.StringIO(out), dtype={"concept_members": str})
    assert list(table.columns) == [
        "concept_members", "size", "method", "value", "numerator_or_samples", "error_bound"
    ]
    values = dict(zip(table["concept_members"], table["value"]))
    assert values["13 14 15"] == pytest.approx(0.875)
    assert values["4 5"] == pytest.approx(0.25)
    assert (table["method"] == "exact").all()


def test_stability_sampled(run_cli, big_clique_file):
    """Test: große Extents werden mit dem angegebenen Budget geschätzt."""
    code, out = run_cli("stability", big_clique_file, "--budget", "64")
    assert code == EXIT_OK
    table = pd.read_csv(io.StringIO(out))
    big = table[table["size"] == 25].iloc[0]
    assert big["method"] == "sampled"
    assert big["numerator_or_samples"] == 64
    assert big["error_bound"] > 0


def test_bench(run_cli, fixtures_dir, tmp_path):
    """Test: bench schreibt CSV und JSON für die gefundenen Datensätze."""
    datasets = tmp_path / "datasets"
    datasets.mkdir()
    (datasets / "minimal.gml").write_text((fixtures_dir / "minimal.gml").read_text())
    output = tmp_path / "results.csv"
    code, out = run_cli("bench", datasets, "--repeats", "1", "-o", output)
    assert code == EXIT_OK
    assert "minimal" in out
    table = pd.read_csv(output)
    assert table.loc[0, "nmi"] == pytest.approx(1.0)
    assert table.loc[0, "communities"] == 2
    assert json.loads(output.with_suffix(".json").read_text())["config"]["sampling_budget"] == 4096


def test_bench_empty_directory(run_cli, tmp_path):
    """Test: leeres Datensatzverzeichnis ergibt Exit-Code 2."""
    empty = tmp_path / "leer"
    empty.mkdir()
    code, _ = run_cli("bench", empty, "--repeats", "1")
    assert code == EXIT_USAGE
