import json
import subprocess
import sys

import jsonschema
import pytest

from condminer.cli import PipelineConfig, UsageError, load_schema, main
from condminer.corpus import load_corpus
from condminer.synthetic import generate_synthetic


@pytest.fixture
def corpus20(tmp_path):
    path = tmp_path / "s20.jsonl"
    assert main(["generate-synthetic", "--size", "20", "--seed", "0", "--out", str(path)]) == 0
    return path


@pytest.fixture(scope="module")
def corpus200(tmp_path_factory):
    path = tmp_path_factory.mktemp("c") / "s200.jsonl"
    assert main(["generate-synthetic", "--size", "200", "--seed", "0", "--out", str(path)]) == 0
    return path


def test_generate_matches_library(corpus20):
    assert load_corpus(corpus20).sentences == generate_synthetic(20, 0).dataset.sentences


def test_generate_tsv(tmp_path):
    path = tmp_path / "s.tsv"
    assert main(["generate-synthetic", "--size", "12", "--format", "tsv", "--out", str(path)]) == 0
    assert len(load_corpus(path)) == 12


def test_candidates_table(corpus20, capsys):
    assert main(["candidates", "--input", str(corpus20)]) == 0
    last = capsys.readouterr().out.splitlines()[-1].split()
    assert last == ["Total", "13", "7"]


def test_candidates_json_and_matches(corpus20, tmp_path, capsys):
    matches = tmp_path / "m.jsonl"
    assert main(["candidates", "--input", str(corpus20), "--emit", "json", "--matches", str(matches)]) == 0
    doc = json.loads(capsys.readouterr().out)
    jsonschema.validate(doc, load_schema("candidates_report"))
    assert doc["summary"]["total_kept"] == 13 and doc["summary"]["total_removed"] == 7
    lines = [json.loads(l) for l in matches.read_text().splitlines()]
    assert lines == doc["matches"] and lines
    for line in lines:
        jsonschema.validate(line, load_schema("candidate_match"))
    assert {l["sentence_id"] for l in lines} <= {s.id for s in load_corpus(corpus20)}


def test_candidates_empty_corpus(tmp_path, capsys):
    empty = tmp_path / "empty.jsonl"
    empty.write_text("")
    assert main(["candidates", "--input", str(empty), "--emit", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["summary"]["total_kept"] == 0 and doc["summary"]["total_removed"] == 0


def test_malformed_parse_exits_1_with_row_id(tmp_path, capsys):
    bad = tmp_path / "bad.jsonl"
    bad.write_text(json.dumps({"id": "row-17", "guideline": "g", "text": "t", "parse": "(S (NN x)", "label": "NC"}) + "\n")
    assert main(["candidates", "--input", str(bad)]) == 1
    assert "row-17" in capsys.readouterr().err


def test_featurize(corpus20, tmp_path, capsys):
    vocab = tmp_path / "vocab.json"
    assert main(["featurize", "--input", str(corpus20), "--vocab-out", str(vocab)]) == 0
    lines = [json.loads(l) for l in capsys.readouterr().out.splitlines()]
    assert len(lines) == 20
    for line in lines:
        jsonschema.validate(line, load_schema("features"))
    tokens = json.loads(vocab.read_text())
    jsonschema.validate(tokens, load_schema("vocabulary"))
    assert set(tokens) == {t for l in lines for t in l["tokens"]}
    assert main(["featurize", "--input", str(corpus20), "--candidates-only"]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 13


def test_stats(corpus20, capsys, tmp_path):
    assert main(["stats", "--input", str(corpus20)]) == 0
    rows = capsys.readouterr().out.splitlines()
    assert [r.split()[0] for r in rows[1:]] == ["asthma", "hypertension", "rhinosinusitis", "Total"]
    assert rows[-1].split()[-1] == "20"
    assert main(["stats", "--input", str(corpus20), "--emit", "json"]) == 0
    jsonschema.validate(json.loads(capsys.readouterr().out), load_schema("stats"))
    empty = tmp_path / "e.jsonl"
    empty.write_text("\n")
    assert main(["stats", "--input", str(empty)]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 1


def test_stats_asthma_row_277(tmp_path, capsys):
    path = tmp_path / "asthma.jsonl"
    rows, i = [], 0
    for label, n in {"CA": 38, "CC": 7, "ACTION": 8, "NC": 224}.items():
        for _ in range(n):
            rows.append({"id": f"a{i}", "guideline": "Asthma", "text": "", "parse": "(S (NN x))", "label": label})
            i += 1
    path.write_text("".join(json.dumps(r) + "\n" for r in rows))
    assert main(["stats", "--input", str(path)]) == 0
    assert capsys.readouterr().out.splitlines()[1].split() == ["Asthma", "38", "7", "8", "224", "277"]


def test_evaluate_zeror_zeros(corpus200, capsys):
    assert main(["evaluate", "--input", str(corpus200), "--classifier", "zeror", "--folds", "10", "--seed", "7"]) == 0
    row = capsys.readouterr().out.splitlines()[2].split()
    assert row[:6] == ["ZeroR", "|", "0.000", "|", "0.000", "|"] and row[6] == "0.000"


def test_evaluate_rf_deterministic_files(corpus200, tmp_path, capsys):
    outs = []
    for name in ("a.json", "b.json"):
        out = tmp_path / name
        assert main(["evaluate", "--input", str(corpus200), "--classifier", "rf", "--seed", "7",
                     "--trees", "20", "--emit", "json", "--out", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
    doc = json.loads(outs[0])
    jsonschema.validate(doc, load_schema("report"))
    [report] = doc["reports"]
    assert report["per_class"]["CA"]["f_measure"] == 1.0
    assert "RandomForest" in capsys.readouterr().out


def test_evaluate_all_classifiers(corpus200, capsys):
    assert main(["evaluate", "--input", str(corpus200), "--classifier", "all", "--trees", "10", "--title", "Synthetic"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert [l.split()[0] for l in lines[2:]] == ["ZeroR", "NaiveBayes", "J48", "RandomForest"]


def test_train_writes_model(corpus20, tmp_path, capsys):
    out = tmp_path / "model.json"
    assert main(["train", "--input", str(corpus20), "--classifier", "c45", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    jsonschema.validate(doc, load_schema("model"))
    assert doc["variant"] == "C45Tree" and len(doc["vocabulary"]) == doc["n_features"]
    assert main(["train", "--input", str(corpus20), "--classifier", "nb,rf"]) == 1


@pytest.mark.parametrize("argv", [
    ["evaluate", "--classifier", "svm", "--input", "x"],
    ["evaluate", "--folds", "1", "--input", "x"],
    ["stats", "--seed", "-1", "--input", "x"],
    ["stats", "--seed", str(2**64), "--input", "x"],
    ["stats"],
    ["stats", "--input", "/nonexistent/file.jsonl"],
    ["nosuchcommand"],
])
def test_config_errors_exit_1(argv):
    assert main(argv) == 1


def test_evaluate_empty_corpus_exits_1(tmp_path):
    empty = tmp_path / "e.jsonl"
    empty.write_text("")
    assert main(["evaluate", "--input", str(empty)]) == 1


def test_internal_error_exits_2(monkeypatch, corpus20):
    import condminer.cli as cli
    from condminer.errors import InvariantViolation

    def boom(*a, **k):
        raise InvariantViolation("synthetic failure")

    monkeypatch.setattr(cli, "filter_candidates", boom)
    assert main(["candidates", "--input", str(corpus20)]) == 2


def test_pipeline_config_validation():
    with pytest.raises(UsageError):
        PipelineConfig(classifiers=("svm",))
    with pytest.raises(UsageError):
        PipelineConfig(seed=2**64)
    assert PipelineConfig(seed=2**64 - 1).seed == 2**64 - 1


def test_console_script_and_log_env(corpus20):
    proc = subprocess.run([sys.executable, "-m", "condminer.cli", "stats", "--input", str(corpus20)],
                          capture_output=True, text=True, env={"COND_MINER_LOG": "debug", "PATH": ""})
    assert proc.returncode == 0 and proc.stdout.startswith("Guideline")
    proc = subprocess.run([sys.executable, "-m", "condminer.cli", "stats", "--input", "/nope"],
                          capture_output=True, text=True)
    assert proc.returncode == 1 and "error" in proc.stderr
