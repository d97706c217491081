import json
import os
import xml.etree.ElementTree as ET

import pytest

from cascost.__main__ import main
from cascost.corpus import CORPUS_MODEL_FILE, corpus_path

from .conftest import MINIMAL

CORPUS_MODEL = corpus_path(CORPUS_MODEL_FILE)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_sample(capsys, sample_path):
    code, out, err = run(capsys, "check", sample_path)
    assert code == 0
    assert out == ""
    assert f"{sample_path}:11:39: warning: message 2: receiver 'A' lacks key 'Kbs'" in err
    assert "warning: function 'Dec' has no cost classification in model 'default'" in err

    code, _, err = run(capsys, "check", sample_path, "--model", CORPUS_MODEL)
    assert code == 0
    assert "in model 'corpus'" in err


def test_check_semantic_error(capsys, write_source):
    path = write_source(MINIMAL.replace("1. A -> B : A", "1. A -> B : Nx"))
    code, out, err = run(capsys, "check", path)
    assert code == 3
    assert out == ""
    assert f"{path}:5:13: error: undeclared identifier 'Nx'" in err


def test_check_syntax_error(capsys, write_source):
    path = write_source(MINIMAL.replace("1. A -> B : A", "1. A => B : A"))
    code, _, err = run(capsys, "check", path)
    assert code == 2
    assert f"{path}:5:6: error: unexpected character '='" in err


def test_check_goal_starting_with_verb(capsys, write_source):
    path = write_source(MINIMAL + "goal\nauthenticates A;\n")
    code, _, err = run(capsys, "check", path)
    assert code == 2
    assert f"{path}:10:1: error: expected goal role" in err


def test_check_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "check", str(tmp_path / "absent.cas"))
    assert code == 4
    assert "error:" in err


def test_check_wrong_suffix(capsys, write_source):
    code, _, _ = run(capsys, "check", write_source(MINIMAL, "proto.txt"))
    assert code == 1


def test_analyze_table(capsys):
    code, out, _ = run(capsys, "analyze", corpus_path("wmf.cas"))
    assert code == 0
    assert "Protocol: Wide Mouthed Frog" in out
    assert "Total computation (ms): 0.0184" in out
    assert out.endswith("Communication: 2\n")


def test_analyze_roles(capsys):
    code, out, _ = run(capsys, "analyze", corpus_path("wmf.cas"), "--roles")
    assert code == 0
    assert out.splitlines()[-5].split() == ["Role", "Th", "Pm", "Pe", "Pd", "Se", "Sd"]


def test_analyze_json_is_deterministic(capsys):
    argv = ["analyze", corpus_path("lske.cas"), "--model", CORPUS_MODEL, "--format", "json"]
    code, first, err = run(capsys, *argv)
    assert code == 0
    _, second, _ = run(capsys, *argv)
    assert first == second
    data = json.loads(first)
    assert data["counts"] == {"Th": 8, "Pm": 2, "Pe": 2, "Pd": 2, "Se": 0, "Sd": 0}
    assert data["computation_ms"] == pytest.approx(19.8704)
    assert data["created_at"] == "2023-11-14T22:13:20Z"
    assert data["source_digest"].startswith("sha256:")


def test_analyze_csv(capsys):
    code, out, _ = run(capsys, "analyze", corpus_path("nspk.cas"), "--format", "csv")
    assert code == 0
    assert out.splitlines()[1] == "Needham Schroeder,0,0,3,3,0,0,23.1,3"


def test_warnings_stay_off_stdout(capsys, sample_path):
    code, out, _ = run(capsys, "analyze", sample_path, "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["unclassified_calls"] == {"Dec": 1}
    assert data["warnings"]


def test_analyze_bad_model(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"name": "bad", "unit_cost_ms": {"Se": -1}}')
    code, out, err = run(capsys, "analyze", corpus_path("wmf.cas"), "--model", str(path))
    assert code == 1
    assert out == ""
    assert "Se" in err


def test_store_and_compare(capsys, store_dir, tmp_path):
    for filename in ("wmf.cas", "smak_iov.cas", "lske.cas"):
        code, _, _ = run(
            capsys, "analyze", corpus_path(filename), "--model", CORPUS_MODEL, "--store", store_dir
        )
        assert code == 0
    assert sorted(os.listdir(store_dir)) == [
        "lske.result.json",
        "smak-iov.result.json",
        "wide-mouthed-frog.result.json",
    ]

    chart = str(tmp_path / "cmp.svg")
    code, out, _ = run(
        capsys, "compare", "SMAK-IOV", "Wide Mouthed Frog", "LSKE", "--store", store_dir,
        "--chart", chart,
    )
    assert code == 0
    assert "Cheapest computation first: Wide Mouthed Frog < LSKE < SMAK-IOV" in out
    assert ET.parse(chart).getroot().tag == "{http://www.w3.org/2000/svg}svg"

    code, out, _ = run(capsys, "compare", "LSKE", "--store", store_dir, "--format", "csv")
    assert code == 0
    assert out.splitlines()[1] == "LSKE,8,2,2,2,0,0,19.8704,3"


def test_compare_missing_names(capsys, store_dir):
    run(capsys, "analyze", corpus_path("wmf.cas"), "--store", store_dir)
    code, out, err = run(capsys, "compare", "Wide Mouthed Frog", "Kerberos", "TLS", "--store", store_dir)
    assert code == 5
    assert out == ""
    assert "'Kerberos'" in err and "'TLS'" in err


def test_compare_store_from_environment(capsys, store_dir, monkeypatch):
    run(capsys, "analyze", corpus_path("wmf.cas"), "--store", store_dir)
    monkeypatch.setenv("CASCOST_STORE", store_dir)
    code, out, _ = run(capsys, "compare", "Wide Mouthed Frog")
    assert code == 0
    assert "Wide Mouthed Frog" in out


def test_compare_without_store(capsys):
    code, _, err = run(capsys, "compare", "LSKE")
    assert code == 1
    assert "CASCOST_STORE" in err


def test_chart(capsys, tmp_path):
    out_path = tmp_path / "lske.svg"
    argv = ["chart", corpus_path("lske.cas"), "--out", str(out_path), "--model", CORPUS_MODEL]
    code, out, _ = run(capsys, *argv, "--mode", "costs")
    assert code == 0
    assert out == ""
    first = out_path.read_bytes()
    run(capsys, *argv, "--mode", "costs")
    assert out_path.read_bytes() == first
    assert b">7.7</text>" in first


def test_chart_stored_result(capsys, store_dir, tmp_path):
    run(capsys, "analyze", corpus_path("otway_rees.cas"), "--store", store_dir)
    out_path = tmp_path / "or.svg"
    code, _, _ = run(capsys, "chart", "Otway-Rees", "--out", str(out_path), "--store", store_dir)
    assert code == 0
    assert out_path.exists()


def test_chart_requires_out(capsys):
    code, _, err = run(capsys, "chart", corpus_path("lske.cas"))
    assert code == 1
    assert "--out" in err


def test_model_export(capsys, tmp_path):
    out_path = tmp_path / "model.json"
    code, out, _ = run(capsys, "model", "--out", str(out_path))
    assert code == 0
    assert "Model: default" in out
    assert json.loads(out_path.read_text())["unit_cost_ms"]["Pe"] == 3.85

    code, _, err = run(capsys, "model", "--out", str(tmp_path))
    assert code == 4
    assert "error:" in err


def test_corpus_command(capsys, store_dir):
    code, out, _ = run(capsys, "corpus", "--store", store_dir, "--format", "csv")
    assert code == 0
    rows = [line.split(",") for line in out.splitlines()[1:]]
    assert [(row[0], row[-2], row[-1]) for row in rows] == [
        ("Wide Mouthed Frog", "0.0184", "2"),
        ("Needham Schroeder", "23.1", "3"),
        ("Otway-Rees", "0.046", "4"),
        ("SMAK-IOV", "69.3", "9"),
        ("CE-SKE", "23.1161", "3"),
        ("LSKE", "19.8704", "3"),
    ]
    assert len(os.listdir(store_dir)) == 6


def test_usage_errors(capsys):
    assert run(capsys, "frobnicate")[0] == 1
    assert run(capsys)[0] == 1
    assert run(capsys, "analyze", "x.cas", "--format", "xml")[0] == 1


def test_help(capsys):
    code, out, _ = run(capsys, "--help")
    assert code == 0
    assert "analyze" in out
