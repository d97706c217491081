import json
import os
from dataclasses import replace

import pytest

from cascost.analyzer import analyze
from cascost.errors import EmptySet, NotFound, SlugCollision, StoreError
from cascost.model import default_model
from cascost.store import (
    ComparisonSet,
    StoredResult,
    compare,
    from_dict,
    list_results,
    load_result,
    load_results,
    result_path,
    save_result,
    to_dict,
)
from cascost.utils import slugify

STAMP = "2023-11-14T22:13:20Z"


@pytest.fixture
def results(corpus_specs, model):
    return {name: analyze(spec, model) for name, spec in corpus_specs.items()}


def test_slugify():
    assert slugify("Wide Mouthed Frog") == "wide-mouthed-frog"
    assert slugify("CE-SKE") == "ce-ske"
    assert slugify("  !!  ") == "protocol"


def test_save_and_load(results, store_dir):
    path = save_result(results["LSKE"], store_dir, source_path="lske.cas", source_digest="sha256:00")
    assert path == os.path.join(store_dir, "lske.result.json")
    stored = load_result(path)
    assert stored.result == results["LSKE"]
    assert stored.created_at == STAMP
    assert stored.source_path == "lske.cas"
    assert os.listdir(store_dir) == ["lske.result.json"]


def test_schema(results):
    data = to_dict(StoredResult(results["LSKE"], STAMP))
    assert data["counts"] == {"Th": 8, "Pm": 2, "Pe": 2, "Pd": 2, "Se": 0, "Sd": 0}
    assert data["communication"] == 3
    assert data["model_name"] == "corpus"
    assert data["model_digest"].startswith("sha256:")
    assert [entry["role"] for entry in data["per_role"]] == ["Fi", "Fj", "C"]
    assert from_dict(json.loads(json.dumps(data))).result == results["LSKE"]


def test_overwrite_same_protocol(results, store_dir):
    save_result(results["LSKE"], store_dir)
    save_result(StoredResult(results["LSKE"], "2024-01-01T00:00:00Z"), store_dir)
    assert load_result(result_path(store_dir, "LSKE")).created_at == "2024-01-01T00:00:00Z"


def test_slug_collision(results, store_dir):
    save_result(results["CE-SKE"], store_dir)
    clash = StoredResult(replace(results["CE-SKE"], protocol_name="ce ske"), STAMP)
    with pytest.raises(SlugCollision):
        save_result(clash, store_dir)


def test_malformed_record(store_dir):
    os.makedirs(store_dir)
    path = os.path.join(store_dir, "broken.result.json")
    with open(path, "w") as f:
        f.write('{"protocol_name": "x"}')
    with pytest.raises(StoreError):
        load_result(path)
    with open(path, "w") as f:
        f.write("{")
    with pytest.raises(StoreError):
        load_result(path)


def test_list_and_load_results(results, store_dir):
    assert list_results(store_dir) == []
    for result in results.values():
        save_result(result, store_dir)
    assert list_results(store_dir) == sorted(results)

    comparison = load_results(store_dir, ["LSKE", "Otway-Rees"], "pair")
    assert comparison.name == "pair"
    assert [e.protocol_name for e in comparison.entries] == ["LSKE", "Otway-Rees"]

    with pytest.raises(NotFound) as info:
        load_results(store_dir, ["LSKE", "Kerberos", "TLS"])
    assert info.value.names == ["Kerberos", "TLS"]
    assert info.value.exit_code == 5

    # "lske" shares the LSKE slug but names no stored protocol.
    with pytest.raises(NotFound) as info:
        load_results(store_dir, ["lske"])
    assert info.value.names == ["lske"]


def test_comparison_set_replaces_duplicates(results):
    comparison = ComparisonSet("c")
    comparison.add(StoredResult(results["LSKE"], STAMP))
    comparison.add(StoredResult(results["CE-SKE"], STAMP))
    comparison.add(StoredResult(results["LSKE"], "2024-01-01T00:00:00Z"))
    assert len(comparison) == 2
    assert comparison.entries[0].created_at == "2024-01-01T00:00:00Z"


def test_compare_empty():
    with pytest.raises(EmptySet):
        compare(ComparisonSet("empty"))


def test_ties_break_on_name(results):
    comparison = ComparisonSet("ties")
    for name in ("SMAK-IOV", "LSKE"):
        comparison.add(StoredResult(results[name], STAMP))
    twin = replace(results["LSKE"], protocol_name="Alpha")
    comparison.add(StoredResult(twin, STAMP))
    table = compare(comparison)
    assert table.by_computation == ("Alpha", "LSKE", "SMAK-IOV")
    assert table.by_communication == ("Alpha", "LSKE", "SMAK-IOV")


def test_mixed_models_warning(results, corpus_specs):
    comparison = ComparisonSet("mixed")
    comparison.add(StoredResult(results["LSKE"], STAMP))
    comparison.add(StoredResult(analyze(corpus_specs["Otway-Rees"], default_model()), STAMP))
    table = compare(comparison)
    assert table.mixed_models
    assert len(table.warnings) == 1
    assert "corpus (LSKE)" in table.warnings[0]
    assert "default (Otway-Rees)" in table.warnings[0]


def test_save_result_into_a_file(results, tmp_path):
    blocker = tmp_path / "store"
    blocker.write_text("not a directory")
    with pytest.raises(OSError):
        save_result(results["LSKE"], str(blocker))


def test_near_equal_costs_tie_on_name(results):
    comparison = ComparisonSet("close")
    for name, cost in (("Zeta", 2.49e-9), ("Alpha", 2.51e-9), ("Mid", 1.0)):
        near = replace(results["LSKE"], protocol_name=name, computation_ms=cost)
        comparison.add(StoredResult(near, STAMP))
    assert compare(comparison).by_computation == ("Alpha", "Zeta", "Mid")
