import json
from decimal import Decimal

import pytest

from cascost.errors import ModelFormatError, ModelValueError
from cascost.model import (
    CATEGORIES,
    CostCategory,
    CostModel,
    classify_function,
    default_model,
    load_model,
    model_from_dict,
    save_model,
)


def write_model(tmp_path, data, name="model.json"):
    path = tmp_path / name
    path.write_text(data if isinstance(data, str) else json.dumps(data), encoding="utf-8")
    return str(path)


def test_default_unit_costs():
    model = default_model()
    assert {c.symbol: str(model.unit_cost(c)) for c in CATEGORIES} == {
        "Th": "0.0023",
        "Pm": "2.226",
        "Pe": "3.8500",
        "Pd": "3.8500",
        "Se": "0.0046",
        "Sd": "0.0046",
    }
    assert model.function_classes == {}
    assert classify_function(model, "h") is None


def test_categories():
    assert [c.symbol for c in CATEGORIES] == ["Th", "Pm", "Pe", "Pd", "Se", "Sd"]
    assert CostCategory.from_symbol("Pm") is CostCategory.POINT_MUL
    assert CostCategory.SYM_DEC.description == "Symmetric-key decryption"
    with pytest.raises(ModelValueError):
        CostCategory.from_symbol("Xx")


def test_load_partial_model(tmp_path):
    path = write_model(
        tmp_path,
        '{"name": "fast", "unit_cost_ms": {"Th": 0.001}, "function_classes": {"h": "Th"}}',
    )
    model = load_model(path)
    assert model.name == "fast"
    assert model.unit_cost(CostCategory.HASH) == Decimal("0.001")
    assert model.unit_cost(CostCategory.PUB_ENC) == Decimal("3.85")
    assert model.classify_function("h") is CostCategory.HASH
    assert model.classify_function("g") is None


def test_corpus_model(model):
    assert model.name == "corpus"
    assert model.classify_function("mul") is CostCategory.POINT_MUL
    assert model.digest() != default_model().digest()


@pytest.mark.parametrize(
    "data, error",
    [
        ({"unit_cost_ms": {}}, ModelFormatError),
        ({"name": "m", "unit_cost_ms": {"Th": -1}}, ModelValueError),
        ({"name": "m", "unit_cost_ms": {"Zz": 1}}, ModelValueError),
        ({"name": "m", "unit_cost_ms": {"Th": "fast"}}, ModelFormatError),
        ({"name": "m", "function_classes": {"h": "Se"}}, ModelValueError),
        ({"name": "m", "function_classes": {"h": "Zz"}}, ModelValueError),
        ({"name": "m", "colour": "red"}, ModelFormatError),
        ({"name": "m", "unit_cost_ms": [1, 2]}, ModelFormatError),
        ([], ModelFormatError),
    ],
)
def test_invalid_models(data, error):
    with pytest.raises(error):
        model_from_dict(data)


def test_malformed_json(tmp_path):
    with pytest.raises(ModelFormatError):
        load_model(write_model(tmp_path, "{not json"))


def test_non_finite_costs(tmp_path):
    with pytest.raises(ModelValueError):
        load_model(write_model(tmp_path, '{"name": "m", "unit_cost_ms": {"Th": NaN}}'))


def test_save_and_load(tmp_path):
    model = CostModel(
        "custom",
        {**default_model().unit_cost_ms, CostCategory.POINT_MUL: Decimal("1.5")},
        {"mul": CostCategory.POINT_MUL},
        {CostCategory.HASH: "H"},
    )
    path = str(tmp_path / "out.json")
    save_model(model, path)
    loaded = load_model(path)
    assert loaded == model
    assert loaded.symbol(CostCategory.HASH) == "H"
    assert loaded.digest() == model.digest()
    with open(path, encoding="utf-8") as f:
        data = json.load(f)
    assert data["unit_cost_ms"]["Pm"] == 1.5
    assert data["function_classes"] == {"mul": "Pm"}


def test_saved_costs_keep_their_digits(tmp_path):
    model = CostModel(
        "precise",
        {**default_model().unit_cost_ms, CostCategory.SYM_ENC: Decimal("0.12345678901234567891")},
    )
    path = str(tmp_path / "precise.json")
    save_model(model, path)
    loaded = load_model(path)
    assert loaded == model
    assert str(loaded.unit_cost(CostCategory.SYM_ENC)) == "0.12345678901234567891"
    assert str(loaded.unit_cost(CostCategory.PUB_ENC)) == "3.8500"
    with open(path, encoding="utf-8") as f:
        text = f.read()
    assert '"Pe": 3.8500' in text
    assert '"Se": 0.12345678901234567891' in text


def test_numeric_equality_of_costs(tmp_path):
    long_form = load_model(write_model(tmp_path, '{"name": "a", "unit_cost_ms": {"Pe": 3.8500}}'))
    short_form = load_model(write_model(tmp_path, '{"name": "b", "unit_cost_ms": {"Pe": 3.85}}', "b.json"))
    assert long_form.unit_cost(CostCategory.PUB_ENC) == short_form.unit_cost(CostCategory.PUB_ENC)
    assert long_form.digest() == short_form.digest()


def test_scaled():
    model = default_model().scaled(2)
    assert model.unit_cost(CostCategory.PUB_ENC) == Decimal("7.7")
    assert model.name == "default x2"
    assert model.digest() != default_model().digest()


def test_save_model_to_directory(tmp_path):
    with pytest.raises(OSError):
        save_model(default_model(), str(tmp_path))
