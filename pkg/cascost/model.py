"""Cost model: unit execution time per cryptographic operation category.

Unit costs are kept as ``Decimal`` values read verbatim from the model file; the
analyzer multiplies them exactly and only the final total is converted to float.
"""
import json
import re
from dataclasses import dataclass, field
from decimal import Decimal
from enum import Enum
from typing import Dict, Optional

from .errors import ModelFormatError, ModelValueError
from .utils import digest_bytes


class CostCategory(Enum):
    HASH = "Th"
    POINT_MUL = "Pm"
    PUB_ENC = "Pe"
    PUB_DEC = "Pd"
    SYM_ENC = "Se"
    SYM_DEC = "Sd"

    @property
    def symbol(self):
        return self.value

    @property
    def description(self):
        return DESCRIPTIONS[self]

    @classmethod
    def from_symbol(cls, symbol):
        for category in cls:
            if category.value == symbol:
                return category
        raise ModelValueError(
            f"unknown cost category {symbol!r} (expected one of {', '.join(SYMBOLS)})"
        )


CATEGORIES = tuple(CostCategory)
SYMBOLS = tuple(category.value for category in CATEGORIES)

DESCRIPTIONS = {
    CostCategory.HASH: "Hash operation",
    CostCategory.POINT_MUL: "Point multiplication",
    CostCategory.PUB_ENC: "Public-key encryption",
    CostCategory.PUB_DEC: "Public-key decryption",
    CostCategory.SYM_ENC: "Symmetric-key encryption",
    CostCategory.SYM_DEC: "Symmetric-key decryption",
}

# Functions can only be priced as hashes or point multiplications; encryption and
# decryption categories come from key kinds.
FUNCTION_CATEGORIES = (CostCategory.HASH, CostCategory.POINT_MUL)

DEFAULT_UNIT_COST_MS = {
    CostCategory.HASH: Decimal("0.0023"),
    CostCategory.POINT_MUL: Decimal("2.226"),
    CostCategory.PUB_ENC: Decimal("3.8500"),
    CostCategory.PUB_DEC: Decimal("3.8500"),
    CostCategory.SYM_ENC: Decimal("0.0046"),
    CostCategory.SYM_DEC: Decimal("0.0046"),
}

MODEL_KEYS = ("name", "unit_cost_ms", "function_classes", "display_symbols")
IDENT_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")


@dataclass(frozen=True)
class CostModel:
    name: str
    unit_cost_ms: Dict[CostCategory, Decimal] = field(
        default_factory=lambda: dict(DEFAULT_UNIT_COST_MS)
    )
    function_classes: Dict[str, CostCategory] = field(default_factory=dict)
    display_symbols: Dict[CostCategory, str] = field(default_factory=dict)

    def __post_init__(self):
        for category in CATEGORIES:
            cost = self.unit_cost_ms.get(category)
            if cost is None:
                raise ModelValueError(f"model {self.name!r} has no unit cost for {category.value}")
            if cost < 0:
                raise ModelValueError(f"unit cost of {category.value} must be >= 0, got {cost}")
        for fname, category in self.function_classes.items():
            if category not in FUNCTION_CATEGORIES:
                raise ModelValueError(
                    f"function {fname!r} can only be classified as Th or Pm, not {category.value}"
                )

    def unit_cost(self, category) -> Decimal:
        return self.unit_cost_ms[category]

    def classify_function(self, name) -> Optional[CostCategory]:
        """Category of a function name, or None when the function is unclassified."""
        return self.function_classes.get(name)

    def symbol(self, category) -> str:
        return self.display_symbols.get(category, category.value)

    def scaled(self, factor, name=None):
        """Copy of the model with every unit cost multiplied by ``factor``."""
        factor = Decimal(str(factor))
        return CostModel(
            name=name or f"{self.name} x{factor}",
            unit_cost_ms={c: v * factor for c, v in self.unit_cost_ms.items()},
            function_classes=dict(self.function_classes),
            display_symbols=dict(self.display_symbols),
        )

    def to_dict(self):
        data = {
            "name": self.name,
            "unit_cost_ms": {c.value: self.unit_cost_ms[c] for c in CATEGORIES},
            "function_classes": {
                fname: category.value for fname, category in sorted(self.function_classes.items())
            },
        }
        if self.display_symbols:
            data["display_symbols"] = {
                c.value: self.display_symbols[c] for c in CATEGORIES if c in self.display_symbols
            }
        return data

    def digest(self) -> str:
        """Identify the pricing (unit costs and function classes), ignoring the name."""
        canonical = {
            "unit_cost_ms": {c.value: str(self.unit_cost_ms[c].normalize()) for c in CATEGORIES},
            "function_classes": {f: c.value for f, c in self.function_classes.items()},
        }
        return digest_bytes(json.dumps(canonical, sort_keys=True).encode("utf-8"))


def default_model() -> CostModel:
    """Unit costs of the reference cost table; no functions classified."""
    return CostModel(name="default")


def classify_function(model: CostModel, name) -> Optional[CostCategory]:
    return model.classify_function(name)


def model_from_dict(data) -> CostModel:
    if not isinstance(data, dict):
        raise ModelFormatError("a cost model must be a JSON object")
    unknown = sorted(set(data) - set(MODEL_KEYS))
    if unknown:
        raise ModelFormatError(f"unknown model keys: {', '.join(unknown)}")
    name = data.get("name")
    if not isinstance(name, str) or not name:
        raise ModelFormatError("a cost model needs a non-empty string 'name'")

    unit_cost_ms = dict(DEFAULT_UNIT_COST_MS)
    for symbol, value in _object(data, "unit_cost_ms").items():
        category = CostCategory.from_symbol(symbol)
        if isinstance(value, bool) or not isinstance(value, (int, Decimal)):
            raise ModelFormatError(f"unit cost of {symbol} must be a number, got {value!r}")
        value = Decimal(value)
        if not value.is_finite() or value < 0:
            raise ModelValueError(f"unit cost of {symbol} must be a finite number >= 0, got {value}")
        unit_cost_ms[category] = value

    function_classes = {}
    for fname, symbol in _object(data, "function_classes").items():
        if not IDENT_RE.match(fname):
            raise ModelFormatError(f"function class key {fname!r} is not an identifier")
        if not isinstance(symbol, str):
            raise ModelFormatError(f"class of function {fname!r} must be a string")
        category = CostCategory.from_symbol(symbol)
        if category not in FUNCTION_CATEGORIES:
            raise ModelValueError(f"function {fname!r} can only be classified as Th or Pm")
        function_classes[fname] = category

    display_symbols = {}
    for symbol, text in _object(data, "display_symbols").items():
        if not isinstance(text, str) or not text:
            raise ModelFormatError(f"display symbol for {symbol} must be a non-empty string")
        display_symbols[CostCategory.from_symbol(symbol)] = text

    return CostModel(name, unit_cost_ms, function_classes, display_symbols)


def _object(data, key):
    value = data.get(key, {})
    if not isinstance(value, dict):
        raise ModelFormatError(f"'{key}' must be a JSON object")
    return value


def load_model(path) -> CostModel:
    """Read a JSON model file; absent categories keep their default unit cost."""
    with open(path, encoding="utf-8") as f:
        text = f.read()
    try:
        data = json.loads(text, parse_float=Decimal, parse_constant=Decimal)
    except json.JSONDecodeError as err:
        raise ModelFormatError(f"{path}: malformed JSON: {err}") from err
    return model_from_dict(data)


def dumps_model(model: CostModel) -> str:
    """Model file text. Unit costs keep the digits they were written with."""
    fields = []
    for key, value in model.to_dict().items():
        if key == "unit_cost_ms":
            costs = ",\n".join(f"    {json.dumps(symbol)}: {cost}" for symbol, cost in value.items())
            text = "{\n" + costs + "\n  }"
        else:
            text = json.dumps(value, indent=2).replace("\n", "\n  ")
        fields.append(f"  {json.dumps(key)}: {text}")
    return "{\n" + ",\n".join(fields) + "\n}\n"


def save_model(model: CostModel, path):
    text = dumps_model(model)
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)
