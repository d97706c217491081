"""Operation counting and pricing.

Every syntactic occurrence is charged: an encryption costs one encryption to the
message sender and one decryption to the receiver; a classified function application
is charged to the sender. Arguments and bodies are always traversed, so nested
occurrences each count.
"""
from collections import Counter
from dataclasses import dataclass, field
from decimal import Decimal
from typing import Dict, List, Tuple

from .casplus import Apply, Enc, ProtocolSpec, parse_file, resolve, walk
from .logger import get_logger
from .model import CATEGORIES, CostCategory, CostModel, default_model

logger = get_logger("analyzer")

ENC_CATEGORIES = {
    "symmetric_key": (CostCategory.SYM_ENC, CostCategory.SYM_DEC),
    "public_key": (CostCategory.PUB_ENC, CostCategory.PUB_DEC),
}


@dataclass(frozen=True)
class OperationCounts:
    per_category: Dict[CostCategory, int] = field(default_factory=dict)
    unclassified_calls: Dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        per_category = {c: int(self.per_category.get(c, 0)) for c in CATEGORIES}
        unclassified = {f: int(n) for f, n in sorted(self.unclassified_calls.items()) if n}
        if any(n < 0 for n in per_category.values()) or any(n < 0 for n in unclassified.values()):
            raise ValueError("operation counts must be >= 0")
        object.__setattr__(self, "per_category", per_category)
        object.__setattr__(self, "unclassified_calls", unclassified)

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def from_symbols(cls, counts, unclassified_calls=None):
        """Build counts from a ``{"Th": 8, "Pm": 2}`` style mapping."""
        return cls(
            {CostCategory.from_symbol(s): n for s, n in counts.items()},
            dict(unclassified_calls or {}),
        )

    def __getitem__(self, category):
        return self.per_category[category]

    def __add__(self, other):
        if not isinstance(other, OperationCounts):
            return NotImplemented
        unclassified = Counter(self.unclassified_calls)
        unclassified.update(other.unclassified_calls)
        return OperationCounts(
            {c: self.per_category[c] + other.per_category[c] for c in CATEGORIES},
            dict(unclassified),
        )

    def is_zero(self):
        return not any(self.per_category.values()) and not self.unclassified_calls

    def by_symbol(self):
        return {c.value: self.per_category[c] for c in CATEGORIES}


@dataclass(frozen=True)
class RoleAttribution:
    role: str
    counts: OperationCounts


@dataclass(frozen=True)
class AnalysisResult:
    protocol_name: str
    counts: OperationCounts
    per_role: Tuple[RoleAttribution, ...]
    computation_ms: float
    communication: int
    model_name: str
    model_digest: str
    warnings: Tuple[str, ...] = ()

    def subtotals(self, model: CostModel) -> Dict[CostCategory, Decimal]:
        """Per-category cost in ms: count x unit cost."""
        return {c: self.counts[c] * model.unit_cost(c) for c in CATEGORIES}

    def role(self, name) -> OperationCounts:
        for attribution in self.per_role:
            if attribution.role == name:
                return attribution.counts
        raise KeyError(name)


def count_operations(
    spec: ProtocolSpec, model: CostModel
) -> Tuple[OperationCounts, List[RoleAttribution], List[str]]:
    """Count operation occurrences over every message payload and attribute them to roles."""
    kinds = spec.kinds()
    roles = spec.roles()
    per_role = {role: Counter() for role in roles}
    unclassified = {role: Counter() for role in roles}

    for message in spec.messages:
        sender = per_role[message.sender]
        receiver = per_role[message.receiver]
        for term in walk(message.payload):
            if isinstance(term, Enc):
                enc, dec = ENC_CATEGORIES[kinds[term.key]]
                sender[enc] += 1
                receiver[dec] += 1
            elif isinstance(term, Apply):
                category = model.classify_function(term.function)
                if category is None:
                    unclassified[message.sender][term.function] += 1
                else:
                    sender[category] += 1

    attributions = [
        RoleAttribution(role, OperationCounts(dict(per_role[role]), dict(unclassified[role])))
        for role in roles
    ]
    total = sum((a.counts for a in attributions), OperationCounts.zero())

    warnings = [
        f"function '{fname}' has no cost classification in model '{model.name}'; "
        f"{calls} call{'s' if calls != 1 else ''} priced at 0 ms"
        for fname, calls in total.unclassified_calls.items()
    ]
    return total, attributions, warnings


def communication_cost(spec: ProtocolSpec) -> int:
    """Number of messages exchanged in one run."""
    return len(spec.messages)


def compute_cost(counts: OperationCounts, model: CostModel) -> float:
    """Sum of count x unit cost over all categories, in ms. Unclassified calls are free."""
    total = sum((counts[c] * model.unit_cost(c) for c in CATEGORIES), Decimal(0))
    return float(total)


def analyze(spec: ProtocolSpec, model: CostModel = None) -> AnalysisResult:
    if not spec.resolved:
        raise ValueError(f"protocol {spec.name!r} must be resolved before analysis")
    model = model if model is not None else default_model()
    counts, per_role, warnings = count_operations(spec, model)
    return AnalysisResult(
        protocol_name=spec.name,
        counts=counts,
        per_role=tuple(per_role),
        computation_ms=compute_cost(counts, model),
        communication=communication_cost(spec),
        model_name=model.name,
        model_digest=model.digest(),
        warnings=tuple(warnings),
    )


def analyze_file(path, model: CostModel = None) -> AnalysisResult:
    """Parse, resolve and analyze one source file; lint warnings are logged."""
    spec, lint_warnings = resolve(parse_file(path))
    for warning in lint_warnings:
        logger.warning(warning.render(path))
    result = analyze(spec, model)
    for warning in result.warnings:
        logger.warning(f"{path}: {warning}")
    return result
