"""Result store: one JSON file per protocol in a flat directory, plus comparison sets."""
import json
import math
import os
import tempfile
from dataclasses import dataclass, field
from functools import cmp_to_key
from typing import List, Optional, Tuple

from .analyzer import AnalysisResult, OperationCounts, RoleAttribution
from .errors import EmptySet, NotFound, SlugCollision, StoreError
from .logger import get_logger
from .utils import slugify, timestamp_for

logger = get_logger("store")

RESULT_SUFFIX = ".result.json"
# Costs closer than this are considered equal when ranking.
COST_TOLERANCE = 1e-9


@dataclass(frozen=True)
class StoredResult:
    result: AnalysisResult
    created_at: str
    source_path: str = ""
    source_digest: str = ""

    @property
    def protocol_name(self):
        return self.result.protocol_name


@dataclass
class ComparisonSet:
    name: str
    entries: List[StoredResult] = field(default_factory=list)

    def add(self, entry: StoredResult):
        """Append an entry; an entry with the same protocol name is replaced in place."""
        for idx, existing in enumerate(self.entries):
            if existing.protocol_name == entry.protocol_name:
                self.entries[idx] = entry
                return
        self.entries.append(entry)

    def __len__(self):
        return len(self.entries)


@dataclass(frozen=True)
class ComparisonRow:
    protocol_name: str
    counts: OperationCounts
    computation_ms: float
    communication: int
    model_name: str
    model_digest: str


@dataclass(frozen=True)
class ComparisonTable:
    name: str
    rows: Tuple[ComparisonRow, ...]
    by_computation: Tuple[str, ...]
    by_communication: Tuple[str, ...]
    warnings: Tuple[str, ...] = ()

    @property
    def mixed_models(self):
        return len({row.model_digest for row in self.rows}) > 1


def result_path(store_dir, protocol_name):
    return os.path.join(store_dir, slugify(protocol_name) + RESULT_SUFFIX)


def to_dict(stored: StoredResult):
    result = stored.result
    return {
        "protocol_name": result.protocol_name,
        "counts": result.counts.by_symbol(),
        "unclassified_calls": dict(result.counts.unclassified_calls),
        "per_role": [
            {
                "role": attribution.role,
                "counts": attribution.counts.by_symbol(),
                "unclassified_calls": dict(attribution.counts.unclassified_calls),
            }
            for attribution in result.per_role
        ],
        "computation_ms": result.computation_ms,
        "communication": result.communication,
        "model_name": result.model_name,
        "model_digest": result.model_digest,
        "created_at": stored.created_at,
        "source_path": stored.source_path,
        "source_digest": stored.source_digest,
        "warnings": list(result.warnings),
    }


def from_dict(data) -> StoredResult:
    try:
        result = AnalysisResult(
            protocol_name=data["protocol_name"],
            counts=OperationCounts.from_symbols(data["counts"], data.get("unclassified_calls")),
            per_role=tuple(
                RoleAttribution(
                    entry["role"],
                    OperationCounts.from_symbols(entry["counts"], entry.get("unclassified_calls")),
                )
                for entry in data.get("per_role", [])
            ),
            computation_ms=float(data["computation_ms"]),
            communication=int(data["communication"]),
            model_name=data["model_name"],
            model_digest=data["model_digest"],
            warnings=tuple(data.get("warnings", [])),
        )
        return StoredResult(
            result,
            data["created_at"],
            data.get("source_path", ""),
            data.get("source_digest", ""),
        )
    except (KeyError, TypeError, ValueError) as err:
        raise StoreError(f"malformed result record: {err}") from err


def dumps(stored: StoredResult) -> str:
    return json.dumps(to_dict(stored), indent=2, sort_keys=True) + "\n"


def save_result(
    result, store_dir, source_path="", source_digest="", created_at: Optional[str] = None
) -> str:
    """Write ``<slug>.result.json`` atomically and return its path.

    ``result`` may be an AnalysisResult or an already stamped StoredResult.
    """
    if isinstance(result, StoredResult):
        stored = result
    else:
        stored = StoredResult(
            result,
            created_at or timestamp_for(source_path or None),
            str(source_path),
            source_digest,
        )
    os.makedirs(store_dir, exist_ok=True)
    path = result_path(store_dir, stored.protocol_name)
    if os.path.exists(path):
        existing = load_result(path)
        if existing.protocol_name != stored.protocol_name:
            raise SlugCollision(
                slugify(stored.protocol_name), existing.protocol_name, stored.protocol_name
            )

    fd, tmp_path = tempfile.mkstemp(dir=store_dir, prefix=".tmp-", suffix=RESULT_SUFFIX)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            f.write(dumps(stored))
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise
    logger.info(f"Stored {stored.protocol_name} in {path}")
    return path


def load_result(path) -> StoredResult:
    with open(path, encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as err:
            raise StoreError(f"{path}: malformed result file: {err}") from err
    return from_dict(data)


def list_results(store_dir) -> List[str]:
    """Protocol names of every stored result, sorted."""
    if not os.path.isdir(store_dir):
        return []
    names = []
    for entry in sorted(os.listdir(store_dir)):
        if entry.endswith(RESULT_SUFFIX) and not entry.startswith("."):
            names.append(load_result(os.path.join(store_dir, entry)).protocol_name)
    return sorted(names)


def load_results(store_dir, names, set_name="comparison") -> ComparisonSet:
    """Load the named results in the requested order; every missing name is reported."""
    found, missing = [], []
    for name in names:
        path = result_path(store_dir, name)
        stored = load_result(path) if os.path.exists(path) else None
        # A different protocol may own the slug.
        if stored is None or stored.protocol_name != name:
            missing.append(name)
            continue
        found.append(stored)
    if missing:
        raise NotFound(missing)
    comparison = ComparisonSet(set_name)
    for stored in found:
        comparison.add(stored)
    return comparison


def _by_cost(a: ComparisonRow, b: ComparisonRow) -> int:
    if not math.isclose(a.computation_ms, b.computation_ms, rel_tol=0.0, abs_tol=COST_TOLERANCE):
        return -1 if a.computation_ms < b.computation_ms else 1
    return (a.protocol_name > b.protocol_name) - (a.protocol_name < b.protocol_name)


def compare(comparison: ComparisonSet) -> ComparisonTable:
    """Tabulate and rank a comparison set; ties fall back to the protocol name."""
    if not comparison.entries:
        raise EmptySet()
    rows = tuple(
        ComparisonRow(
            entry.result.protocol_name,
            entry.result.counts,
            entry.result.computation_ms,
            entry.result.communication,
            entry.result.model_name,
            entry.result.model_digest,
        )
        for entry in comparison.entries
    )
    by_computation = sorted(rows, key=cmp_to_key(_by_cost))
    by_communication = sorted(rows, key=lambda row: (row.communication, row.protocol_name))

    warnings = []
    digests = {}
    for row in rows:
        digests.setdefault(row.model_digest, []).append(row)
    if len(digests) > 1:
        models = ", ".join(
            f"{group[0].model_name} ({', '.join(r.protocol_name for r in group)})"
            for group in digests.values()
        )
        warnings.append(f"results were priced by different cost models: {models}")

    return ComparisonTable(
        comparison.name,
        rows,
        tuple(row.protocol_name for row in by_computation),
        tuple(row.protocol_name for row in by_communication),
        tuple(warnings),
    )
