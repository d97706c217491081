"""CSV and JSON exports."""
import csv

from ..analyzer import AnalysisResult
from ..model import SYMBOLS
from ..store import ComparisonSet, ComparisonTable, StoredResult, compare, dumps
from ..utils import format_number, timestamp_for

CSV_HEADER = ["protocol", *SYMBOLS, "computation_ms", "communication"]


def _rows(obj):
    """(name, counts, computation_ms, communication) per protocol, in insertion order."""
    if isinstance(obj, StoredResult):
        obj = obj.result
    if isinstance(obj, AnalysisResult):
        return [(obj.protocol_name, obj.counts, obj.computation_ms, obj.communication)]
    if isinstance(obj, ComparisonSet):
        obj = compare(obj)
    if isinstance(obj, ComparisonTable):
        return [
            (row.protocol_name, row.counts, row.computation_ms, row.communication)
            for row in obj.rows
        ]
    raise TypeError(f"cannot export {type(obj).__name__} as CSV")


def write_csv(obj, stream):
    """RFC 4180 CSV (CRLF line ends, quoting only where needed)."""
    writer = csv.writer(stream, lineterminator="\r\n")
    writer.writerow(CSV_HEADER)
    for name, counts, computation_ms, communication in _rows(obj):
        writer.writerow(
            [name]
            + [str(n) for n in counts.by_symbol().values()]
            + [format_number(computation_ms), str(communication)]
        )


def export_csv(obj, path):
    with open(path, "w", newline="", encoding="utf-8") as f:
        write_csv(obj, f)


def render_json(obj) -> str:
    """The result-file JSON document of one result."""
    if isinstance(obj, AnalysisResult):
        obj = StoredResult(obj, timestamp_for())
    if not isinstance(obj, StoredResult):
        raise TypeError(f"cannot render {type(obj).__name__} as JSON")
    return dumps(obj)
