"""Aligned text tables."""
from tabulate import tabulate

from ..analyzer import AnalysisResult
from ..model import CATEGORIES, CostModel, default_model
from ..store import ComparisonSet, ComparisonTable, StoredResult, compare
from ..utils import format_ms


def render_table(obj, model: CostModel = None) -> str:
    """Render one analysis result or a comparison as a fixed-width table."""
    if isinstance(obj, StoredResult):
        obj = obj.result
    if isinstance(obj, AnalysisResult):
        return render_result(obj, model if model is not None else default_model())
    if isinstance(obj, ComparisonSet):
        obj = compare(obj)
    if isinstance(obj, ComparisonTable):
        return render_comparison(obj)
    raise TypeError(f"cannot render {type(obj).__name__} as a table")


def render_result(result: AnalysisResult, model: CostModel) -> str:
    subtotals = result.subtotals(model)
    data = [
        [
            category.description,
            model.symbol(category),
            str(result.counts[category]),
            str(model.unit_cost(category)),
            format_ms(subtotals[category]),
        ]
        for category in CATEGORIES
    ]
    lines = [f"Protocol: {result.protocol_name}", f"Model: {result.model_name}", ""]
    lines.append(
        tabulate(
            data,
            headers=["Operation", "Symbol", "Count", "Unit cost (ms)", "Subtotal (ms)"],
            stralign="left",
            colalign=("left", "center", "right", "right", "right"),
            disable_numparse=True,
        )
    )
    lines.append("")
    if result.counts.unclassified_calls:
        calls = ", ".join(f"{f}={n}" for f, n in result.counts.unclassified_calls.items())
        lines.append(f"Unclassified calls (0 ms): {calls}")
    lines.append(f"Total computation (ms): {format_ms(result.computation_ms)}")
    lines.append(f"Communication: {result.communication}")
    return "\n".join(lines) + "\n"


def render_comparison(table: ComparisonTable) -> str:
    data = [
        [str(idx), row.protocol_name, format_ms(row.computation_ms), str(row.communication)]
        for idx, row in enumerate(table.rows, start=1)
    ]
    lines = [
        tabulate(
            data,
            headers=["No", "Protocol", "Computation (ms)", "Communication"],
            colalign=("right", "left", "right", "right"),
            disable_numparse=True,
        ),
        "",
        "Cheapest computation first: " + " < ".join(table.by_computation),
        "Fewest messages first: " + " < ".join(table.by_communication),
    ]
    for warning in table.warnings:
        lines.append(f"WARNING: {warning}")
    return "\n".join(lines) + "\n"


def render_role_table(result: AnalysisResult, model: CostModel) -> str:
    """Operation counts charged to each role."""
    headers = ["Role"] + [model.symbol(c) for c in CATEGORIES]
    data = [
        [attribution.role] + [str(attribution.counts[c]) for c in CATEGORIES]
        for attribution in result.per_role
    ]
    return tabulate(data, headers=headers, stralign="center", disable_numparse=True) + "\n"


def render_model(model: CostModel) -> str:
    """The cost model as a unit-cost table followed by the function classes."""
    data = [
        [str(idx), category.description, model.symbol(category), str(model.unit_cost(category))]
        for idx, category in enumerate(CATEGORIES, start=1)
    ]
    data.append([str(len(data) + 1), "Communication", ">", "0 (counted in messages)"])
    lines = [
        f"Model: {model.name}",
        "",
        tabulate(
            data,
            headers=["No", "Description", "Notation", "Execution time (ms)"],
            colalign=("right", "left", "center", "right"),
            disable_numparse=True,
        ),
        "",
    ]
    if model.function_classes:
        lines.append(
            tabulate(
                [[fname, model.symbol(c)] for fname, c in sorted(model.function_classes.items())],
                headers=["Function", "Priced as"],
                stralign="center",
                disable_numparse=True,
            )
        )
    else:
        lines.append("No functions classified; function applications cost 0 ms.")
    return "\n".join(lines) + "\n"
