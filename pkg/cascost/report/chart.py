"""Deterministic SVG bar charts.

Two chart kinds: per-category bars for one protocol, and grouped totals across
protocols where every metric gets its own vertical scale.
"""
import math
from dataclasses import dataclass
from typing import Tuple
from xml.sax.saxutils import escape, quoteattr

from ..analyzer import AnalysisResult
from ..errors import ChartError
from ..model import CATEGORIES, CostModel
from ..store import ComparisonSet, ComparisonTable, compare
from ..utils import round_ms

CHART_KINDS = ("per_category_single", "totals_grouped")
CHART_MODES = ("counts", "costs")
PALETTE = ("#348ABD", "#E24A33", "#988ED5", "#777777", "#FBC15E", "#8EBA42")
METRIC_LABELS = {"computation_ms": "Computation (ms)", "communication": "Communication (messages)"}
TICKS = 5


@dataclass(frozen=True)
class ChartSpec:
    title: str
    kind: str
    series: Tuple[Tuple[str, Tuple[Tuple[str, float], ...]], ...]
    width_px: int = 640
    height_px: int = 400
    y_label: str = ""

    def validate(self):
        if self.kind not in CHART_KINDS:
            raise ChartError(f"unknown chart kind {self.kind!r}")
        if self.width_px <= 0 or self.height_px <= 0:
            raise ChartError("chart width and height must be positive")
        if not self.series:
            raise ChartError("a chart needs at least one series")
        labels = [label for label, _ in self.series]
        if len(set(labels)) != len(labels):
            raise ChartError("series labels must be distinct")
        for label, points in self.series:
            if not points:
                raise ChartError(f"series {label!r} has no values")
            if any(value < 0 for _, value in points):
                raise ChartError(f"series {label!r} has a negative value")
        if self.kind == "per_category_single" and len(self.series) != 1:
            raise ChartError("a per-category chart shows exactly one series")
        if self.kind == "totals_grouped":
            metrics = {tuple(name for name, _ in points) for _, points in self.series}
            if len(metrics) != 1:
                raise ChartError("every group must report the same metrics")


def nice_max(vmax):
    """Smallest 1/2/5 x 10^k bound at or above ``vmax``."""
    if vmax <= 0:
        return 1.0
    magnitude = 10.0 ** math.floor(math.log10(vmax))
    for factor in (1, 2, 5, 10):
        bound = factor * magnitude
        if vmax <= bound * (1 + 1e-12):
            return bound
    return 10 * magnitude


def fmt(value):
    """Display text of a value: half-up to 4 decimals, trailing zeros dropped."""
    return format(round_ms(value).normalize(), "f")


def px(value):
    return f"{value:.2f}"


class _Canvas:
    def __init__(self, chart: ChartSpec):
        self.chart = chart
        self.out = []

    def text(self, x, y, content, anchor="middle", size=12, cls="label", extra=""):
        self.out.append(
            f'  <text class="{cls}" x="{px(x)}" y="{px(y)}" text-anchor="{anchor}" '
            f'font-size="{size}"{extra}>{escape(str(content))}</text>'
        )

    def line(self, x1, y1, x2, y2, cls="axis"):
        self.out.append(
            f'  <line class="{cls}" x1="{px(x1)}" y1="{px(y1)}" x2="{px(x2)}" y2="{px(y2)}" '
            f'stroke="#333333" stroke-width="1"/>'
        )

    def rect(self, x, y, width, height, color, cls="bar"):
        self.out.append(
            f'  <rect class="{cls}" x="{px(x)}" y="{px(y)}" width="{px(width)}" '
            f'height="{px(height)}" fill="{color}"/>'
        )

    def document(self):
        chart = self.chart
        head = [
            '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{chart.width_px}" '
            f'height="{chart.height_px}" viewBox="0 0 {chart.width_px} {chart.height_px}" '
            f'font-family="sans-serif" role="img" aria-label={quoteattr(chart.title)}>',
            f"  <title>{escape(chart.title)}</title>",
        ]
        return "\n".join(head + self.out + ["</svg>"]) + "\n"


def _y_axis(canvas, x, top, bottom, vmax, anchor, label, label_x):
    canvas.line(x, top, x, bottom)
    offset = -6 if anchor == "end" else 6
    for i in range(TICKS + 1):
        y = bottom - (bottom - top) * i / TICKS
        canvas.line(x - 3, y, x + 3, y, cls="tick")
        canvas.text(x + offset, y + 4, fmt(vmax * i / TICKS), anchor=anchor, size=10, cls="tick")
    if label:
        mid = (top + bottom) / 2
        canvas.text(
            label_x, mid, label, size=11, cls="axis-label",
            extra=f' transform="rotate(-90 {px(label_x)} {px(mid)})"',
        )


def svg_document(chart: ChartSpec) -> str:
    chart.validate()
    canvas = _Canvas(chart)
    width, height = chart.width_px, chart.height_px
    grouped = chart.kind == "totals_grouped"
    top, bottom_margin, left = 56, 56, 72
    right = 72 if grouped else 24
    plot_w = max(1, width - left - right)
    bottom = height - bottom_margin
    plot_h = max(1, bottom - top)

    canvas.text(width / 2, 28, chart.title, size=16, cls="title", extra=' font-weight="bold"')
    canvas.line(left, bottom, left + plot_w, bottom)

    if not grouped:
        _, points = chart.series[0]
        vmax = nice_max(max(value for _, value in points))
        _y_axis(canvas, left, top, bottom, vmax, "end", chart.y_label, 18)
        slot = plot_w / len(points)
        bar_w = slot * 0.6
        for i, (name, value) in enumerate(points):
            x = left + i * slot + (slot - bar_w) / 2
            bar_h = round(value / vmax * plot_h, 2)
            canvas.rect(x, bottom - bar_h, bar_w, bar_h, PALETTE[0])
            canvas.text(x + bar_w / 2, bottom - bar_h - 6, fmt(value), size=11, cls="value")
            canvas.text(x + bar_w / 2, bottom + 18, name, cls="category")
        return canvas.document()

    metrics = [name for name, _ in chart.series[0][1]]
    scales = [
        nice_max(max(dict(points)[metric] for _, points in chart.series)) for metric in metrics
    ]
    _y_axis(canvas, left, top, bottom, scales[0], "end", METRIC_LABELS.get(metrics[0], metrics[0]), 18)
    if len(metrics) > 1:
        _y_axis(
            canvas, left + plot_w, top, bottom, scales[1], "start",
            METRIC_LABELS.get(metrics[1], metrics[1]), width - 12,
        )

    slot = plot_w / len(chart.series)
    bar_w = slot * 0.7 / len(metrics)
    for i, (label, points) in enumerate(chart.series):
        values = dict(points)
        for j, metric in enumerate(metrics):
            x = left + i * slot + slot * 0.15 + j * bar_w
            bar_h = round(values[metric] / scales[j] * plot_h, 2)
            canvas.rect(x, bottom - bar_h, bar_w, bar_h, PALETTE[j % len(PALETTE)])
            canvas.text(x + bar_w / 2, bottom - bar_h - 6, fmt(values[metric]), size=10, cls="value")
        canvas.text(left + i * slot + slot / 2, bottom + 18, label, size=11, cls="category")

    legend_x = left + plot_w - 150
    for j, metric in enumerate(metrics):
        y = top - 20 + j * 14 - 10 * (len(metrics) - 1)
        canvas.rect(legend_x, y - 9, 10, 10, PALETTE[j % len(PALETTE)], cls="legend-swatch")
        canvas.text(legend_x + 14, y, METRIC_LABELS.get(metric, metric), anchor="start", size=10, cls="legend")
    return canvas.document()


def render_svg(chart: ChartSpec, path):
    document = svg_document(chart)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(document)


def result_chart(result: AnalysisResult, model: CostModel, mode="counts", **kwargs) -> ChartSpec:
    """Per-category bars of one protocol: occurrence counts or ms subtotals."""
    if mode not in CHART_MODES:
        raise ChartError(f"unknown chart mode {mode!r} (expected counts or costs)")
    if mode == "counts":
        points = tuple((model.symbol(c), float(result.counts[c])) for c in CATEGORIES)
        y_label = "Occurrences"
    else:
        subtotals = result.subtotals(model)
        points = tuple((model.symbol(c), float(subtotals[c])) for c in CATEGORIES)
        y_label = "Computation (ms)"
    return ChartSpec(
        title=f"{result.protocol_name}: {'operation counts' if mode == 'counts' else 'cost per operation'}",
        kind="per_category_single",
        series=((result.protocol_name, points),),
        y_label=y_label,
        **kwargs,
    )


def comparison_chart(table, title="Protocol comparison", **kwargs) -> ChartSpec:
    """Grouped computation and communication totals, one group per protocol."""
    if isinstance(table, ComparisonSet):
        table = compare(table)
    assert isinstance(table, ComparisonTable)
    series = tuple(
        (
            row.protocol_name,
            (("computation_ms", float(row.computation_ms)), ("communication", float(row.communication))),
        )
        for row in table.rows
    )
    kwargs.setdefault("width_px", max(640, 110 * len(series) + 144))
    return ChartSpec(title=title, kind="totals_grouped", series=series, **kwargs)
