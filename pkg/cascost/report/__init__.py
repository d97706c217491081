"""Text, CSV, JSON and SVG renderings of analysis results."""
from .chart import ChartSpec, comparison_chart, render_svg, result_chart, svg_document
from .export import export_csv, render_json, write_csv
from .table import render_model, render_role_table, render_table
