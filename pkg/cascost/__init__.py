"""Static computation and communication cost analyzer for CAS+ protocols."""
from . import casplus
from .analyzer import AnalysisResult, OperationCounts, analyze, analyze_file
from .model import CostCategory, CostModel, default_model, load_model, save_model
from .version import __version__  # noqa: F401
