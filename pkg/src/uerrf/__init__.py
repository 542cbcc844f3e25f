"""Recognition and construction of unit-edge rectangular-face grid drawings."""

from .drawing import GridDrawing, Model, canonicalize, extract_graph, validate
from .general import recognize
from .graph import Graph, GraphError, RotationSystem
from .io import emit_instance, parse_instance
from .oracle import EnumerationBudget, brute_recognize, enumerate_drawings
from .outcome import Constraints, RecognitionOutcome
from .svg import render_svg

__all__ = [
    "Constraints",
    "EnumerationBudget",
    "Graph",
    "GraphError",
    "GridDrawing",
    "Model",
    "RecognitionOutcome",
    "RotationSystem",
    "brute_recognize",
    "canonicalize",
    "emit_instance",
    "enumerate_drawings",
    "extract_graph",
    "parse_instance",
    "recognize",
    "render_svg",
    "validate",
]
