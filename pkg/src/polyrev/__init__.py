"""Exact symmetry and reversibility analysis of area-preserving polynomial maps
``x' = x + p1(y), y' = y + p2(x')``."""

__version__ = "0.1.0"

from .classify import AnalysisReport, ConditionId, analyze, detect  # noqa: E402
from .maps import GeneralisedStandardMap, PlanarPolyMap  # noqa: E402
from .parse import parse_map  # noqa: E402
from .poly import BiPoly, UniPoly  # noqa: E402

__all__ = [
    "AnalysisReport", "BiPoly", "ConditionId", "GeneralisedStandardMap", "PlanarPolyMap",
    "UniPoly", "analyze", "detect", "parse_map", "__version__",
]
