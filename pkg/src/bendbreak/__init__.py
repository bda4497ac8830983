"""Exact curve counts from one-parameter degenerations of rational curves.

Modules: ``lattice`` (classes on the plane blown up in at most six points),
``engine`` (the boundary-sum evaluator and the count cache),
``plane_counts``, ``cross_ratio``, ``genus2`` and ``cli``.
"""

from .engine import BoundaryTerm, CountCache, CountKey, binomial, theorem1_sum
from .lattice import NSClass, SurfaceModel, parse_class
from .plane_counts import SeedTable, del_pezzo_count, n_d

__version__ = "0.1.0"

__all__ = [
    "BoundaryTerm", "CountCache", "CountKey", "NSClass", "SeedTable", "SurfaceModel",
    "binomial", "del_pezzo_count", "n_d", "parse_class", "theorem1_sum",
]
