"""Exact and numerical tools for real-algebraic CR manifolds in C^n."""

from .gaussrat import GaussRat
from .poly import Poly, Ring, parse_poly, format_poly
from .ideal import Ideal, groebner, ideal_member, eliminate
from .manifold import GraphManifold, ImplicitManifold, graph_solve
from .series import SeriesMap

__version__ = "0.1.0"

__all__ = ["GaussRat", "Poly", "Ring", "parse_poly", "format_poly", "Ideal", "groebner",
           "ideal_member", "eliminate", "GraphManifold", "ImplicitManifold", "graph_solve",
           "SeriesMap"]
