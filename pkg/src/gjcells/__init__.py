"""Exact parametric minimality and extremality tests for cut-generating functions.

The library runs the tests over a parametric ordered field, records every
comparison, and turns the record into a semialgebraic cell; a breadth-first
search over walls assembles the cell complex of a family.
"""
from .bfs import CellComplex, SliceSpec, bfs_complex, classify, find_neighbor_point, region_union_description
from .cells import Cell, MonomialMap, build_cell, cell_contains, cell_walls, linearize, remove_redundancy
from .families import FAMILIES, get_family
from .field import ParamContext, ParamElement, field_new
from .gomory import Verdict, classify_params, extremality_test, minimality_test
from .oracle import grid_oracle_extremality
from .polys import MultiPoly, RatFunc, parse_poly, poly_gcd, squarefree_factor
from .pwl import NotConstructible, PWLPeriodic, piecewise_from_breakpoints_values

__version__ = "0.1.0"

__all__ = [
    "Cell",
    "CellComplex",
    "FAMILIES",
    "MonomialMap",
    "MultiPoly",
    "NotConstructible",
    "PWLPeriodic",
    "ParamContext",
    "ParamElement",
    "RatFunc",
    "SliceSpec",
    "Verdict",
    "bfs_complex",
    "build_cell",
    "cell_contains",
    "cell_walls",
    "classify",
    "classify_params",
    "extremality_test",
    "field_new",
    "find_neighbor_point",
    "get_family",
    "grid_oracle_extremality",
    "linearize",
    "minimality_test",
    "parse_poly",
    "piecewise_from_breakpoints_values",
    "poly_gcd",
    "region_union_description",
    "remove_redundancy",
    "squarefree_factor",
]
