"""Exact Alon-Tarsi numbers and graph-polynomial coefficients for small graphs and toroidal grids."""

from .eisenstein import EisensteinInt, unit_root
from .graphs import Graph, Orientation, TorusSpec, cartesian_product, make_cycle, make_torus
from .polycoeff import alon_tarsi_number, coefficient_formula, coefficient_of, expand
from .transfer import at_torus, build_matrix, is_antihermitian, torus_coefficient, trace_power

__all__ = [
    "EisensteinInt",
    "Graph",
    "Orientation",
    "TorusSpec",
    "alon_tarsi_number",
    "at_torus",
    "build_matrix",
    "cartesian_product",
    "coefficient_formula",
    "coefficient_of",
    "expand",
    "is_antihermitian",
    "make_cycle",
    "make_torus",
    "torus_coefficient",
    "trace_power",
    "unit_root",
]
