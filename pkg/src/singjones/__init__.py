"""Colored Jones invariants of singular links via the Kauffman bracket.

Main entry points:

* :func:`colored_jones` evaluates a singular link diagram at a color;
* :func:`st_invariant` is the closed form for the singular torus family;
* :func:`empirical_tail` and the closed-form series in :mod:`singjones.tails`
  study how these invariants stabilize as the color grows;
* :mod:`singjones.tl_oracle` is an independent brute-force evaluator.
"""
from .coeff import CACHE, delta, fusion_coef, lambda_coef, quantum_int, sixj, tet, theta
from .diagram import (ColoredGraph, GraphSum, SingularDiagram, braid_closure, diagram_from_pd,
                      load_fixture, parse_diagram, parse_graph, validate_graph)
from .errors import SkeinError
from .evaluate import colored_jones, expand_to_graphs, reduce_graph
from .families import st_bracket, st_diagram, st_invariant
from .qpoly import A, LaurentPoly, QSeries, RationalFn
from .tails import (agree_order, empirical_tail, false_theta, normalize_series,
                    tail_closed_first, tail_closed_second, verify_corollary)

__all__ = [
    "A", "CACHE", "ColoredGraph", "GraphSum", "LaurentPoly", "QSeries", "RationalFn",
    "SingularDiagram", "SkeinError", "agree_order", "braid_closure", "colored_jones",
    "delta", "diagram_from_pd", "empirical_tail", "expand_to_graphs", "false_theta",
    "fusion_coef", "lambda_coef", "load_fixture", "normalize_series", "parse_diagram",
    "parse_graph", "quantum_int", "reduce_graph", "sixj", "st_bracket", "st_diagram",
    "st_invariant", "tail_closed_first", "tail_closed_second", "tet", "theta",
    "validate_graph", "verify_corollary",
]
