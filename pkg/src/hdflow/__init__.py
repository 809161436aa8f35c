"""Exact computation of the Higgs-de Rham self-map on P^1 with four marked points.

Main entry points: ``FieldCtx`` for finite fields, ``SelfMapCtx`` and
``selfmap_eval``/``selfmap_rational`` for the map, ``Curve`` and
``xp_via_determinant`` for the Legendre curve side, ``functional_graph`` for
dynamics, and the ``check_*`` functions for the conjectured identities.
"""

from .conjectures import (
    ConjectureReport,
    check_commutativity,
    check_equ_main,
    check_symmetries,
    check_torsion_periodicity,
    check_var_conj,
    constant_c,
)
from .dynamics import OrbitGraph, export_graph, functional_graph, load_graph_json, orbit, periodic_points
from .ecurve import (
    Curve,
    CurvePoint,
    beta_vector,
    ec_add,
    ec_mul,
    ec_neg,
    factorization_check,
    lift_x,
    point_order,
    xp_via_determinant,
)
from .ff import INF, FieldCtx, FieldElement
from .poly import BiPoly, UniPoly
from .selfmap import (
    RationalMap,
    SelfMapCtx,
    alpha_vector,
    selfmap_closed_form,
    selfmap_eval,
    selfmap_rational,
)

__version__ = "0.1.0"

__all__ = [
    "BiPoly",
    "ConjectureReport",
    "Curve",
    "CurvePoint",
    "FieldCtx",
    "FieldElement",
    "INF",
    "OrbitGraph",
    "RationalMap",
    "SelfMapCtx",
    "UniPoly",
    "alpha_vector",
    "beta_vector",
    "check_commutativity",
    "check_equ_main",
    "check_symmetries",
    "check_torsion_periodicity",
    "check_var_conj",
    "constant_c",
    "ec_add",
    "ec_mul",
    "ec_neg",
    "export_graph",
    "factorization_check",
    "functional_graph",
    "lift_x",
    "load_graph_json",
    "orbit",
    "periodic_points",
    "point_order",
    "selfmap_closed_form",
    "selfmap_eval",
    "selfmap_rational",
    "xp_via_determinant",
]
