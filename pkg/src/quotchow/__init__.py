"""Equivariant Chow rings of quot schemes on P^1 by localization."""

from .chern import chern_localizations, kunneth_components
from .chow import (
    LocalizedClass,
    RelationInstance,
    betti_numbers,
    check_membership,
    evain_sum_check,
    generate_relations,
    graded_dimension,
    triangular_basis,
)
from .curves import build_multigraph, classify_parallel, curve_generators, curves_at
from .fixed_points import FixedPoint, QuotParams, enumerate_fixed_points, tangent_weights
from .poly import Character, Direction, Polynomial

__version__ = "0.1.0"
