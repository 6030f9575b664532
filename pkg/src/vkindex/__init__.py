"""Gauss-diagram engine for virtual knots, their index invariants and unknotting index.

Submodules:

``gauss``        diagrams, the text format, crossing change and virtualization
``invariants``   crossing index, n-th writhe, affine index polynomial, span, bounds
``moves``        Reidemeister moves, simplification and triviality search
``families``     parametric diagram families with self-checked profiles
``unknotting``   plans, certificates, dictionary-order search, theorem checks
``cli``          the ``vk`` command
"""

from .gauss import (
    FlatDiagram,
    GaussCodeError,
    GaussDiagram,
    crossing_change,
    flatten,
    from_json,
    parse_gauss_code,
    serialize,
    to_json,
    virtualize,
)
from .invariants import (
    UnknottingIndex,
    WritheVector,
    affine_index_polynomial,
    index,
    index_by_linking,
    indices,
    lower_bound_knot,
    lower_bound_link,
    minimal_crossing_check,
    span_total,
    writhe_vector,
)
from .moves import Budget, Move, MoveTrace, apply_move, find_moves, flat_is_trivial, greedy_simplify, is_trivial
from .families import FamilySpec, distinguish, generate, single_virtualization_scan
from .unknotting import (
    IndexInterval,
    UnknottingCertificate,
    UnknottingPlan,
    apply_plan,
    certify,
    search_min,
    verify_theorem,
    virtualization_lower_bound,
)

__version__ = "0.1.0"
