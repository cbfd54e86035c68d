"""Numerical checkers: one per inequality, each returning an
:class:`InequalityReport`."""

from ._common import DEFAULT_SHIFT_GRID
from .applications import (
    DOMINANCE_DISPLAYS,
    RANK_ONE_FORMS,
    check_hyper_dominance,
    check_theorem_4_1,
    check_theorem_4_2,
)
from .elementary import (
    VARIANTS,
    QuadrupleInstance,
    check_double_monotonicity,
    check_theorem_2_6,
)
from .report import InequalityReport, Tolerance
from .triple import SchattenTriple
from .weighted import (
    COROLLARY_3_3_CASES,
    COROLLARY_3_4_FORMS,
    FORMS,
    check_corollary_3_3,
    check_corollary_3_4,
    check_theorem_3_1,
    corollary_3_3_triple,
    theorem_3_1_sides,
)

__all__ = [
    "DEFAULT_SHIFT_GRID",
    "InequalityReport",
    "Tolerance",
    "SchattenTriple",
    "QuadrupleInstance",
    "check_double_monotonicity",
    "check_theorem_2_6",
    "check_theorem_3_1",
    "theorem_3_1_sides",
    "check_corollary_3_3",
    "corollary_3_3_triple",
    "check_corollary_3_4",
    "check_theorem_4_1",
    "check_theorem_4_2",
    "check_hyper_dominance",
    "VARIANTS",
    "FORMS",
    "COROLLARY_3_3_CASES",
    "COROLLARY_3_4_FORMS",
    "RANK_ONE_FORMS",
    "DOMINANCE_DISPLAYS",
]
