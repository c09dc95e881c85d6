"""Exact normalized volumes and monomial-ideal invariants of toric singularities."""

from .errors import (
    DomainError,
    EmptyIdeal,
    GermMismatch,
    Infeasible,
    InvalidGerm,
    InvariantViolation,
    IrrationalMode,
    NoInteriorStart,
    NotFullDimensional,
    NotPrimary,
    NotQGorenstein,
    NotStronglyConvex,
    ToricError,
    Unbounded,
    UnboundedObjective,
    UnsupportedRank,
)
from .geometry.cone import Cone, dual_cone
from .germ import ToricGerm, build_germ, orthant
from .ideals import (
    MonomialIdeal,
    contains,
    covolume,
    ideal_sum,
    integral_closure,
    lct,
    lct_with_witness,
    maximal_ideal,
    multiplicity,
    normalized_multiplicity,
    power,
    product,
)
from .minimizer import MinimizationReport, MinimizerConfig, minimize, objective, rationality_probe
from .sequences import GradedSequence, check_graded, lct_sequence, mult_sequence
from .valuations import (
    ToricValuation,
    colength,
    log_discrepancy,
    normalized_volume,
    valuation_ideal,
    volume,
)

__version__ = "0.1.0"
