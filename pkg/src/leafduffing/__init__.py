"""Leaf functions, their hyperbolic counterparts, and exact solutions of the unforced Duffing equation."""

from .analysis import (
    extrema,
    period_boundaries,
    periods,
    residual_sweep,
    verify_identities,
)
from .errors import (
    DomainExceeded,
    InvalidBasis,
    InvalidSpec,
    IOFailure,
    LeafError,
    MissingB,
    NegativeRadicand,
    PoleProximity,
    QuadratureFailure,
    RootBracketFailure,
    UnsupportedType,
)
from .integrals import IntegralKind, clh2_closed_form, eval_integral
from .leaf import (
    DEFAULT_CONFIG,
    EvalConfig,
    LeafConstants,
    LeafKind,
    clear_caches,
    constants,
    eval_leaf,
    eval_leaf_derivative,
    eval_leaf_second_derivative,
    leaf_state,
    pole_of,
    quarter_period,
)
from .solutions import (
    Domain,
    DuffingCoefficients,
    SolutionSpec,
    SolutionType,
    coefficients,
    domain,
    evaluate,
    initial_state,
)

__all__ = [
    "DEFAULT_CONFIG",
    "Domain",
    "DomainExceeded",
    "DuffingCoefficients",
    "EvalConfig",
    "IOFailure",
    "IntegralKind",
    "InvalidBasis",
    "InvalidSpec",
    "LeafConstants",
    "LeafError",
    "LeafKind",
    "MissingB",
    "NegativeRadicand",
    "PoleProximity",
    "QuadratureFailure",
    "RootBracketFailure",
    "SolutionSpec",
    "SolutionType",
    "UnsupportedType",
    "clear_caches",
    "clh2_closed_form",
    "coefficients",
    "constants",
    "domain",
    "eval_integral",
    "eval_leaf",
    "eval_leaf_derivative",
    "eval_leaf_second_derivative",
    "evaluate",
    "extrema",
    "initial_state",
    "leaf_state",
    "period_boundaries",
    "periods",
    "pole_of",
    "quarter_period",
    "residual_sweep",
    "verify_identities",
]
