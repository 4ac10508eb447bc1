"""Verified numerics for Foguel-type block operators.

Constructs ``R = [[V*, T], [0, V]]`` over finite-dimensional complex spaces
and checks, to controlled tolerance, the identities that govern it: the
closed-form norm, the spectral correspondence between ``R R*`` and ``T T*``,
explicit resolvent and inverse blocks, the dilation/compression norm bound
for contraction slots, the block power/polynomial calculus, and the
Schur-complement positivity characterization of the norm.
"""

from .dilation import (
    DilationLift,
    Polynomial,
    PolyBoundReport,
    compress_generalized,
    foguel_power,
    generalized_foguel,
    halmos_dilation,
    lift_foguel,
    poly_apply,
    power_offdiag,
    tilde_deriv_bound,
    verify_poly_bound,
)
from .errors import (
    BoundViolationError,
    FoguelError,
    InternalConsistencyError,
    NotPositiveSemidefiniteError,
    SingularMatrixError,
    ValidationError,
)
from .experiments import (
    EXPERIMENTS,
    ExperimentConfig,
    ExperimentReport,
    TrialRecord,
    emit_report,
    run_experiment,
    write_report,
)
from .linalg import (
    MultisetComparison,
    Tolerance,
    adjoint,
    hermitian_eigs,
    hermitian_eigvals,
    multiset_match,
    operator_norm,
    psd_sqrt,
    solve_inverse,
)
from .models import (
    FoguelOperator,
    SeededGenerator,
    build_foguel,
    embed_corner,
    ginibre,
    gram,
    haar_unitary,
    random_contraction,
    truncated_shift,
)
from .schur import (
    NormBisection,
    PositivityCertificate,
    foguel_positivity,
    neumann_eval,
    norm_by_bisection,
    scalar_criterion,
    schur_complement,
)
from .spectral import (
    ResolventBlocks,
    SpectralMapReport,
    forward_map,
    foguel_gram_inverse,
    foguel_inverse,
    foguel_norm_closed,
    gram_minus_identity_inverse,
    inverse_branches,
    resolvent_blocks,
    symbol_norm_from_foguel,
    verify_spectral_mapping,
)

__version__ = "0.1.0"

__all__ = [
    "BoundViolationError",
    "DilationLift",
    "EXPERIMENTS",
    "ExperimentConfig",
    "ExperimentReport",
    "FoguelError",
    "FoguelOperator",
    "InternalConsistencyError",
    "MultisetComparison",
    "NormBisection",
    "NotPositiveSemidefiniteError",
    "PolyBoundReport",
    "Polynomial",
    "PositivityCertificate",
    "ResolventBlocks",
    "SeededGenerator",
    "SingularMatrixError",
    "SpectralMapReport",
    "Tolerance",
    "TrialRecord",
    "ValidationError",
    "adjoint",
    "build_foguel",
    "compress_generalized",
    "embed_corner",
    "emit_report",
    "foguel_gram_inverse",
    "foguel_inverse",
    "foguel_norm_closed",
    "foguel_positivity",
    "foguel_power",
    "forward_map",
    "generalized_foguel",
    "ginibre",
    "gram",
    "gram_minus_identity_inverse",
    "haar_unitary",
    "halmos_dilation",
    "hermitian_eigs",
    "hermitian_eigvals",
    "inverse_branches",
    "lift_foguel",
    "multiset_match",
    "neumann_eval",
    "norm_by_bisection",
    "operator_norm",
    "poly_apply",
    "power_offdiag",
    "psd_sqrt",
    "random_contraction",
    "resolvent_blocks",
    "run_experiment",
    "scalar_criterion",
    "schur_complement",
    "solve_inverse",
    "symbol_norm_from_foguel",
    "tilde_deriv_bound",
    "truncated_shift",
    "verify_poly_bound",
    "verify_spectral_mapping",
    "write_report",
]
