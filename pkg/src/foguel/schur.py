"""Norm recovery through Schur-complement positivity.

For ``M > 1`` the block operator ``M^2 I - R R*`` is PSD exactly when its
n x n Schur complement is, which reduces the 2n-dimensional norm question
``||R|| <= M`` to a positivity test on the symbol side.  For unitary ``V``
the reduction collapses to a closed form whose boundary reproduces the
Foguel norm formula, and a bisection on ``M`` recovers ``||R||`` from
positivity verdicts alone.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InternalConsistencyError, NotPositiveSemidefiniteError, ValidationError
from .linalg import (
    Tolerance,
    adjoint,
    hermitian_eigvals,
    operator_norm,
    require_hermitian,
    require_square,
    solve_inverse,
)
from .models import FoguelOperator
from .spectral import foguel_norm_closed

#: Minimum eigenvalue demanded of the lower-right block before inverting it.
POSITIVE_DEFINITE_FLOOR = 1e-12

#: The positivity level must exceed 1 by at least this much.
LEVEL_MARGIN = 1e-12

MAX_BISECTION_ITERATIONS = 60


def schur_complement(p, x, q, *, floor: float = POSITIVE_DEFINITE_FLOOR) -> np.ndarray:
    """Schur complement ``P - X Q^{-1} X*`` of ``[[P, X], [X*, Q]]``.

    ``Q`` must be Hermitian positive definite (min eigenvalue >= ``floor``);
    then the block matrix is PSD if and only if the complement is.
    """
    p = require_hermitian(p)
    q = require_hermitian(q)
    x = require_square(x, "X")
    q_min = float(hermitian_eigvals(q)[0])
    if q_min < floor:
        raise NotPositiveSemidefiniteError(
            f"lower-right block is not positive definite: min eigenvalue "
            f"{q_min:.3e} below {floor:.1e}",
            min_eigenvalue=q_min,
        )
    complement = p - x @ solve_inverse(q) @ adjoint(x)
    return (complement + adjoint(complement)) / 2.0


@dataclass(frozen=True, eq=False)
class PositivityCertificate:
    """Verdict on ``M^2 I - R R* >= 0`` via the reduced n x n condition."""

    level: float
    reduced_matrix: np.ndarray
    min_eigenvalue: float
    positive: bool
    direct_min_eigenvalue: float
    threshold: float


def foguel_positivity(
    op: FoguelOperator, level: float, *, tol_abs: float | None = None
) -> PositivityCertificate:
    """Test ``level^2 I - R R* >= 0`` by Schur reduction to the symbol side.

    The reduced matrix is
    ``level^2 I - V* V - T T* - T V* (level^2 I - V V*)^{-1} V T*``
    (``(level^2 - 1) I - T T* - ...`` when ``V`` is an isometry).  The
    verdict is cross-checked against the direct 2n x 2n eigenvalue test;
    the two may straddle the threshold only inside the singular band, and a
    confident disagreement raises :class:`InternalConsistencyError`.

    PSD is declared when the minimum eigenvalue is at least ``-tol_abs``
    with default ``1e-10 * (1 + level^2)``; an exact zero crossing at
    ``level = ||R||`` makes a signed band unavoidable.
    """
    level = float(level)
    if level <= 1.0 + LEVEL_MARGIN:
        raise ValidationError(
            f"positivity level must exceed 1 (the norm is never below 1), got {level}"
        )
    v_norm = operator_norm(op.v)
    if v_norm > 1.0 + 1e-10:
        raise ValidationError(
            f"positivity reduction requires a contraction in the V slot, "
            f"got norm {v_norm:.12g}"
        )
    if tol_abs is None:
        tol_abs = 1e-10 * (1.0 + level * level)

    v, t = op.v, op.t
    n = op.dim
    eye = np.eye(n, dtype=np.complex128)
    upper = level**2 * eye - adjoint(v) @ v - t @ adjoint(t)
    lower = level**2 * eye - v @ adjoint(v)
    reduced = schur_complement(upper, -(t @ adjoint(v)), lower)

    reduced_min = float(hermitian_eigvals(reduced)[0])
    direct = level**2 * np.eye(2 * n) - op.gram
    direct_min = float(hermitian_eigvals(direct)[0])

    verdict_reduced = reduced_min >= -tol_abs
    verdict_direct = direct_min >= -tol_abs
    if verdict_reduced != verdict_direct:
        if min(abs(reduced_min), abs(direct_min)) > tol_abs:
            raise InternalConsistencyError(
                f"reduced and direct positivity verdicts disagree at "
                f"level={level!r}: reduced min eig {reduced_min:.3e}, "
                f"direct min eig {direct_min:.3e}"
            )
        # borderline: both magnitudes sit in the singular band; trust the
        # reduced route, which is the one this module is about
    return PositivityCertificate(
        level=level,
        reduced_matrix=reduced,
        min_eigenvalue=reduced_min,
        positive=verdict_reduced,
        direct_min_eigenvalue=direct_min,
        threshold=tol_abs,
    )


def neumann_eval(v, t, level: float, order: int) -> np.ndarray:
    """Truncated Neumann evaluation of ``T V* (level^2 I - V V*)^{-1} V T*``.

    Sums ``level^{-2} * sum_{j=0}^{order} V (V V*)^j V* / level^{2j}``
    sandwiched between ``T`` and ``T*``.  Converges for ``level > 1`` and a
    contraction ``V``; for unitary ``V`` the limit is the closed form
    ``(level^2 - 1)^{-1} T T*`` and the truncation error decays
    geometrically with ratio ``level^{-2}``.
    """
    v = require_square(v, "V")
    t = require_square(t, "T")
    if v.shape != t.shape:
        raise ValidationError(
            f"V and T must have matching shapes, got {v.shape} and {t.shape}"
        )
    level = float(level)
    if level <= 1.0:
        raise ValidationError(
            f"Neumann series diverges for level <= 1, got {level}"
        )
    v_norm = operator_norm(v)
    if v_norm > 1.0 + 1e-10:
        raise ValidationError(
            f"Neumann evaluation requires a contraction, got norm {v_norm:.12g}"
        )
    order = int(order)
    if order < 0:
        raise ValidationError(f"truncation order must be >= 0, got {order}")

    projector = v @ adjoint(v)
    ratio = level ** (-2)
    term = projector.copy()  # (V V*)^{j+1} / level^{2j} at j = 0
    kernel = term.copy()
    for _ in range(order):
        term = (projector @ term) * ratio
        kernel = kernel + term
    kernel = kernel * ratio
    result = t @ kernel @ adjoint(t)
    return (result + adjoint(result)) / 2.0


def scalar_criterion(t: float, level: float) -> bool:
    """Scalar positivity criterion ``t <= (level^2 - 1) / level``.

    For unitary ``V`` and ``t = ||T||`` this is exactly when
    ``level^2 I - R R*`` is PSD, so the boundary level is the Foguel norm.
    """
    t = float(t)
    level = float(level)
    if t < 0:
        raise ValidationError(f"symbol norm must be >= 0, got {t}")
    if level <= 1.0:
        raise ValidationError(f"criterion level must exceed 1, got {level}")
    return t <= (level * level - 1.0) / level


@dataclass(frozen=True)
class NormBisection:
    """Result of recovering ``||R||`` from positivity verdicts alone."""

    value: float
    iterations: int
    lower: float
    upper: float


def norm_by_bisection(op: FoguelOperator, tol: Tolerance) -> NormBisection:
    """Bisect the positivity level to the norm of the Foguel operator.

    Brackets with a lower end just above 1 (where positivity fails for a
    nonzero symbol) and the closed-form norm bound plus one (provably
    positive), then bisects until the bracket width drops below
    ``tol.atol``.  A zero symbol short-circuits to the directly computed
    norm; a violated bracket invariant raises
    :class:`InternalConsistencyError`.
    """
    width_target = tol.atol if tol.atol > 0 else tol.rtol
    t_norm = operator_norm(op.t)
    closed = foguel_norm_closed(t_norm)
    if t_norm == 0.0 or closed - 1.0 < 1e-12:
        return NormBisection(
            value=operator_norm(op.matrix), iterations=0, lower=1.0, upper=closed
        )

    lower = 1.0 + min(1e-9, (closed - 1.0) / 2.0)
    upper = closed + 1.0
    if foguel_positivity(op, lower).positive:
        raise InternalConsistencyError(
            f"bracket invariant violated: positivity already holds at the "
            f"lower end {lower!r}"
        )
    if not foguel_positivity(op, upper).positive:
        raise InternalConsistencyError(
            f"bracket invariant violated: positivity fails at the upper end "
            f"{upper!r} above the closed-form bound"
        )

    iterations = 0
    while upper - lower > width_target and iterations < MAX_BISECTION_ITERATIONS:
        mid = (upper + lower) / 2.0
        if foguel_positivity(op, mid).positive:
            upper = mid
        else:
            lower = mid
        iterations += 1
    return NormBisection(
        value=(upper + lower) / 2.0, iterations=iterations, lower=lower, upper=upper
    )
