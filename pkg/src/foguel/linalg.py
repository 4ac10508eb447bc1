"""Dense complex matrix kernel used by every other module.

Everything here reduces to a Hermitian eigendecomposition so that one
well-tested LAPACK kernel (``numpy.linalg.eigh``) backs the operator norm,
the PSD square root and all positivity decisions.  All functions are pure:
inputs are never mutated and no module state exists, so concurrent use is
safe.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    NotPositiveSemidefiniteError,
    SingularMatrixError,
    ValidationError,
)

#: Maximum entrywise asymmetry accepted when validating a Hermitian matrix.
HERMITIAN_ATOL = 1e-12

#: Eigenvalues of a nominally PSD matrix may dip this far below zero before
#: the input is rejected; anything in [PSD_FLOOR, 0) is clamped to 0.
PSD_FLOOR = -1e-10

#: Reciprocal condition estimate below which a solve is refused.
RCOND_FLOOR = 1e-12


def as_matrix(m) -> np.ndarray:
    """Coerce ``m`` to a 2-D complex128 array and validate its shape."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    if a.ndim != 2:
        raise ValidationError(f"expected a matrix, got ndim={a.ndim}")
    if a.shape[0] < 1 or a.shape[1] < 1:
        raise ValidationError(f"matrix must be at least 1x1, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValidationError("matrix contains non-finite entries")
    return a


def adjoint(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return m.conj().T


def max_asymmetry(m: np.ndarray) -> float:
    """Largest entrywise deviation of ``m`` from its own adjoint."""
    return float(np.max(np.abs(m - adjoint(m))))


def require_square(m: np.ndarray, name: str = "matrix") -> np.ndarray:
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ValidationError(f"{name} must be square, got shape {m.shape}")
    return m


def require_hermitian(m, atol: float = HERMITIAN_ATOL) -> np.ndarray:
    """Validate Hermitian symmetry and return the symmetrized matrix.

    The returned matrix is ``(m + m*)/2``, which is exactly Hermitian in
    floating point; validation happens before symmetrization so that a
    genuinely asymmetric input is rejected, naming its worst entry.
    """
    m = require_square(m, "hermitian matrix")
    asym = max_asymmetry(m)
    if asym > atol:
        raise ValidationError(
            f"matrix is not Hermitian: max asymmetry {asym:.3e} exceeds {atol:.1e}"
        )
    return (m + adjoint(m)) / 2.0


def hermitian_eigs(m, *, atol: float = HERMITIAN_ATOL):
    """Eigendecomposition of a Hermitian matrix.

    Parameters
    ----------
    m : array_like
        Square Hermitian matrix (validated to ``atol`` max asymmetry).

    Returns
    -------
    w : ndarray of float
        Eigenvalues in ascending order.
    u : ndarray of complex
        Orthonormal eigenvectors, column ``u[:, i]`` belonging to ``w[i]``,
        so that ``m = u @ diag(w) @ u*``.
    """
    h = require_hermitian(m, atol)
    try:
        w, u = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise SingularMatrixError(f"eigendecomposition did not converge: {exc}") from exc
    return w, u


def hermitian_eigvals(m, *, atol: float = HERMITIAN_ATOL) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix (no eigenvectors)."""
    h = require_hermitian(m, atol)
    return np.linalg.eigvalsh(h)


def operator_norm(m) -> float:
    """Operator (spectral) norm: the largest singular value of ``m``.

    Computed as ``sqrt(lambda_max(m* m))`` so the result shares the Hermitian
    eigensolver with the rest of the kernel.
    """
    m = as_matrix(m)
    g = adjoint(m) @ m
    w = np.linalg.eigvalsh((g + adjoint(g)) / 2.0)
    return float(np.sqrt(max(float(w[-1]), 0.0)))


def psd_sqrt(p, *, floor: float = PSD_FLOOR) -> np.ndarray:
    """Hermitian PSD square root of a Hermitian PSD matrix.

    Eigenvalues in ``[floor, 0)`` are clamped to zero; an eigenvalue below
    ``floor`` raises :class:`NotPositiveSemidefiniteError` naming it.  The
    result ``s`` is exactly Hermitian and satisfies ``s @ s == p`` up to
    ``1e-9 * (1 + ||p||)``.
    """
    w, u = hermitian_eigs(p)
    wmin = float(w[0])
    if wmin < floor:
        raise NotPositiveSemidefiniteError(
            f"matrix is not PSD: min eigenvalue {wmin:.3e} below floor {floor:.1e}",
            min_eigenvalue=wmin,
        )
    s = (u * np.sqrt(np.clip(w, 0.0, None))) @ adjoint(u)
    return (s + adjoint(s)) / 2.0


def reciprocal_condition(m) -> float:
    """sigma_min / sigma_max of ``m``; 0.0 for the zero matrix."""
    s = np.linalg.svd(as_matrix(m), compute_uv=False)
    smax = float(s[0])
    if smax == 0.0:
        return 0.0
    return float(s[-1]) / smax


def solve_inverse(m, *, rcond_floor: float = RCOND_FLOOR) -> np.ndarray:
    """Two-sided inverse of a square matrix.

    Refuses matrices whose reciprocal condition estimate falls below
    ``rcond_floor``; callers treat that error as "the shift is too close to
    the spectrum" when inverting resolvent-type operators.
    """
    m = require_square(m)
    rcond = reciprocal_condition(m)
    if rcond < rcond_floor:
        raise SingularMatrixError(
            f"matrix is singular to working precision "
            f"(rcond={rcond:.3e} < {rcond_floor:.1e})",
            rcond=rcond,
        )
    return np.linalg.solve(m, np.eye(m.shape[0], dtype=np.complex128))


@dataclass(frozen=True)
class Tolerance:
    """Absolute/relative tolerance pair; at least one must be positive."""

    atol: float = 0.0
    rtol: float = 0.0

    def __post_init__(self):
        if not (np.isfinite(self.atol) and np.isfinite(self.rtol)):
            raise ValidationError("tolerances must be finite")
        if self.atol < 0 or self.rtol < 0:
            raise ValidationError("tolerances must be non-negative")
        if self.atol == 0 and self.rtol == 0:
            raise ValidationError("at least one tolerance must be positive")

    def bound(self, scale: float) -> float:
        """Admissible deviation for a quantity of magnitude ``scale``."""
        return self.atol + self.rtol * abs(scale)


@dataclass(frozen=True)
class MultisetComparison:
    """Outcome of comparing two real multisets after sorting."""

    matched: bool
    max_deviation: float
    worst_index: int


def multiset_match(a, b, tol: Tolerance) -> MultisetComparison:
    """Compare two real multisets up to tolerance.

    Both inputs are sorted ascending and compared elementwise, which is the
    canonical matching for real spectra.  Element ``i`` matches when
    ``|a_i - b_i| <= tol.atol + tol.rtol * max(|a_i|, |b_i|)``.

    Raises
    ------
    ValidationError
        If the lengths differ; a length mismatch signals a multiplicity bug
        upstream, never a numerical issue.
    """
    a = np.sort(np.asarray(a, dtype=float).ravel())
    b = np.sort(np.asarray(b, dtype=float).ravel())
    if a.shape != b.shape:
        raise ValidationError(
            f"multiset length mismatch: {a.shape[0]} vs {b.shape[0]}"
        )
    dev = np.abs(a - b)
    allowed = tol.atol + tol.rtol * np.maximum(np.abs(a), np.abs(b))
    worst = int(np.argmax(dev - allowed)) if dev.size else 0
    return MultisetComparison(
        matched=bool(np.all(dev <= allowed)),
        max_deviation=float(dev.max(initial=0.0)),
        worst_index=worst,
    )
