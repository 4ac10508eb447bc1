"""Operator factories and the Foguel block operator they feed.

Provides seeded samplers for Haar unitaries, truncated unilateral shifts,
random contractions and Gaussian symbols, plus :class:`FoguelOperator`,
the validated pair ``(V, T)`` carrying the block matrix
``R = [[V*, T], [0, V]]`` and its Gram operator ``R R*``.

In finite dimension every isometry is unitary, so exact-identity
experiments draw Haar unitaries for the ``V`` slot; the unilateral shift is
modeled by :func:`truncated_shift`, whose rank-one isometry defect is
recorded rather than hidden.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import InternalConsistencyError, ValidationError
from .linalg import adjoint, as_matrix, operator_norm, require_square

#: Isometry defect accepted by strict-mode construction.
ISOMETRY_TOL = 1e-10

#: Deviation allowed between the Gram block formula and the direct product.
GRAM_SELFCHECK_TOL = 1e-12


@dataclass(frozen=True)
class SeededGenerator:
    """Reproducible random source keyed by ``(seed, stream_id)``.

    Identical key pairs replay identical draw sequences; distinct stream ids
    give statistically independent streams, so per-trial substreams never
    need coordination.
    """

    seed: int
    stream_id: int = 0

    @cached_property
    def rng(self) -> np.random.Generator:
        return np.random.default_rng([int(self.seed), int(self.stream_id)])

    def substream(self, stream_id: int) -> "SeededGenerator":
        return SeededGenerator(self.seed, stream_id)

    def complex_gaussian(self, rows: int, cols: int | None = None) -> np.ndarray:
        """Matrix of iid standard complex Gaussians (variance 1 per entry)."""
        cols = rows if cols is None else cols
        re = self.rng.standard_normal((rows, cols))
        im = self.rng.standard_normal((rows, cols))
        return (re + 1j * im) / np.sqrt(2.0)

    def uniform(self, low: float, high: float) -> float:
        return float(self.rng.uniform(low, high))


def _require_dim(n: int) -> int:
    n = int(n)
    if n < 1:
        raise ValidationError(f"dimension must be >= 1, got {n}")
    return n


def ginibre(n: int, gen: SeededGenerator) -> np.ndarray:
    """n x n matrix with iid standard complex Gaussian entries."""
    return gen.complex_gaussian(_require_dim(n))


def haar_unitary(n: int, gen: SeededGenerator) -> np.ndarray:
    """Haar-distributed n x n unitary.

    Orthonormalizes a Ginibre sample by QR and corrects the phase ambiguity
    with the diagonal of R, which makes the factorization unique and the
    distribution exactly Haar.
    """
    z = ginibre(n, gen)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r).copy()
    d[d == 0] = 1.0  # zero diagonal has probability zero; keep the phase fix total
    return q * (d / np.abs(d))


def truncated_shift(n: int) -> np.ndarray:
    """Finite section of the unilateral shift: e_i -> e_{i+1}, e_n -> 0.

    ``S* S = diag(1, ..., 1, 0)`` exactly, so the isometry defect is rank one
    and has norm one for every n.
    """
    return np.eye(_require_dim(n), k=-1, dtype=np.complex128)


def random_contraction(n: int, gen: SeededGenerator) -> np.ndarray:
    """Random contraction built by clipping Ginibre singular values at 1.

    Clipping (rather than rescaling by the norm) produces contractions whose
    norm is exactly 1 most of the time, which stresses norm inequalities at
    their boundary.
    """
    z = ginibre(n, gen)
    u, s, vh = np.linalg.svd(z)
    return (u * np.minimum(s, 1.0)) @ vh


@dataclass(frozen=True, eq=False)
class FoguelOperator:
    """Validated pair ``(V, T)`` with cached block assembly.

    ``matrix`` is the 2n x 2n block operator ``[[V*, T], [0, V]]`` and
    ``gram`` its Gram operator ``matrix @ matrix*``, assembled from the
    explicit block formula and self-checked against the direct product.
    """

    v: np.ndarray
    t: np.ndarray
    isometry_defect: float = field(default=0.0)

    @property
    def dim(self) -> int:
        return self.v.shape[0]

    @cached_property
    def matrix(self) -> np.ndarray:
        n = self.dim
        r = np.zeros((2 * n, 2 * n), dtype=np.complex128)
        r[:n, :n] = adjoint(self.v)
        r[:n, n:] = self.t
        r[n:, n:] = self.v
        return r

    @cached_property
    def gram(self) -> np.ndarray:
        v, t = self.v, self.t
        vs = adjoint(v)
        ts = adjoint(t)
        top_left = vs @ v + t @ ts  # equals I + T T* when V is an isometry
        top_right = t @ vs
        bottom_right = v @ vs
        n = self.dim
        g = np.zeros((2 * n, 2 * n), dtype=np.complex128)
        g[:n, :n] = top_left
        g[:n, n:] = top_right
        g[n:, :n] = adjoint(top_right)
        g[n:, n:] = bottom_right
        g = (g + adjoint(g)) / 2.0

        direct = self.matrix @ adjoint(self.matrix)
        scale = 1.0 + operator_norm(self.matrix) ** 2
        dev = operator_norm(g - direct)
        if dev > GRAM_SELFCHECK_TOL * scale:
            raise InternalConsistencyError(
                f"Gram block formula deviates from direct product by {dev:.3e} "
                f"(allowed {GRAM_SELFCHECK_TOL * scale:.3e}); block algebra bug"
            )
        return g


def build_foguel(v, t, require_isometry: bool = True) -> FoguelOperator:
    """Construct a :class:`FoguelOperator`, recording the isometry defect.

    With ``require_isometry`` (the default) the defect ``||V* V - I||`` must
    not exceed ``1e-10``; pass ``False`` for contraction-slot experiments
    such as the truncated shift, where the defect is part of the story.
    """
    v = require_square(v, "V")
    t = require_square(t, "T")
    if v.shape != t.shape:
        raise ValidationError(
            f"V and T must have matching shapes, got {v.shape} and {t.shape}"
        )
    defect = operator_norm(adjoint(v) @ v - np.eye(v.shape[0]))
    if require_isometry and defect > ISOMETRY_TOL:
        raise ValidationError(
            f"V is not an isometry: defect {defect:.3e} exceeds {ISOMETRY_TOL:.1e}"
        )
    return FoguelOperator(v=v, t=t, isometry_defect=defect)


def gram(op: FoguelOperator) -> np.ndarray:
    """Gram operator ``R R*`` of a Foguel operator (explicit block formula)."""
    return op.gram


def embed_corner(t, big_dim: int) -> np.ndarray:
    """Place ``t`` in the leading corner of a ``big_dim`` x ``big_dim`` zero matrix.

    The embedding preserves the operator norm exactly.
    """
    t = as_matrix(t)
    big_dim = _require_dim(big_dim)
    k_rows, k_cols = t.shape
    if k_rows > big_dim or k_cols > big_dim:
        raise ValidationError(
            f"cannot embed shape {t.shape} into dimension {big_dim}"
        )
    out = np.zeros((big_dim, big_dim), dtype=np.complex128)
    out[:k_rows, :k_cols] = t
    return out
