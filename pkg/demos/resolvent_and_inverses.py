"""Explicit block inverses: the resolvent of R R*, R^{-1}, and (R R* - I)^{-1}.

Each witness is written down in closed block form and then multiplied out
against the operator it claims to invert; the residuals are what the
formulas are worth numerically.
"""

import numpy as np

import foguel as fg
from foguel.linalg import adjoint

print("=== scalar resolvent at lam = 4 ===")
op = fg.build_foguel([[1]], [[1]])
blocks = fg.resolvent_blocks(op, 4.0)
print(f"A = {blocks.a[0, 0].real:+.4f}, X = {blocks.x[0, 0].real:+.4f}, "
      f"B = {blocks.b[0, 0].real:+.4f}")
print("(R R* - 4 I) @ S =")
print(((op.gram - 4 * np.eye(2)) @ blocks.solution).real.round(14))
print(f"residual: {blocks.residual:.2e}")

print()
print("=== random dimension 6, shift chosen past the spectrum ===")
gen = fg.SeededGenerator(101)
v = fg.haar_unitary(6, gen)
t = fg.ginibre(6, gen)
op = fg.build_foguel(v, t)
mu_max = float(np.max(np.linalg.eigvalsh(t @ adjoint(t))))
lam = fg.inverse_branches(mu_max)[1] + 0.75
blocks = fg.resolvent_blocks(op, lam)
brute = fg.solve_inverse(op.gram - lam * np.eye(12))
print(f"lam = {lam:.6f}")
print(f"block-formula residual      : {blocks.residual:.3e}")
print(f"distance to LU brute force  : {fg.operator_norm(blocks.solution - brute):.3e}")

print()
print("=== the operator inverse [[V, -V T V*], [0, V*]] ===")
m = fg.foguel_inverse(op)
print(f"||R @ M - I||               : {fg.operator_norm(op.matrix @ m - np.eye(12)):.3e}")
g_inv = fg.foguel_gram_inverse(op)
print(f"||(R R*) @ (M* M) - I||     : {fg.operator_norm(op.gram @ g_inv - np.eye(12)):.3e}")

print()
print("=== (R R* - I)^{-1} exists exactly when T does ===")
w = fg.gram_minus_identity_inverse(op)
residual = fg.operator_norm((op.gram - np.eye(12)) @ w - np.eye(12))
print(f"invertible T: witness residual {residual:.3e}")

singular_t = np.diag([1.0, 1.0, 1.0, 1.0, 1.0, 0.0]).astype(complex)
op_singular = fg.build_foguel(v, singular_t)
try:
    fg.gram_minus_identity_inverse(op_singular)
except fg.SingularMatrixError as exc:
    print(f"rank-deficient T: refused as expected -> {exc}")
