"""The Foguel norm formula, from the scalar golden-ratio case to random draws.

The block operator R = [[V*, T], [0, V]] with unitary V has operator norm
(t + sqrt(t^2 + 4)) / 2 where t = ||T||.  This script shows the formula on
the smallest possible example and then stress-tests it on random unitaries
and Gaussian symbols of growing dimension.
"""

import numpy as np

import foguel as fg

print("=== scalar case: V = [1], T = [1] ===")
op = fg.build_foguel([[1]], [[1]])
print("R =")
print(op.matrix.real)
print(f"operator norm      : {fg.operator_norm(op.matrix):.12f}")
print(f"closed-form value  : {fg.foguel_norm_closed(1.0):.12f}")
print(f"golden ratio       : {(1 + np.sqrt(5)) / 2:.12f}")

print()
print("=== the norm map and its inverse ===")
for t in (0.0, 0.5, 1.0, 1.5, 4.0):
    phi = fg.foguel_norm_closed(t)
    back = fg.symbol_norm_from_foguel(phi)
    print(f"  ||T|| = {t:4.1f} -> ||R|| = {phi:.8f} -> back to ||T|| = {back:.8f}")

print()
print("=== random draws ===")
print(f"{'dim':>4} {'||T||':>10} {'||R|| measured':>16} {'||R|| predicted':>16} {'deviation':>11}")
for n in (1, 2, 4, 8, 16, 32, 64):
    gen = fg.SeededGenerator(2024, n)
    v = fg.haar_unitary(n, gen)
    t = fg.ginibre(n, gen)
    op = fg.build_foguel(v, t)
    measured = fg.operator_norm(op.matrix)
    predicted = fg.foguel_norm_closed(fg.operator_norm(t))
    print(
        f"{n:>4} {fg.operator_norm(t):>10.5f} {measured:>16.12f} "
        f"{predicted:>16.12f} {abs(measured - predicted):>11.2e}"
    )

print()
print("The identity holds to machine precision at every dimension.")
