"""Finite sections of the unilateral shift and how fast their norms saturate.

The truncated shift is a contraction (not an isometry: one defect of rank
one), so the closed-form norm is only an upper bound at finite dimension.
Embedding a fixed small symbol into growing truncations shows the norms
increase monotonically -- each smaller operator is a corner compression of
the next -- and hit the bound to machine precision almost immediately.
"""

import foguel as fg

t_small = fg.ginibre(4, fg.SeededGenerator(31))
t_norm = fg.operator_norm(t_small)
cap = fg.foguel_norm_closed(t_norm)

print(f"fixed 4x4 symbol with ||T|| = {t_norm:.8f}")
print(f"closed-form cap (exact only in infinite dimension): {cap:.12f}")
print()
print(f"{'N':>5} {'isometry defect':>16} {'||R(N)||':>16} {'gap to cap':>12}")
previous = 0.0
for big in (4, 6, 8, 12, 16, 64, 256):
    shift = fg.truncated_shift(big)
    op = fg.build_foguel(
        shift, fg.embed_corner(t_small, big), require_isometry=False
    )
    value = fg.operator_norm(op.matrix)
    marker = "" if value + 1e-12 >= previous else "  <- monotonicity violated!"
    print(f"{big:>5} {op.isometry_defect:>16.1f} {value:>16.12f} {cap - value:>12.3e}{marker}")
    previous = value

print()
print("The shift defect stays rank one at every N, yet the norm converges")
print("to the cap at an exponential rate: by N = 16 the gap is below 1e-12.")
