"""The factorization ladder: spectrum without solving a differential equation.

H is written as A0^dag A0 + E0.  Swapping the factors gives the next
auxiliary Hamiltonian, which is refactorized the same way; the constants that
fall out are the energy levels.
"""

from fractions import Fraction

from algebraic_sho.factorization import (
    build_ladder,
    check_intertwining,
    choose_superpotential,
    dialect_ops,
    eigenstate,
    norm_product,
    schrodinger_ops,
)
from algebraic_sho.operators import H, apply_to_ket

w = choose_superpotential()
print(f"linear superpotential with k k' = {w.k_product}, ground energy {w.ground_energy()}")

a0, a0d = schrodinger_ops()
print("A0          =", a0)
print("A0^dag      =", a0d)
print("A0^dag A0 + 1/2 == H:", a0d * a0 + Fraction(1, 2) == H)

ladder = build_ladder(6)
for j, (e, h) in enumerate(zip(ladder.energies, ladder.hamiltonians)):
    print(f"H_{j} = {h}    E_{j} = {e}")

print("intertwining residuals:", [str(check_intertwining(ladder, j)) for j in range(5)])

# The norm of A_j ... A_0 |psi> is a product of (E - E_k); it must vanish or be positive.
for energy in (Fraction(1, 2), Fraction(5, 2), Fraction(3)):
    print(f"norm products at E={energy}:", [str(norm_product(energy, j)) for j in range(4)])

ket = eigenstate(4)
print("H |4> = 9/2 |4>:", apply_to_ket(H, ket) == ket.scale(Fraction(9, 2)))

# Historical notations written in terms of p and q reduce to the same ladder pair.
for dialect in ("dirac1947", "born_jordan"):
    lowering, raising = dialect_ops(dialect)
    print(f"{dialect}: lowering {lowering}, raising {raising}")
