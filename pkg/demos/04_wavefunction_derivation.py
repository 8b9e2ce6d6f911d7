"""Position and momentum wavefunctions from operator identities alone.

The pipeline expresses <x|n> as a vacuum matrix element, moves every
exponential through (ad)^n with the braiding relation, lets the eigenbra and
the vacuum absorb what they annihilate, and reads off a Hermite polynomial.
No derivative is taken anywhere.
"""

from algebraic_sho.scalars import UnitSystem
from algebraic_sho.wavefunctions import (
    derive_momentum_wavefunction,
    derive_position_wavefunction,
    evaluate,
    hermite_recurrence,
    hermite_reduction,
    inner_product,
)

psi3 = derive_position_wavefunction(3)
print("derivation trace for psi_3:")
for step, detail in psi3.trace:
    print(f"  {step:<34} {detail}")

print(psi3.formula())
print(psi3.formula(UnitSystem("symbolic-SI")))
print(derive_momentum_wavefunction(3).to_json())

# Two independent routes to the Hermite polynomials agree.
for n in range(7):
    assert hermite_reduction(n) == hermite_recurrence(n)
    print(f"H_{n}: {hermite_recurrence(n)}")

# Normalization is checked with exact Gaussian moments, powers of pi cancelling formally.
states = [derive_position_wavefunction(n) for n in range(5)]
for m, f in enumerate(states):
    print(" ".join(str(inner_product(f, g)) for g in states))

print("psi_0..3 at xi = 0, 1:", [evaluate(f, [0.0, 1.0]).round(6).tolist() for f in states[:4]])
