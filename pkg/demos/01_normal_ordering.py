"""Normal ordering, commutators and number states.

Everything is exact: coefficients live in Q(i, sqrt2), and number states keep
their sqrt(n!) normalization as a single square root.
"""

from fractions import Fraction

from algebraic_sho import A, AD, H, P, X, FockKetExpansion, apply_to_ket, commutator, matrix_element, normal_order

# Moving an annihilator past a creator leaves the identity behind.
print("a ad        =", normal_order(["a", "ad"]))
print("a^2 ad^2    =", A**2 * AD**2)

# The canonical commutators follow from that single rule.
print("[a, ad]     =", commutator(A, AD))
print("[x, p]      =", commutator(X, P))
for n in range(1, 5):
    print(f"[a, ad^{n}]   =", commutator(A, AD**n))

# H = ad a + 1/2 raises the energy of ad by one quantum: [H, ad] = ad.
print("H           =", H)
print("[H, ad]     =", commutator(H, AD))

# Number states are eigenvectors of H; matrix elements come out exact.
three = FockKetExpansion.number_state(3)
print("H|3> = 7/2 |3>:", apply_to_ket(H, three) == three.scale(Fraction(7, 2)))
print("<2|a|3>     =", matrix_element(2, A, 3))
print("<1|x|0>     =", matrix_element(1, X, 0))
