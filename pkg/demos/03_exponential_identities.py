"""Exponentials of affine ladder forms close in the Heisenberg group.

Because [A, B] is a number whenever A and B are affine in a and ad, the
Hadamard series stops after one term and the BCH formula is exact.
"""

from fractions import Fraction

from algebraic_sho.exponentials import (
    A_FORM,
    AD_FORM,
    bch_compose,
    bch_split,
    braid,
    conjugation_residual,
    hadamard_conjugate,
    translation_operator,
)
from algebraic_sho.expr import evaluate_text, format_group_element
from algebraic_sho.operators import AD, X
from algebraic_sho.scalars import SQRT2, XI

# Conjugating by exp(c a) shifts ad by c.
c = Fraction(1, 2)
print("exp(a/2) ad^3 exp(-a/2) =", hadamard_conjugate(A_FORM.scale(c), AD**3))

# Braiding: exp(A) exp(B) = exp(B) exp(A) exp([A, B]).
quarter = Fraction(1, 4)
print("braid(ad/4, a/4)        =", braid(AD_FORM.scale(quarter), A_FORM.scale(quarter)))

# The translation exp(-i xi p) moves the position eigenvalue by xi.
shift = translation_operator(XI)
print("translation exponent    =", shift.exponent)
print("x shifted by xi:", not conjugation_residual(shift, X, X + XI))

# Splitting and recombining produce the Gaussian prefactors of the wavefunction.
k = XI.scale(SQRT2.inverse())
print("split                   =", bch_split(A_FORM.scale(k) - AD_FORM.scale(k)))
print("recombine               =", format_group_element(bch_compose(AD_FORM.scale(-k), A_FORM.scale(-k))))

# The same calculus is available from the expression language.
print("exp(ad)*exp(a)          =", format_group_element(evaluate_text("exp(ad)*exp(a)")))
