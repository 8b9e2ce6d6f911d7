"""Exponentials of affine ladder forms.

Exponents ``alpha*ad + beta*a + gamma`` have central commutators, so the
Hadamard series stops after one commutator, the braiding relation and the
two-term BCH formula are exact, and products of such exponentials close in
the Heisenberg group.  Exponentials are never expanded as series here: they
only exist as :class:`GroupElement` values with exact composition rules.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import UnsupportedExponent
from .operators import A, AD, IDENTITY_WORD, P, X, LadderWord, OperatorPoly
from .scalars import I, FieldScalar, ScalarPoly

PolyLike = ScalarPoly | FieldScalar | int | Fraction

_HALF = Fraction(1, 2)


def _poly(value: PolyLike) -> ScalarPoly:
    return ScalarPoly.coerce(value)


@dataclass(frozen=True)
class AffineForm:
    """alpha * ad + beta * a + gamma."""

    alpha: ScalarPoly = field(default_factory=ScalarPoly)
    beta: ScalarPoly = field(default_factory=ScalarPoly)
    gamma: ScalarPoly = field(default_factory=ScalarPoly)

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "gamma"):
            object.__setattr__(self, name, _poly(getattr(self, name)))

    @classmethod
    def from_operator(cls, op: OperatorPoly) -> AffineForm:
        allowed = {LadderWord(1, 0), LadderWord(0, 1), IDENTITY_WORD}
        bad = [w for w, _ in op.items() if w not in allowed]
        if bad:
            raise UnsupportedExponent(
                f"exponent {op} is not affine in the ladder operators (offending word ad^{bad[0][0]} a^{bad[0][1]})"
            )
        return cls(op.coefficient((1, 0)), op.coefficient((0, 1)), op.coefficient((0, 0)))

    def to_operator(self) -> OperatorPoly:
        return OperatorPoly({(1, 0): self.alpha, (0, 1): self.beta, (0, 0): self.gamma})

    def __bool__(self) -> bool:
        return bool(self.alpha or self.beta or self.gamma)

    def __add__(self, other: AffineForm) -> AffineForm:
        return AffineForm(self.alpha + other.alpha, self.beta + other.beta, self.gamma + other.gamma)

    def __neg__(self) -> AffineForm:
        return AffineForm(-self.alpha, -self.beta, -self.gamma)

    def __sub__(self, other: AffineForm) -> AffineForm:
        return self + (-other)

    def scale(self, c: PolyLike) -> AffineForm:
        c = _poly(c)
        return AffineForm(self.alpha * c, self.beta * c, self.gamma * c)

    def commutator(self, other: AffineForm) -> ScalarPoly:
        """[self, other], always a multiple of the identity."""
        # [ad, a] = -1, [a, ad] = 1
        return self.beta * other.alpha - self.alpha * other.beta

    def without_center(self) -> AffineForm:
        return AffineForm(self.alpha, self.beta)

    def creation_part(self) -> AffineForm:
        return AffineForm(alpha=self.alpha)

    def annihilation_part(self) -> AffineForm:
        return AffineForm(beta=self.beta)

    def __str__(self) -> str:
        return str(self.to_operator())


AD_FORM = AffineForm(alpha=1)
A_FORM = AffineForm(beta=1)


def _as_affine(exponent: AffineForm | OperatorPoly) -> AffineForm:
    return exponent if isinstance(exponent, AffineForm) else AffineForm.from_operator(exponent)


@dataclass(frozen=True)
class GroupElement:
    """exp(log_prefactor) * exp(exponent) with the exponent free of central terms.

    Any central part handed to the constructor is folded into the prefactor,
    so the presentation is canonical.
    """

    exponent: AffineForm = field(default_factory=AffineForm)
    log_prefactor: ScalarPoly = field(default_factory=ScalarPoly)

    def __post_init__(self) -> None:
        exponent = _as_affine(self.exponent)
        object.__setattr__(self, "log_prefactor", _poly(self.log_prefactor) + exponent.gamma)
        object.__setattr__(self, "exponent", exponent.without_center())

    @classmethod
    def identity(cls) -> GroupElement:
        return cls()

    def is_identity(self) -> bool:
        return not self.exponent and not self.log_prefactor

    def __mul__(self, other: GroupElement) -> GroupElement:
        if not isinstance(other, GroupElement):
            return NotImplemented
        composed = bch_compose(self.exponent, other.exponent)
        return GroupElement(composed.exponent, composed.log_prefactor + self.log_prefactor + other.log_prefactor)

    def inverse(self) -> GroupElement:
        return GroupElement(-self.exponent, -self.log_prefactor)

    def conjugate(self, op: OperatorPoly) -> OperatorPoly:
        """self * op * self^-1; central prefactors cancel."""
        return hadamard_conjugate(self.exponent, op)

    def __str__(self) -> str:
        return f"exp({self.log_prefactor}) * exp({self.exponent})"


@dataclass(frozen=True)
class OrderedProduct:
    """exp(log_prefactor) * exp(factors[0]) * exp(factors[1]) * ... kept unmerged."""

    factors: tuple[AffineForm, ...]
    log_prefactor: ScalarPoly = field(default_factory=ScalarPoly)

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", tuple(_as_affine(f) for f in self.factors))
        object.__setattr__(self, "log_prefactor", _poly(self.log_prefactor))

    def collapse(self) -> GroupElement:
        result = GroupElement(log_prefactor=self.log_prefactor)
        for f in self.factors:
            result = result * GroupElement(f)
        return result

    def __str__(self) -> str:
        return " * ".join([f"exp({self.log_prefactor})"] + [f"exp({f})" for f in self.factors])


def hadamard_conjugate(exponent: AffineForm | OperatorPoly, op: OperatorPoly) -> OperatorPoly:
    """exp(A) op exp(-A) for affine A.

    The nested commutators of an affine A with a generator are central after
    one step, so conjugation is the algebra homomorphism
    g -> g + [A, g] on the generators, applied to every normal-ordered word.
    """
    form = _as_affine(exponent)
    shifted_ad = AD + form.commutator(AD_FORM)
    shifted_a = A + form.commutator(A_FORM)
    ad_powers: dict[int, OperatorPoly] = {}
    a_powers: dict[int, OperatorPoly] = {}
    result = OperatorPoly()
    for (r, s), c in op.items():
        if r not in ad_powers:
            ad_powers[r] = shifted_ad**r
        if s not in a_powers:
            a_powers[s] = shifted_a**s
        result = result + (ad_powers[r] * a_powers[s]).scale(c)
    return result


def braid(first: AffineForm | OperatorPoly, second: AffineForm | OperatorPoly) -> OrderedProduct:
    """exp(A) exp(B) = exp(B) exp(A) exp([A, B])."""
    a, b = _as_affine(first), _as_affine(second)
    return OrderedProduct((b, a), a.commutator(b))


def bch_compose(first: AffineForm | OperatorPoly, second: AffineForm | OperatorPoly) -> GroupElement:
    """exp(A) exp(B) = exp(A + B + [A, B]/2)."""
    a, b = _as_affine(first), _as_affine(second)
    return GroupElement(a + b, a.commutator(b).scale(_HALF))


def bch_split(exponent: AffineForm | OperatorPoly) -> OrderedProduct:
    """Factor exp(alpha ad + beta a + gamma) as exp(P) exp(alpha ad) exp(beta a)."""
    form = _as_affine(exponent)
    left, right = form.creation_part(), form.annihilation_part()
    # exp(L + R) = exp(L) exp(R) exp(-[L, R]/2)
    return OrderedProduct((left, right), form.gamma - left.commutator(right).scale(_HALF))


def translation_operator(x0: PolyLike) -> GroupElement:
    """exp(-i x0 p), which carries |x=0> to |x0>."""
    return GroupElement(AffineForm.from_operator(P.scale(_poly(x0).scale(-I))))


def boost_operator(p0: PolyLike) -> GroupElement:
    """exp(+i p0 x), which carries |p=0> to |p0>."""
    return GroupElement(AffineForm.from_operator(X.scale(_poly(p0).scale(I))))


def conjugation_residual(element: GroupElement, op: OperatorPoly, expected: OperatorPoly) -> OperatorPoly:
    """op * g - g * expected, reduced to g * (g^-1 op g - expected); zero iff the identity holds."""
    return hadamard_conjugate(element.inverse().exponent, op) - expected


def compose_all(elements: Sequence[GroupElement]) -> GroupElement:
    out = GroupElement()
    for e in elements:
        out = out * e
    return out

