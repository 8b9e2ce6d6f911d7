"""Position- and momentum-space wavefunctions without derivatives.

The overlap <x|n> is rewritten purely with exponential identities until only
a Gaussian times the vacuum matrix element <x=0|(ad + c)^n|0> is left; the
matrix element is then reduced with the two rules the position (or momentum)
eigenbra obeys.  Hermite polynomials come out of that reduction and, as an
independent check, from their three-term recurrence.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import AlgebraError, InvalidArgument, NotInField, SpaceMismatch
from .exponentials import (
    AffineForm,
    bch_compose,
    bch_split,
    boost_operator,
    hadamard_conjugate,
    translation_operator,
)
from .operators import A, AD, P, X, OperatorPoly, commutator
from .scalars import (
    ONE,
    SQRT2,
    XI,
    ZERO,
    FieldScalar,
    PiPower,
    ScalarPoly,
    UnitSystem,
    gaussian_moment,
    i_power,
    sqrt2_power,
    sqrt_rational,
)

SPACES = ("position", "momentum")


# ---------------------------------------------------------------------------
# eigenbras at the origin


@dataclass(frozen=True)
class EigenBra:
    """<chi| with <chi| K = 0 for K = u*ad + v*a.

    Never a normalizable state; it only supplies two rewrite rules:
    exponentials of K-multiples act as 1 on it, and <chi| ad = -(v/u) <chi| a.
    """

    name: str
    annihilated: OperatorPoly

    @cached_property
    def _uv(self) -> tuple[FieldScalar, FieldScalar]:
        form = AffineForm.from_operator(self.annihilated)
        if form.gamma or not form.alpha.is_constant() or not form.beta.is_constant():
            raise AlgebraError(f"{self.annihilated} is not a constant ladder combination")
        return form.alpha.constant_term(), form.beta.constant_term()

    @property
    def creation_rule(self) -> FieldScalar:
        """The factor s in <chi| ad = s <chi| a."""
        u, v = self._uv
        return -(v / u)

    def kills(self, exponent: AffineForm) -> bool:
        """True when the (central-free) exponent is a multiple of K."""
        u, v = self._uv
        return not exponent.gamma and not (exponent.alpha.scale(v) - exponent.beta.scale(u))

    def vacuum_ratio(self, op: OperatorPoly) -> ScalarPoly:
        """<chi| op |0> / <chi|0> by the rewrite rules and a|0> = 0."""
        total = ScalarPoly()
        for (r, s), c in op.items():
            if s == 0:
                total = total + c * self._creation_power_ratio(r)
        return total

    def _creation_power_ratio(self, r: int) -> ScalarPoly:
        cache = self.__dict__.setdefault("_ratio_cache", {0: ScalarPoly.constant(1)})
        if r not in cache:
            # <chi| ad^r |0> = s <chi| a ad^(r-1) |0>, with a ad^(r-1) normal ordered
            cache[r] = self.vacuum_ratio(A * AD ** (r - 1)).scale(self.creation_rule)
        return cache[r]


POSITION_ORIGIN = EigenBra("x=0", X)
MOMENTUM_ORIGIN = EigenBra("p=0", P)


def _bra(space: str) -> EigenBra:
    if space == "position":
        return POSITION_ORIGIN
    if space == "momentum":
        return MOMENTUM_ORIGIN
    raise InvalidArgument(f"unknown space {space!r}")


# ---------------------------------------------------------------------------
# closed forms


@dataclass(frozen=True)
class ClosedFormWavefunction:
    """phase-convention-adjusted wavefunction

        f(xi) = sqrt(scale_squared) * poly(xi) * exp(-gaussian_rate * xi^2) * norm

    ``phase`` records the global convention factor already folded into
    ``poly`` (i^n for momentum space, 1 for position space).
    """

    space: str
    n: int
    poly: ScalarPoly
    gaussian_rate: Fraction
    norm: PiPower
    phase: FieldScalar = ONE
    scale_squared: Fraction = Fraction(1)
    trace: tuple[tuple[str, str], ...] = field(default=(), compare=False, repr=False)

    def evaluate(self, points: Iterable[float] | float) -> np.ndarray:
        return evaluate(self, points)

    def to_record(self) -> dict:
        return {
            "space": self.space,
            "n": self.n,
            "coeffs": [_fmt_scalar(c) for c in _padded(self.poly)],
            "scale_squared": _fmt_fraction(self.scale_squared),
            "gaussian_rate": _fmt_fraction(self.gaussian_rate),
            "norm_pi_exponent": _fmt_fraction(self.norm.exponent),
            "phase": str(self.phase),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_record(), sort_keys=False)

    def to_text(self) -> str:
        rec = self.to_record()
        lines = [f"{key}: {' '.join(v) if isinstance(v, list) else v}" for key, v in rec.items()]
        return "\n".join(lines)

    @classmethod
    def from_record(cls, record: dict) -> ClosedFormWavefunction:
        from .expr import coerce_field, evaluate_text

        coeffs = [coerce_field(evaluate_text(c)) for c in record["coeffs"]]
        return cls(
            space=record["space"],
            n=int(record["n"]),
            poly=ScalarPoly(coeffs),
            gaussian_rate=Fraction(record["gaussian_rate"]),
            norm=PiPower(ONE, Fraction(record["norm_pi_exponent"])),
            phase=coerce_field(evaluate_text(record["phase"])),
            scale_squared=Fraction(record["scale_squared"]),
        )

    def formula(self, units: UnitSystem = UnitSystem()) -> str:
        var = units.variable(self.space)
        name = "psi" if self.space == "position" else "phi"
        arg = "x" if self.space == "position" else "p"
        if units.mode == "natural":
            arg = "xi"
        poly = _poly_in(self.poly, var)
        scale = _fmt_fraction(self.scale_squared)
        return (
            f"{name}_{self.n}({arg}) = {units.normalization(self.space, self.norm.exponent)}"
            f" * sqrt({scale}) * ({poly}) * {units.gaussian(self.space, self.gaussian_rate)}"
        )


def _padded(poly: ScalarPoly) -> list[FieldScalar]:
    return list(poly.coefficients) or [ZERO]


def _fmt_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _fmt_scalar(c: FieldScalar) -> str:
    return _fmt_fraction(c.q0) if c.is_rational() else str(c)


def _poly_in(poly: ScalarPoly, var: str) -> str:
    text = str(poly)
    if var == "xi":
        return text
    return text.replace("xi", f"({var})")


# ---------------------------------------------------------------------------
# Hermite polynomials


@dataclass(frozen=True)
class HermitePolynomial:
    """Physicists' Hermite polynomial, integer coefficients in ascending degree."""

    n: int
    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coefficients) != self.n + 1:
            raise ValueError(f"H_{self.n} must have {self.n + 1} coefficients")
        if self.coefficients[-1] != 2**self.n:
            raise ValueError(f"H_{self.n} must have leading coefficient 2^{self.n}")

    def as_poly(self) -> ScalarPoly:
        return ScalarPoly(self.coefficients)

    def __call__(self, z: float) -> float:
        return float(np.polynomial.polynomial.polyval(z, np.asarray(self.coefficients, dtype=float)))

    def __str__(self) -> str:
        return " ".join(str(c) for c in self.coefficients)


def hermite_recurrence(n: int) -> HermitePolynomial:
    """H_0 = 1, H_1 = 2z, H_n = 2z H_{n-1} - 2(n-1) H_{n-2}."""
    if n < 0:
        raise InvalidArgument("Hermite index must be nonnegative")
    prev, cur = [1], [0, 2]
    if n == 0:
        return HermitePolynomial(0, (1,))
    for k in range(2, n + 1):
        nxt = [0] + [2 * c for c in cur]
        for d, c in enumerate(prev):
            nxt[d] -= 2 * (k - 1) * c
        prev, cur = cur, nxt
    return HermitePolynomial(n, tuple(cur))


def _integer_hermite(n: int, poly: ScalarPoly) -> HermitePolynomial:
    coeffs = []
    for c in _padded(poly) + [ZERO] * (n + 1 - len(_padded(poly))):
        if not c.is_rational() or c.q0.denominator != 1:
            raise AlgebraError(f"reduction produced a non-integer coefficient {c}")
        coeffs.append(int(c.q0))
    return HermitePolynomial(n, tuple(coeffs))


def _shift(space: str) -> ScalarPoly:
    """The c in (ad + c)^n after both braidings: sqrt2*xi, or -i*sqrt2*xi for momenta."""
    return XI.scale(SQRT2) if space == "position" else XI.scale(-SQRT2 * i_power(1))


def hermite_reduction(n: int, space: str = "position") -> HermitePolynomial:
    """H_n from <chi|(ad + c)^n|0> by peeling one factor at a time.

    (ad + c) Y_{k-1}: the constant contributes c M_{k-1}; in the creation part
    ad is traded for a by the eigenbra rule, and a Y_{k-1}|0> = [a, Y_{k-1}]|0>,
    which the operator algebra evaluates to a multiple of Y_{k-2}.
    """
    if n < 0:
        raise InvalidArgument("Hermite index must be nonnegative")
    bra = _bra(space)
    c = _shift(space)
    rule = bra.creation_rule
    factor = AD + c
    powers = [OperatorPoly.scalar(1)]
    ratios = [ScalarPoly.constant(1)]
    for k in range(1, n + 1):
        prev = powers[-1]
        term = ratios[-1] * c
        if k >= 2:
            comm = commutator(A, prev)
            mult = _proportionality(comm, powers[-2])
            term = term + ratios[-2].scale(rule * mult)
        # k == 1: a|0> = 0, nothing from the creation part
        ratios.append(term)
        powers.append(prev * factor)
    phase = ONE if space == "position" else i_power(n)
    return _integer_hermite(n, ratios[n].scale(sqrt2_power(n) * phase))


def _proportionality(op: OperatorPoly, base: OperatorPoly) -> FieldScalar:
    """The scalar m with op == m * base, verified exactly."""
    word, lead = next(iter(base.items()))
    top = op.coefficient(word)
    m = top.coefficient(lead.degree) / lead.coefficients[-1]
    if op != base.scale(m):
        raise AlgebraError("commutator is not a scalar multiple of the lower power")
    return m


# ---------------------------------------------------------------------------
# the derivation pipeline


@lru_cache(maxsize=None)
def _derive(space: str, n: int) -> ClosedFormWavefunction:
    if n < 0:
        raise InvalidArgument("quantum number must be nonnegative")
    bra = _bra(space)
    trace: list[tuple[str, str]] = []

    # <x| = <x=0| exp(+i xi p), <p| = <p=0| exp(-i xi x)
    shift = translation_operator(XI) if space == "position" else boost_operator(XI)
    exponent = shift.inverse().exponent
    trace.append(("shift operator exponent", str(exponent)))

    split = bch_split(exponent)
    left, right = split.factors
    prefactor = split.log_prefactor
    trace.append(("BCH split", str(split)))

    # exp(R) (ad)^n = (exp(R) (ad)^n exp(-R)) exp(R), and exp(R)|0> = |0>
    body = hadamard_conjugate(right, AD**n)
    if right.alpha or right.gamma:
        raise AlgebraError("right factor does not annihilate the vacuum")
    trace.append(("braid through (ad)^n", str(body)))

    # insert exp(-R)|0> = |0> and braid it to the left
    body = hadamard_conjugate(right, body)
    trace.append(("braid inserted exponential back", str(body)))

    merged = bch_compose(left, -right)
    prefactor = prefactor + merged.log_prefactor
    trace.append(("BCH recombine", f"exp({prefactor}) * exp({merged.exponent})"))
    if not bra.kills(merged.exponent):
        raise AlgebraError(f"<{bra.name}| does not absorb exp({merged.exponent})")

    gaussian_rate = _gaussian_rate(prefactor)
    element = bra.vacuum_ratio(body)
    trace.append(("vacuum matrix element", str(element)))

    phase = ONE if space == "position" else i_power(n)
    poly = element.scale(sqrt2_power(n) * phase)
    if not poly.is_real():
        raise AlgebraError(f"polynomial part {poly} is not real after the phase convention")

    # |<chi|0>|^2 * integral exp(-2 g xi^2) = 1, with the real positive root
    if 2 * gaussian_rate != 1:
        raise NotInField("ground-state normalization needs a unit Gaussian width")
    ground = gaussian_moment(0)
    norm = PiPower(sqrt_rational(1 / ground.coefficient.to_rational()).to_field(), -ground.exponent / 2)
    return ClosedFormWavefunction(
        space=space,
        n=n,
        poly=poly,
        gaussian_rate=gaussian_rate,
        norm=norm,
        phase=phase,
        scale_squared=Fraction(1, 2**n * math.factorial(n)),
        trace=tuple(trace),
    )


def _gaussian_rate(log_prefactor: ScalarPoly) -> Fraction:
    c = log_prefactor.coefficient(2)
    if log_prefactor != ScalarPoly.monomial(2, c) or not c.is_rational() or c.q0 >= 0:
        raise AlgebraError(f"prefactor exp({log_prefactor}) is not a decaying Gaussian")
    return -c.q0


def derive_position_wavefunction(n: int) -> ClosedFormWavefunction:
    return _derive("position", n)


def derive_momentum_wavefunction(n: int) -> ClosedFormWavefunction:
    return _derive("momentum", n)


def derive_wavefunction(space: str, n: int) -> ClosedFormWavefunction:
    return _derive(space, n)


def textbook_wavefunction(space: str, n: int) -> ClosedFormWavefunction:
    """The closed form assembled directly from the Hermite recurrence."""
    _bra(space)
    return ClosedFormWavefunction(
        space=space,
        n=n,
        poly=hermite_recurrence(n).as_poly(),
        gaussian_rate=Fraction(1, 2),
        norm=PiPower(ONE, Fraction(-1, 4)),
        phase=ONE if space == "position" else i_power(n),
        scale_squared=Fraction(1, 2**n * math.factorial(n)),
    )


# ---------------------------------------------------------------------------
# integrals and evaluation


def inner_product(f: ClosedFormWavefunction, g: ClosedFormWavefunction) -> FieldScalar:
    """Exact integral of conj(f) g over the real line."""
    if f.space != g.space:
        raise SpaceMismatch(f"cannot pair a {f.space}-space and a {g.space}-space wavefunction")
    integrand = f.poly.conjugate() * g.poly
    rate = f.gaussian_rate + g.gaussian_rate
    if rate <= 0:
        raise ValueError("integrand does not decay")
    # integral xi^(2k) exp(-t xi^2) = t^(-k-1/2) * M(k)
    total = ZERO
    pi_exp = None
    for k in range(0, integrand.degree + 1, 2):
        c = integrand.coefficient(k)
        if not c:
            continue
        moment = gaussian_moment(k // 2)
        total = total + c * moment.coefficient / rate ** (k // 2)
        pi_exp = moment.exponent
    if not total:
        return ZERO
    pi_total = f.norm.exponent + g.norm.exponent + pi_exp
    if pi_total != 0:
        raise NotInField(f"inner product carries pi^{pi_total}")
    radical = sqrt_rational(f.scale_squared * g.scale_squared) * sqrt_rational(1 / rate)
    value = radical * (total * f.norm.coefficient.conjugate() * g.norm.coefficient)
    return value.to_field()


def evaluate(f: ClosedFormWavefunction, points: Iterable[float] | float) -> np.ndarray:
    """Numeric values at the given xi; real when the polynomial is real."""
    xs = np.asarray(points, dtype=float)
    coeffs = np.array([complex(c) for c in _padded(f.poly)])
    values = np.polynomial.polynomial.polyval(xs, coeffs)
    values = values * math.sqrt(f.scale_squared) * np.exp(-float(f.gaussian_rate) * xs**2) * complex(f.norm)
    if np.all(values.imag == 0):
        return values.real
    return values


def parity_holds(f: ClosedFormWavefunction) -> bool:
    sign = 1 if f.n % 2 == 0 else -1
    return f.poly.reflect() == f.poly.scale(sign)


def orthonormality_table(space: str, nmax: int) -> list[list[FieldScalar]]:
    states = [derive_wavefunction(space, n) for n in range(nmax + 1)]
    return [[inner_product(f, g) for g in states] for f in states]


__all__: Sequence[str] = (
    "ClosedFormWavefunction",
    "EigenBra",
    "HermitePolynomial",
    "MOMENTUM_ORIGIN",
    "POSITION_ORIGIN",
    "SPACES",
    "derive_momentum_wavefunction",
    "derive_position_wavefunction",
    "derive_wavefunction",
    "evaluate",
    "hermite_recurrence",
    "hermite_reduction",
    "inner_product",
    "orthonormality_table",
    "parity_holds",
    "textbook_wavefunction",
)
