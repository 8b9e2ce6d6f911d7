"""Exact coefficient arithmetic.

Every prefactor that shows up in the ladder-operator algebra of the oscillator
(once hbar = m = omega_0 = 1) lives in the number field Q(i, sqrt2).  This
module provides that field, univariate polynomials over it in the formal
indeterminate ``xi``, symbolic powers of pi, and square roots of rationals
that fall outside the field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Union

from .errors import DivisionByZero, NotInField

Rational = Union[int, Fraction]
ScalarLike = Union[int, Fraction, "FieldScalar"]


def _fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True, slots=True)
class FieldScalar:
    """The element q0 + q1*i + q2*sqrt2 + q3*i*sqrt2 of Q(i, sqrt2)."""

    q0: Fraction = Fraction(0)
    q1: Fraction = Fraction(0)
    q2: Fraction = Fraction(0)
    q3: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        for name in ("q0", "q1", "q2", "q3"):
            value = getattr(self, name)
            if not isinstance(value, Fraction):
                object.__setattr__(self, name, Fraction(value))

    @staticmethod
    def coerce(value: ScalarLike) -> FieldScalar:
        if isinstance(value, FieldScalar):
            return value
        if isinstance(value, (int, Fraction)):
            return FieldScalar(Fraction(value))
        raise TypeError(f"cannot interpret {value!r} as a FieldScalar")

    @property
    def parts(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.q0, self.q1, self.q2, self.q3)

    def __bool__(self) -> bool:
        return bool(self.q0 or self.q1 or self.q2 or self.q3)

    def __add__(self, other: ScalarLike) -> FieldScalar:
        if not isinstance(other, (FieldScalar, int, Fraction)):
            return NotImplemented
        o = FieldScalar.coerce(other)
        return FieldScalar(self.q0 + o.q0, self.q1 + o.q1, self.q2 + o.q2, self.q3 + o.q3)

    __radd__ = __add__

    def __neg__(self) -> FieldScalar:
        return FieldScalar(-self.q0, -self.q1, -self.q2, -self.q3)

    def __sub__(self, other: ScalarLike) -> FieldScalar:
        if not isinstance(other, (FieldScalar, int, Fraction)):
            return NotImplemented
        return self + (-FieldScalar.coerce(other))

    def __rsub__(self, other: ScalarLike) -> FieldScalar:
        return FieldScalar.coerce(other) - self

    def __mul__(self, other: ScalarLike) -> FieldScalar:
        if isinstance(other, (int, Fraction)):
            return FieldScalar(self.q0 * other, self.q1 * other, self.q2 * other, self.q3 * other)
        if not isinstance(other, FieldScalar):
            return NotImplemented
        a0, a1, a2, a3 = self.parts
        b0, b1, b2, b3 = other.parts
        # basis 1, i, r, ir with i^2 = -1, r^2 = 2
        return FieldScalar(
            a0 * b0 - a1 * b1 + 2 * a2 * b2 - 2 * a3 * b3,
            a0 * b1 + a1 * b0 + 2 * a2 * b3 + 2 * a3 * b2,
            a0 * b2 + a2 * b0 - a1 * b3 - a3 * b1,
            a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1,
        )

    __rmul__ = __mul__

    def conjugate(self) -> FieldScalar:
        """Complex conjugation, i -> -i."""
        return FieldScalar(self.q0, -self.q1, self.q2, -self.q3)

    def galois(self) -> FieldScalar:
        """The automorphism sqrt2 -> -sqrt2."""
        return FieldScalar(self.q0, self.q1, -self.q2, -self.q3)

    def norm(self) -> Fraction:
        """Field norm down to Q: product of all four Galois conjugates."""
        # u + iv with u, v in Q(sqrt2); |.|^2 = u^2 + v^2 = w0 + w1*sqrt2
        w = self * self.conjugate()
        return w.q0 * w.q0 - 2 * w.q2 * w.q2

    def inverse(self) -> FieldScalar:
        if not self:
            raise DivisionByZero("inverse of zero in Q(i, sqrt2)")
        w = self * self.conjugate()  # in Q(sqrt2)
        n = w.q0 * w.q0 - 2 * w.q2 * w.q2
        w_inv = FieldScalar(w.q0 / n, 0, -w.q2 / n, 0)
        return self.conjugate() * w_inv

    def __truediv__(self, other: ScalarLike) -> FieldScalar:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero("division by zero")
            return self * (1 / Fraction(other))
        if not isinstance(other, FieldScalar):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: ScalarLike) -> FieldScalar:
        return FieldScalar.coerce(other) * self.inverse()

    def __pow__(self, k: int) -> FieldScalar:
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.q0 == other and not (self.q1 or self.q2 or self.q3)
        if not isinstance(other, FieldScalar):
            return NotImplemented
        return self.parts == other.parts

    def __hash__(self) -> int:
        if not (self.q1 or self.q2 or self.q3):
            return hash(self.q0)
        return hash(self.parts)

    def is_rational(self) -> bool:
        return not (self.q1 or self.q2 or self.q3)

    def is_real(self) -> bool:
        return not (self.q1 or self.q3)

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise NotInField(f"{self} is not rational")
        return self.q0

    def __complex__(self) -> complex:
        r2 = math.sqrt(2.0)
        return complex(float(self.q0) + float(self.q2) * r2, float(self.q1) + float(self.q3) * r2)

    def __str__(self) -> str:
        pieces: list[tuple[Fraction, str]] = [
            (q, unit) for q, unit in zip(self.parts, ("", "i", "sqrt2", "i*sqrt2")) if q
        ]
        if not pieces:
            return "0"
        out = []
        for k, (q, unit) in enumerate(pieces):
            mag = abs(q)
            if unit and mag == 1:
                body = unit
            elif unit:
                body = f"{_fmt_rational(mag)}*{unit}"
            else:
                body = _fmt_rational(mag)
            if k == 0:
                out.append(f"-{body}" if q < 0 else body)
            else:
                out.append(f" - {body}" if q < 0 else f" + {body}")
        return "".join(out)

    def __repr__(self) -> str:
        return f"FieldScalar({self})"


ZERO = FieldScalar()
ONE = FieldScalar(1)
I = FieldScalar(0, 1)
SQRT2 = FieldScalar(0, 0, 1)
INV_SQRT2 = FieldScalar(0, 0, Fraction(1, 2))


def field_add(a: ScalarLike, b: ScalarLike) -> FieldScalar:
    return FieldScalar.coerce(a) + b


def field_mul(a: ScalarLike, b: ScalarLike) -> FieldScalar:
    return FieldScalar.coerce(a) * FieldScalar.coerce(b)


def field_neg(a: ScalarLike) -> FieldScalar:
    return -FieldScalar.coerce(a)


def field_inv(a: ScalarLike) -> FieldScalar:
    return FieldScalar.coerce(a).inverse()


def sqrt2_power(k: int) -> FieldScalar:
    """sqrt2 ** k, exact, for any integer k."""
    half, odd = divmod(k, 2)
    base = FieldScalar(Fraction(2) ** half)
    return base * SQRT2 if odd else base


def i_power(k: int) -> FieldScalar:
    return (ONE, I, -ONE, -I)[k % 4]


# ---------------------------------------------------------------------------
# square roots of rationals


def _squarefree_split(n: int) -> tuple[int, int]:
    """Return (f, r) with n = f*f*r and r squarefree."""
    if n <= 0:
        raise ValueError("expected a positive integer")
    f, r = 1, 1
    p = 2
    while p * p <= n and p < 100_000:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            f *= p ** (e // 2)
            if e % 2:
                r *= p
        p += 1 if p == 2 else 2
    if n > 1:
        s = math.isqrt(n)
        if s * s == n:
            f *= s
        elif p * p > n:
            r *= n
        else:
            raise NotInField(f"cannot certify squarefree part of {n}")
    return f, r


@dataclass(frozen=True, slots=True)
class Surd:
    """coefficient * sqrt(radicand) with radicand an odd squarefree positive integer.

    Powers of two are absorbed into the coefficient through sqrt2, so the
    presentation is canonical and equality is structural.
    """

    coefficient: FieldScalar
    radicand: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficient", FieldScalar.coerce(self.coefficient))
        if self.radicand < 1 or self.radicand % 2 == 0:
            raise ValueError("radicand must be an odd positive integer")
        if not self.coefficient and self.radicand != 1:
            object.__setattr__(self, "radicand", 1)

    def __mul__(self, other: Surd | ScalarLike) -> Surd:
        if not isinstance(other, Surd):
            return Surd(self.coefficient * FieldScalar.coerce(other), self.radicand)
        g = math.gcd(self.radicand, other.radicand)
        r = (self.radicand // g) * (other.radicand // g)
        return Surd(self.coefficient * other.coefficient * g, r)

    __rmul__ = __mul__

    def __add__(self, other: Surd) -> Surd:
        if not other.coefficient:
            return self
        if not self.coefficient:
            return other
        if other.radicand != self.radicand:
            raise NotInField("sum of incommensurable square roots")
        return Surd(self.coefficient + other.coefficient, self.radicand)

    def __neg__(self) -> Surd:
        return Surd(-self.coefficient, self.radicand)

    def __bool__(self) -> bool:
        return bool(self.coefficient)

    def conjugate(self) -> Surd:
        return Surd(self.coefficient.conjugate(), self.radicand)

    def in_field(self) -> bool:
        return self.radicand == 1

    def to_field(self) -> FieldScalar:
        if self.radicand != 1:
            raise NotInField(f"{self} is not in Q(i, sqrt2)")
        return self.coefficient

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, FieldScalar)):
            return self.radicand == 1 and self.coefficient == other
        if not isinstance(other, Surd):
            return NotImplemented
        return self.coefficient == other.coefficient and self.radicand == other.radicand

    def __hash__(self) -> int:
        return hash(self.coefficient) if self.radicand == 1 else hash((self.coefficient, self.radicand))

    def __complex__(self) -> complex:
        return complex(self.coefficient) * math.sqrt(self.radicand)

    def __str__(self) -> str:
        if self.radicand == 1:
            return str(self.coefficient)
        c = self.coefficient
        tail = f"sqrt({self.radicand})"
        if c == 1:
            return tail
        if c == -1:
            return f"-{tail}"
        if sum(1 for q in c.parts if q) == 1 and c.q0 != 0:
            return f"{c}*{tail}"
        return f"({c})*{tail}"


def sqrt_rational(q: Rational) -> Surd:
    """Exact square root of a nonnegative rational."""
    q = Fraction(q)
    if q < 0:
        raise NotInField("square root of a negative rational")
    if q == 0:
        return Surd(ZERO)
    # sqrt(n/d) = sqrt(n*d)/d
    f, r = _squarefree_split(q.numerator * q.denominator)
    coeff = FieldScalar(Fraction(f, q.denominator))
    if r % 2 == 0:
        r //= 2
        coeff = coeff * SQRT2
    return Surd(coeff, r)


# ---------------------------------------------------------------------------
# polynomials in xi


class ScalarPoly:
    """Polynomial in the indeterminate xi with FieldScalar coefficients.

    ``coefficients[k]`` multiplies xi**k.  Trailing zeros are trimmed, so the
    zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable[ScalarLike] = ()) -> None:
        coeffs = [FieldScalar.coerce(c) for c in coefficients]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.coefficients: tuple[FieldScalar, ...] = tuple(coeffs)

    @classmethod
    def constant(cls, c: ScalarLike) -> ScalarPoly:
        return cls((c,))

    @classmethod
    def coerce(cls, value: ScalarPoly | ScalarLike) -> ScalarPoly:
        return value if isinstance(value, ScalarPoly) else cls((value,))

    @classmethod
    def monomial(cls, degree: int, c: ScalarLike = 1) -> ScalarPoly:
        return cls([ZERO] * degree + [FieldScalar.coerce(c)])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    def __bool__(self) -> bool:
        return bool(self.coefficients)

    def is_constant(self) -> bool:
        return len(self.coefficients) <= 1

    def constant_term(self) -> FieldScalar:
        return self.coefficients[0] if self.coefficients else ZERO

    def coefficient(self, k: int) -> FieldScalar:
        return self.coefficients[k] if 0 <= k < len(self.coefficients) else ZERO

    def __add__(self, other: ScalarPoly | ScalarLike) -> ScalarPoly:
        if not isinstance(other, (ScalarPoly, FieldScalar, int, Fraction)):
            return NotImplemented
        o = ScalarPoly.coerce(other)
        n = max(len(self.coefficients), len(o.coefficients))
        return ScalarPoly(self.coefficient(k) + o.coefficient(k) for k in range(n))

    __radd__ = __add__

    def __neg__(self) -> ScalarPoly:
        return ScalarPoly(-c for c in self.coefficients)

    def __sub__(self, other: ScalarPoly | ScalarLike) -> ScalarPoly:
        if not isinstance(other, (ScalarPoly, FieldScalar, int, Fraction)):
            return NotImplemented
        return self + (-ScalarPoly.coerce(other))

    def __rsub__(self, other: ScalarLike) -> ScalarPoly:
        return ScalarPoly.coerce(other) - self

    def scale(self, c: ScalarLike) -> ScalarPoly:
        c = FieldScalar.coerce(c)
        return ScalarPoly(x * c for x in self.coefficients)

    def __mul__(self, other: ScalarPoly | ScalarLike) -> ScalarPoly:
        if isinstance(other, (FieldScalar, int, Fraction)):
            return self.scale(other)
        if not isinstance(other, ScalarPoly):
            return NotImplemented
        if not self or not other:
            return ScalarPoly()
        out = [ZERO] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if not a:
                continue
            for j, b in enumerate(other.coefficients):
                if b:
                    out[i + j] = out[i + j] + a * b
        return ScalarPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> ScalarPoly:
        if k < 0:
            raise ValueError("negative power of a polynomial")
        return reduce(lambda acc, _: acc * self, range(k), ScalarPoly.constant(1))

    def conjugate(self) -> ScalarPoly:
        """Coefficient-wise complex conjugation (xi is a real variable)."""
        return ScalarPoly(c.conjugate() for c in self.coefficients)

    def reflect(self) -> ScalarPoly:
        """p(-xi)."""
        return ScalarPoly(c if k % 2 == 0 else -c for k, c in enumerate(self.coefficients))

    def is_real(self) -> bool:
        return all(c.is_real() for c in self.coefficients)

    def __call__(self, value: float | complex) -> complex:
        acc: complex = 0j
        for c in reversed(self.coefficients):
            acc = acc * value + complex(c)
        return acc

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (FieldScalar, int, Fraction)):
            other = ScalarPoly.coerce(other)
        if not isinstance(other, ScalarPoly):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        terms = []
        for k in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[k]
            if not c:
                continue
            xpart = "" if k == 0 else ("xi" if k == 1 else f"xi^{k}")
            if not xpart:
                terms.append(f"({c})" if _is_compound(c) else str(c))
            elif c == 1:
                terms.append(xpart)
            elif c == -1:
                terms.append(f"-{xpart}")
            else:
                terms.append(f"({c})*{xpart}" if _is_compound(c) else f"{c}*{xpart}")
        return " + ".join(terms).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"ScalarPoly({self})"


def _is_compound(c: FieldScalar) -> bool:
    return sum(1 for q in c.parts if q) > 1


XI = ScalarPoly.monomial(1)


def poly_add(a: ScalarPoly, b: ScalarPoly | ScalarLike) -> ScalarPoly:
    return a + b


def poly_mul(a: ScalarPoly, b: ScalarPoly | ScalarLike) -> ScalarPoly:
    return a * b


def poly_scale(a: ScalarPoly, c: ScalarLike) -> ScalarPoly:
    return a.scale(c)


# ---------------------------------------------------------------------------
# powers of pi


@dataclass(frozen=True, slots=True)
class PiPower:
    """coefficient * pi**exponent, exponent a multiple of 1/4."""

    coefficient: FieldScalar
    exponent: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficient", FieldScalar.coerce(self.coefficient))
        e = Fraction(self.exponent)
        if (e * 4).denominator != 1:
            raise ValueError(f"pi exponent {e} is not a multiple of 1/4")
        object.__setattr__(self, "exponent", e)

    def __mul__(self, other: PiPower | ScalarLike) -> PiPower:
        if isinstance(other, PiPower):
            return PiPower(self.coefficient * other.coefficient, self.exponent + other.exponent)
        return PiPower(self.coefficient * FieldScalar.coerce(other), self.exponent)

    __rmul__ = __mul__

    def conjugate(self) -> PiPower:
        return PiPower(self.coefficient.conjugate(), self.exponent)

    def __float__(self) -> float:
        c = complex(self.coefficient)
        if c.imag:
            raise TypeError("complex PiPower has no float value")
        return c.real * math.pi ** float(self.exponent)

    def __complex__(self) -> complex:
        return complex(self.coefficient) * math.pi ** float(self.exponent)

    def __str__(self) -> str:
        if self.exponent == 0:
            return str(self.coefficient)
        pi = f"pi^({_fmt_rational(self.exponent)})"
        if self.coefficient == 1:
            return pi
        c = str(self.coefficient)
        return f"({c})*{pi}" if _is_compound(self.coefficient) else f"{c}*{pi}"


def double_factorial(n: int) -> int:
    """n!! with the convention (-1)!! = 0!! = 1."""
    return math.prod(range(n, 0, -2)) if n > 0 else 1


def gaussian_moment(k: int) -> PiPower:
    """Integral of xi**(2k) * exp(-xi**2) over the real line.

    Odd moments vanish and are the caller's business.
    """
    if k < 0:
        raise ValueError("moment order must be nonnegative")
    return PiPower(FieldScalar(Fraction(double_factorial(2 * k - 1), 2**k)), Fraction(1, 2))


# ---------------------------------------------------------------------------
# units


@dataclass(frozen=True)
class UnitSystem:
    """Display-only unit convention.

    Computation always happens with hbar = m = omega_0 = 1; ``symbolic-SI``
    only changes how xi and the normalization constants are printed.
    """

    mode: str = "natural"

    def __post_init__(self) -> None:
        if self.mode not in ("natural", "symbolic-SI"):
            raise ValueError(f"unknown unit mode {self.mode!r}")

    def variable(self, space: str) -> str:
        if self.mode == "natural":
            return "xi"
        return "sqrt(m*w0/hbar)*x" if space == "position" else "p/sqrt(m*hbar*w0)"

    def gaussian(self, space: str, rate: Fraction) -> str:
        r = _fmt_rational(rate)
        if self.mode == "natural":
            return f"exp(-{r}*xi^2)"
        if space == "position":
            return f"exp(-{r}*m*w0*x^2/hbar)"
        return f"exp(-{r}*p^2/(m*hbar*w0))"

    def normalization(self, space: str, pi_exponent: Fraction) -> str:
        e = _fmt_rational(-pi_exponent)
        if self.mode == "natural":
            return f"pi^(-{e})" if pi_exponent < 0 else f"pi^({_fmt_rational(pi_exponent)})"
        if space == "position":
            return f"(m*w0/(pi*hbar))^({e})"
        return f"(1/(pi*m*hbar*w0))^({e})"
