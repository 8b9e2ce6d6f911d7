"""Normal-ordered polynomials in the ladder operators a, ad with [a, ad] = 1.

An :class:`OperatorPoly` is a finite sum of words ``ad**r a**s`` with
:class:`ScalarPoly` coefficients.  Normal order (creators on the left) is the
canonical form, so equality of operators is equality of term maps.
"""

from __future__ import annotations

import math
from collections import defaultdict
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence, Union

from .errors import NotInField, UnboundIndeterminate
from .scalars import (
    I,
    INV_SQRT2,
    ONE,
    ZERO,
    FieldScalar,
    ScalarLike,
    ScalarPoly,
    Surd,
    sqrt_rational,
)

CREATE = "ad"
ANNIHILATE = "a"
_GENERATOR_ALIASES = {"a": ANNIHILATE, "ad": CREATE, "a†": CREATE, "â": ANNIHILATE, "â†": CREATE}

Coefficient = Union[ScalarPoly, FieldScalar, int, Fraction]


class LadderWord(NamedTuple):
    """The normal-ordered monomial ad**creation_power * a**annihilation_power."""

    creation_power: int
    annihilation_power: int

    @property
    def degree(self) -> int:
        return self.creation_power + self.annihilation_power


IDENTITY_WORD = LadderWord(0, 0)


def _coerce_coefficient(c: Coefficient) -> ScalarPoly:
    return c if isinstance(c, ScalarPoly) else ScalarPoly.constant(c)


def _word_product(left: LadderWord, right: LadderWord) -> Iterator[tuple[int, LadderWord]]:
    """Normal-ordered expansion of (ad^r1 a^s1)(ad^r2 a^s2).

    Uses a^s ad^r = sum_k C(s,k) C(r,k) k! ad^(r-k) a^(s-k).
    """
    r1, s1 = left
    r2, s2 = right
    for k in range(min(s1, r2) + 1):
        mult = math.comb(s1, k) * math.comb(r2, k) * math.factorial(k)
        yield mult, LadderWord(r1 + r2 - k, s1 + s2 - k)


class OperatorPoly:
    """Immutable normal-ordered operator with polynomial-in-xi coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], Coefficient] | None = None) -> None:
        clean: dict[LadderWord, ScalarPoly] = {}
        for word, c in (terms or {}).items():
            poly = _coerce_coefficient(c)
            r, s = word
            if r < 0 or s < 0:
                raise ValueError(f"negative power in ladder word {word}")
            if poly:
                clean[LadderWord(r, s)] = poly
        self._terms = dict(sorted(clean.items(), reverse=True))
        self._hash: int | None = None

    # constructors -----------------------------------------------------
    @classmethod
    def scalar(cls, c: Coefficient) -> OperatorPoly:
        return cls({IDENTITY_WORD: c})

    @classmethod
    def word(cls, creation_power: int, annihilation_power: int, c: Coefficient = 1) -> OperatorPoly:
        return cls({LadderWord(creation_power, annihilation_power): c})

    # accessors --------------------------------------------------------
    @property
    def terms(self) -> Mapping[LadderWord, ScalarPoly]:
        return dict(self._terms)

    def items(self) -> Iterable[tuple[LadderWord, ScalarPoly]]:
        return self._terms.items()

    def coefficient(self, word: tuple[int, int]) -> ScalarPoly:
        return self._terms.get(LadderWord(*word), ScalarPoly())

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def degree(self) -> int:
        return max((w.degree for w in self._terms), default=-1)

    def is_scalar(self) -> bool:
        return all(w == IDENTITY_WORD for w in self._terms)

    def scalar_part(self) -> ScalarPoly:
        return self.coefficient(IDENTITY_WORD)

    def is_xi_free(self) -> bool:
        return all(c.is_constant() for c in self._terms.values())

    # arithmetic -------------------------------------------------------
    def __add__(self, other: OperatorPoly | Coefficient) -> OperatorPoly:
        if not isinstance(other, OperatorPoly):
            if not isinstance(other, (ScalarPoly, FieldScalar, int, Fraction)):
                return NotImplemented
            other = OperatorPoly.scalar(other)
        out: dict[LadderWord, ScalarPoly] = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out[w] + c if w in out else c
        return OperatorPoly(out)

    __radd__ = __add__

    def __neg__(self) -> OperatorPoly:
        return OperatorPoly({w: -c for w, c in self._terms.items()})

    def __sub__(self, other: OperatorPoly | Coefficient) -> OperatorPoly:
        if not isinstance(other, (OperatorPoly, ScalarPoly, FieldScalar, int, Fraction)):
            return NotImplemented
        return self + (-other if isinstance(other, OperatorPoly) else -_coerce_coefficient(other))

    def __rsub__(self, other: Coefficient) -> OperatorPoly:
        return OperatorPoly.scalar(other) - self

    def scale(self, c: Coefficient) -> OperatorPoly:
        poly = _coerce_coefficient(c)
        return OperatorPoly({w: x * poly for w, x in self._terms.items()})

    def __mul__(self, other: OperatorPoly | Coefficient) -> OperatorPoly:
        if isinstance(other, (ScalarPoly, FieldScalar, int, Fraction)):
            return self.scale(other)
        if not isinstance(other, OperatorPoly):
            return NotImplemented
        acc: dict[LadderWord, ScalarPoly] = defaultdict(ScalarPoly)
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                c = c1 * c2
                for mult, w in _word_product(w1, w2):
                    acc[w] = acc[w] + c.scale(mult)
        return OperatorPoly(acc)

    def __rmul__(self, other: Coefficient) -> OperatorPoly:
        if not isinstance(other, (ScalarPoly, FieldScalar, int, Fraction)):
            return NotImplemented
        return self.scale(other)

    def __pow__(self, k: int) -> OperatorPoly:
        if k < 0:
            raise ValueError("negative operator power")
        result, base = IDENTITY, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def adjoint(self) -> OperatorPoly:
        # (c ad^r a^s)^dagger = conj(c) ad^s a^r, already normal ordered
        return OperatorPoly({(w.annihilation_power, w.creation_power): c.conjugate() for w, c in self._terms.items()})

    def map_coefficients(self, fn) -> OperatorPoly:
        return OperatorPoly({w: fn(c) for w, c in self._terms.items()})

    def evaluate_xi(self, value: ScalarLike) -> OperatorPoly:
        """Substitute an exact value for xi in every coefficient."""
        v = FieldScalar.coerce(value)

        def sub(p: ScalarPoly) -> ScalarPoly:
            acc = ZERO
            for c in reversed(p.coefficients):
                acc = acc * v + c
            return ScalarPoly.constant(acc)

        return self.map_coefficients(sub)

    # comparison / display ---------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, (ScalarPoly, FieldScalar, int, Fraction)):
            other = OperatorPoly.scalar(other)
        if not isinstance(other, OperatorPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __str__(self) -> str:
        from .expr import format_operator

        return format_operator(self)

    def __repr__(self) -> str:
        return f"OperatorPoly({self})"


IDENTITY = OperatorPoly.scalar(1)
ZERO_OP = OperatorPoly()
A = OperatorPoly.word(0, 1)
AD = OperatorPoly.word(1, 0)
NUMBER = OperatorPoly.word(1, 1)
# natural units: x = (a + ad)/sqrt2, p = -i (a - ad)/sqrt2 = i (ad - a)/sqrt2
X = (A + AD).scale(INV_SQRT2)
P = (AD - A).scale(I * INV_SQRT2)
H = NUMBER + Fraction(1, 2)


# ---------------------------------------------------------------------------
# rewriting


RawTerm = tuple[Coefficient, Sequence[str]]


def _right_multiply_generator(
    state: dict[LadderWord, ScalarPoly], generator: str
) -> dict[LadderWord, ScalarPoly]:
    out: dict[LadderWord, ScalarPoly] = defaultdict(ScalarPoly)
    for (r, s), c in state.items():
        if generator == ANNIHILATE:
            out[LadderWord(r, s + 1)] += c
            continue
        # bubble the new ad leftwards past each of the s annihilators;
        # every swap a ad -> ad a + 1 leaves behind one copy of the word with
        # that pair deleted, i.e. ad^r a^(s-1)
        for _ in range(s):
            out[LadderWord(r, s - 1)] += c
        out[LadderWord(r + 1, s)] += c
    return out


def normal_order(raw: OperatorPoly | Sequence[str] | Iterable[RawTerm]) -> OperatorPoly:
    """Bring a raw product of generators into canonical normal order.

    ``raw`` may be an already canonical :class:`OperatorPoly` (returned
    unchanged), a single word given as a sequence of ``"a"``/``"ad"`` tokens,
    or an iterable of ``(coefficient, word)`` pairs.  Words are rewritten by
    repeated single swaps ``a ad -> ad a + 1``.
    """
    if isinstance(raw, OperatorPoly):
        return raw
    raw = list(raw)
    if raw and all(isinstance(t, str) for t in raw):
        raw = [(1, raw)]
    total = ZERO_OP
    for coefficient, word in raw:
        state: dict[LadderWord, ScalarPoly] = {IDENTITY_WORD: _coerce_coefficient(coefficient)}
        for token in word:
            try:
                generator = _GENERATOR_ALIASES[token]
            except KeyError:
                raise ValueError(f"unknown ladder generator {token!r}") from None
            state = _right_multiply_generator(state, generator)
        total = total + OperatorPoly(state)
    return total


def commutator(left: OperatorPoly, right: OperatorPoly) -> OperatorPoly:
    return left * right - right * left


def adjoint(op: OperatorPoly) -> OperatorPoly:
    return op.adjoint()


def vacuum_matrix_element(op: OperatorPoly) -> ScalarPoly:
    """<0|op|0>: every normal-ordered word except the identity annihilates."""
    return normal_order(op).scalar_part()


# ---------------------------------------------------------------------------
# number-basis kets


def _field_coefficient(c: ScalarPoly) -> FieldScalar:
    if not c.is_constant():
        raise UnboundIndeterminate(f"coefficient {c} depends on xi")
    return c.constant_term()


class FockKetExpansion:
    """Finite superposition ``sqrt(radicand) * sum_n c_n (ad)^n |0>``.

    Amplitudes are stored on the unnormalized vectors ``(ad)^n|0> = sqrt(n!)|n>``
    so that ladder actions stay rational; the single odd squarefree radicand
    carries whatever irrational normalization the state needs.
    """

    __slots__ = ("amplitudes", "radicand")

    def __init__(self, amplitudes: Mapping[int, ScalarLike] | None = None, radicand: int = 1) -> None:
        amps = {int(n): FieldScalar.coerce(c) for n, c in (amplitudes or {}).items()}
        if any(n < 0 for n in amps):
            raise ValueError("occupation numbers are nonnegative")
        self.amplitudes: dict[int, FieldScalar] = {n: c for n, c in sorted(amps.items()) if c}
        self.radicand = radicand if self.amplitudes else 1
        Surd(ONE, self.radicand)  # validates the radicand

    @classmethod
    def number_state(cls, n: int) -> FockKetExpansion:
        """The normalized state |n> = (ad)^n |0> / sqrt(n!)."""
        if n < 0:
            raise ValueError("occupation number must be nonnegative")
        root = sqrt_rational(Fraction(1, math.factorial(n)))
        return cls({n: root.coefficient}, root.radicand)

    @classmethod
    def vacuum(cls) -> FockKetExpansion:
        return cls({0: 1})

    def __bool__(self) -> bool:
        return bool(self.amplitudes)

    def scale(self, factor: Surd | ScalarLike) -> FockKetExpansion:
        f = factor if isinstance(factor, Surd) else Surd(FieldScalar.coerce(factor))
        combined = Surd(ONE, self.radicand) * f
        if not combined:
            return FockKetExpansion()
        return FockKetExpansion({n: c * combined.coefficient for n, c in self.amplitudes.items()}, combined.radicand)

    def __add__(self, other: FockKetExpansion) -> FockKetExpansion:
        if not other:
            return self
        if not self:
            return other
        if other.radicand != self.radicand:
            raise NotInField("kets carry incommensurable square-root normalizations")
        amps = dict(self.amplitudes)
        for n, c in other.amplitudes.items():
            amps[n] = amps.get(n, ZERO) + c
        return FockKetExpansion(amps, self.radicand)

    def __neg__(self) -> FockKetExpansion:
        return FockKetExpansion({n: -c for n, c in self.amplitudes.items()}, self.radicand)

    def __sub__(self, other: FockKetExpansion) -> FockKetExpansion:
        return self + (-other)

    def inner(self, other: FockKetExpansion) -> Surd:
        """<self|other>, antilinear in ``self``."""
        total = ZERO
        for n, c in self.amplitudes.items():
            d = other.amplitudes.get(n)
            if d is not None:
                total = total + c.conjugate() * d * math.factorial(n)
        return Surd(total) * Surd(ONE, self.radicand) * Surd(ONE, other.radicand)

    def normalized_amplitude(self, n: int) -> Surd:
        """<n|self> in the normalized number basis."""
        return FockKetExpansion.number_state(n).inner(self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FockKetExpansion):
            return NotImplemented
        return self.amplitudes == other.amplitudes and self.radicand == other.radicand

    def __hash__(self) -> int:
        return hash((tuple(self.amplitudes.items()), self.radicand))

    def __repr__(self) -> str:
        body = " + ".join(f"({c})*ad^{n}|0>" for n, c in self.amplitudes.items()) or "0"
        return f"FockKetExpansion(sqrt({self.radicand}) * [{body}])"


def apply_to_ket(op: OperatorPoly, ket: FockKetExpansion) -> FockKetExpansion:
    """Exact action using a (ad)^n|0> = n (ad)^(n-1)|0>.

    Coefficients must be xi-free.
    """
    amps: dict[int, FieldScalar] = defaultdict(lambda: ZERO)
    for (r, s), c in op.items():
        coeff = _field_coefficient(c)
        for n, amp in ket.amplitudes.items():
            if s > n:
                continue
            falling = math.perm(n, s)
            amps[n - s + r] = amps[n - s + r] + coeff * amp * falling
    return FockKetExpansion(amps, ket.radicand)


def matrix_element(m: int, op: OperatorPoly, n: int) -> Surd:
    """<m|op|n> between normalized number states, exactly."""
    return FockKetExpansion.number_state(m).inner(apply_to_ket(op, FockKetExpansion.number_state(n)))
