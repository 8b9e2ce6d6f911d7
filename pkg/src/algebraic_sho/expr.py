"""A small surface language for ladder-operator expressions.

Grammar (whitespace insensitive, ``*`` mandatory)::

    expr     := term (("+" | "-") term)*
    term     := ["-"] factor ("*" factor)*
    factor   := atom ("^" nat)?
    atom     := "a" | "ad" | "x" | "p" | "H" | "i" | "sqrt2" | "xi"
              | rational | "(" expr ")" | "[" expr "," expr "]" | "exp" "(" expr ")"
    rational := int ("/" nat)?

``a†``, ``â``, ``â†``, ``ξ`` and ``√2`` are accepted as input aliases; output
is ASCII only.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .errors import AlgebraError, UnsupportedExponent
from .exponentials import AffineForm, GroupElement
from .operators import AD, H, A, OperatorPoly, P, X, commutator
from .scalars import I, SQRT2, XI, FieldScalar, ScalarPoly

Span = tuple[int, int]


class ExprError(AlgebraError):
    def __init__(self, message: str, span: Span, text: str = "") -> None:
        super().__init__(message)
        self.message = message
        self.span = span
        self.text = text

    def __str__(self) -> str:
        start, end = self.span
        if not self.text:
            return f"{self.message} at {start}:{end}"
        caret = " " * start + "^" * max(1, end - start)
        return f"{self.message} at {start}:{end}\n  {self.text}\n  {caret}"


class ParseError(ExprError, ValueError):
    pass


class LoweringError(ExprError, ValueError):
    pass


class NonAffineExponent(LoweringError, UnsupportedExponent):
    pass


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Node:
    span: Span = field(default=(0, 0), compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class Generator(Node):
    name: str


@dataclass(frozen=True)
class Constant(Node):
    name: str


@dataclass(frozen=True)
class RationalLit(Node):
    numerator: int
    denominator: int = 1


@dataclass(frozen=True)
class Sum(Node):
    terms: tuple[tuple[str, Node], ...]


@dataclass(frozen=True)
class Product(Node):
    factors: tuple[Node, ...]


@dataclass(frozen=True)
class Power(Node):
    base: Node
    exponent: int


@dataclass(frozen=True)
class Neg(Node):
    operand: Node


@dataclass(frozen=True)
class Commutator(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Exp(Node):
    argument: Node


ExprAst = Node

GENERATORS = ("a", "ad", "x", "p", "H")
CONSTANTS = ("i", "sqrt2", "xi")
_ALIASES = {"â†": "ad", "a†": "ad", "â": "a", "ξ": "xi", "√2": "sqrt2"}


# ---------------------------------------------------------------------------
# lexer


@dataclass(frozen=True)
class Token:
    kind: str  # "name", "int", "op", "end"
    text: str
    span: Span


_TOKEN_RE = re.compile(r"\s*(?:(?P<alias>â†|a†|â|ξ|√2)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>\d+)|(?P<op>[-+*^()\[\],/]))")


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", (start, start + 1), text)
        kind = m.lastgroup
        start, end = m.span(kind)
        value = m.group(kind)
        if kind == "alias":
            kind, value = "name", _ALIASES[value]
        tokens.append(Token(kind, value, (start, end)))
        pos = m.end()
    tokens.append(Token("end", "", (len(text), len(text))))
    return tokens


# ---------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def error(self, message: str, token: Token | None = None) -> ParseError:
        token = token or self.tok
        start, end = token.span
        if token.kind == "end":
            end = start
            message = f"{message}, found end of input"
        else:
            message = f"{message}, found {token.text!r}"
        return ParseError(message, (start, end), self.text)

    def expect(self, text: str) -> Token:
        if self.tok.kind == "op" and self.tok.text == text:
            return self.advance()
        raise self.error(f"expected {text!r}")

    def at_op(self, *texts: str) -> bool:
        return self.tok.kind == "op" and self.tok.text in texts

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "end":
            raise self.error("unexpected token")
        return node

    def expr(self) -> Node:
        start = self.tok.span[0]
        first = self.term()
        terms: list[tuple[str, Node]] = [("+", first)]
        while self.at_op("+", "-"):
            sign = self.advance().text
            terms.append((sign, self.term()))
        if len(terms) == 1:
            return first
        return Sum(tuple(terms), span=(start, terms[-1][1].span[1]))

    def term(self) -> Node:
        start = self.tok.span[0]
        negate = False
        if self.at_op("-"):
            self.advance()
            negate = True
        factors = [self.factor()]
        while self.at_op("*"):
            self.advance()
            factors.append(self.factor())
        end = factors[-1].span[1]
        node = factors[0] if len(factors) == 1 else Product(tuple(factors), span=(factors[0].span[0], end))
        return Neg(node, span=(start, end)) if negate else node

    def factor(self) -> Node:
        base = self.atom()
        if self.at_op("^"):
            self.advance()
            tok = self.tok
            if tok.kind != "int":
                raise self.error("expected a natural-number exponent")
            self.advance()
            if self.at_op("/"):
                raise self.error("exponent must be a natural number")
            return Power(base, int(tok.text), span=(base.span[0], tok.span[1]))
        return base

    def atom(self) -> Node:
        tok = self.tok
        if tok.kind == "name":
            self.advance()
            if tok.text in GENERATORS:
                return Generator(tok.text, span=tok.span)
            if tok.text in CONSTANTS:
                return Constant(tok.text, span=tok.span)
            if tok.text == "exp":
                self.expect("(")
                inner = self.expr()
                close = self.expect(")")
                return Exp(inner, span=(tok.span[0], close.span[1]))
            raise ParseError(f"unknown symbol {tok.text!r}", tok.span, self.text)
        if tok.kind == "int":
            self.advance()
            if self.at_op("/"):
                self.advance()
                den = self.tok
                if den.kind != "int":
                    raise self.error("expected a denominator")
                self.advance()
                if int(den.text) == 0:
                    raise ParseError("zero denominator", den.span, self.text)
                return RationalLit(int(tok.text), int(den.text), span=(tok.span[0], den.span[1]))
            return RationalLit(int(tok.text), span=tok.span)
        if self.at_op("("):
            self.advance()
            inner = self.expr()
            self.expect(")")
            return inner
        if self.at_op("["):
            self.advance()
            left = self.expr()
            self.expect(",")
            right = self.expr()
            close = self.expect("]")
            return Commutator(left, right, span=(tok.span[0], close.span[1]))
        raise self.error("expected an operand")


def parse(text: str) -> Node:
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# printer


def _is_atomic(node: Node) -> bool:
    if isinstance(node, RationalLit):
        return node.denominator == 1
    return isinstance(node, (Generator, Constant, Commutator, Exp))


def pretty(node: Node) -> str:
    """Canonical text; ``parse(pretty(t)) == t`` for every AST ``t``."""
    if isinstance(node, Generator) or isinstance(node, Constant):
        return node.name
    if isinstance(node, RationalLit):
        if node.denominator == 1:
            return str(node.numerator)
        return f"{node.numerator}/{node.denominator}"
    if isinstance(node, Sum):
        out = []
        for k, (sign, t) in enumerate(node.terms):
            body = f"({pretty(t)})" if isinstance(t, Sum) else pretty(t)
            out.append(body if k == 0 else f" {sign} {body}")
        return "".join(out)
    if isinstance(node, Product):
        return "*".join(
            f"({pretty(f)})" if isinstance(f, (Sum, Product, Neg)) else pretty(f) for f in node.factors
        )
    if isinstance(node, Neg):
        inner = node.operand
        wrap = isinstance(inner, (Sum, Neg))
        return f"-({pretty(inner)})" if wrap else f"-{pretty(inner)}"
    if isinstance(node, Power):
        base = pretty(node.base)
        if not _is_atomic(node.base):
            base = f"({base})"
        return f"{base}^{node.exponent}"
    if isinstance(node, Commutator):
        return f"[{pretty(node.left)}, {pretty(node.right)}]"
    if isinstance(node, Exp):
        return f"exp({pretty(node.argument)})"
    raise TypeError(f"not an expression node: {node!r}")


# ---------------------------------------------------------------------------
# canonical forms -> AST


_UNITS: tuple[tuple[str, ...], ...] = ((), ("i",), ("sqrt2",), ("i", "sqrt2"))


def _signed_monomials(poly: ScalarPoly) -> list[tuple[str, list[Node]]]:
    out: list[tuple[str, list[Node]]] = []
    for k in range(poly.degree, -1, -1):
        c = poly.coefficient(k)
        for q, unit in zip(c.parts, _UNITS):
            if not q:
                continue
            factors: list[Node] = []
            mag = abs(q)
            if mag != 1 or (not unit and k == 0):
                factors.append(RationalLit(mag.numerator, mag.denominator))
            factors.extend(Constant(u) for u in unit)
            if k:
                factors.append(Constant("xi") if k == 1 else Power(Constant("xi"), k))
            out.append(("-" if q < 0 else "+", factors))
    return out


def _product(factors: list[Node]) -> Node:
    return factors[0] if len(factors) == 1 else Product(tuple(factors))


def _word_factors(r: int, s: int) -> list[Node]:
    out: list[Node] = []
    for name, k in (("ad", r), ("a", s)):
        if k == 1:
            out.append(Generator(name))
        elif k > 1:
            out.append(Power(Generator(name), k))
    return out


def _assemble(signed: list[tuple[str, Node]]) -> Node:
    if not signed:
        return RationalLit(0)
    sign, first = signed[0]
    head = Neg(first) if sign == "-" else first
    if len(signed) == 1:
        return head
    return Sum((("+", head),) + tuple(signed[1:]))


def poly_to_ast(poly: ScalarPoly) -> Node:
    return _assemble([(sign, _product(f)) for sign, f in _signed_monomials(poly)])


def operator_to_ast(op: OperatorPoly) -> Node:
    signed: list[tuple[str, Node]] = []
    for (r, s), c in op.items():
        word = _word_factors(r, s)
        monomials = _signed_monomials(c)
        if not word:
            signed.extend((sign, _product(f)) for sign, f in monomials)
        elif len(monomials) == 1:
            sign, f = monomials[0]
            if f == [RationalLit(1)]:
                f = []
            signed.append((sign, _product(f + word)))
        else:
            signed.append(("+", Product((poly_to_ast(c),) + tuple(word))))
    return _assemble(signed)


def format_operator(op: OperatorPoly) -> str:
    return pretty(operator_to_ast(op))


def format_poly(poly: ScalarPoly) -> str:
    return pretty(poly_to_ast(poly))


def format_group_element(g: GroupElement) -> str:
    return f"exp({format_poly(g.log_prefactor)}) * exp({format_operator(g.exponent.to_operator())})"


# ---------------------------------------------------------------------------
# lowering

Lowered = Union[OperatorPoly, GroupElement]

_ATOMS: dict[str, OperatorPoly] = {
    "a": A,
    "ad": AD,
    "x": X,
    "p": P,
    "H": H,
    "i": OperatorPoly.scalar(I),
    "sqrt2": OperatorPoly.scalar(SQRT2),
    "xi": OperatorPoly.scalar(XI),
}


def lower(node: Node, text: str = "") -> Lowered:
    """Translate an AST into the operator algebra (natural units)."""

    def need_operator(value: Lowered, where: Node, what: str) -> OperatorPoly:
        if isinstance(value, GroupElement):
            raise LoweringError(f"an exponential cannot appear in {what}", where.span, text)
        return value

    def go(n: Node) -> Lowered:
        if isinstance(n, (Generator, Constant)):
            return _ATOMS[n.name]
        if isinstance(n, RationalLit):
            return OperatorPoly.scalar(Fraction(n.numerator, n.denominator))
        if isinstance(n, Neg):
            return -need_operator(go(n.operand), n, "a negation")
        if isinstance(n, Sum):
            total = OperatorPoly()
            for sign, t in n.terms:
                v = need_operator(go(t), t, "a sum")
                total = total + v if sign == "+" else total - v
            return total
        if isinstance(n, Product):
            values = [go(f) for f in n.factors]
            if all(isinstance(v, GroupElement) for v in values):
                acc = GroupElement()
                for v in values:
                    acc = acc * v
                return acc
            acc_op = OperatorPoly.scalar(1)
            for f, v in zip(n.factors, values):
                acc_op = acc_op * need_operator(v, f, "a product with operators")
            return acc_op
        if isinstance(n, Power):
            v = go(n.base)
            if isinstance(v, GroupElement):
                acc = GroupElement()
                for _ in range(n.exponent):
                    acc = acc * v
                return acc
            return v**n.exponent
        if isinstance(n, Commutator):
            left = need_operator(go(n.left), n.left, "a commutator")
            right = need_operator(go(n.right), n.right, "a commutator")
            return commutator(left, right)
        if isinstance(n, Exp):
            arg = need_operator(go(n.argument), n.argument, "an exponent")
            try:
                return GroupElement(AffineForm.from_operator(arg))
            except UnsupportedExponent as exc:
                raise NonAffineExponent(f"non-affine exponent: {exc}", n.span, text) from None
        raise TypeError(f"not an expression node: {n!r}")

    return go(node)


def evaluate_text(text: str) -> Lowered:
    return lower(parse(text), text)


def coerce_field(op: OperatorPoly) -> FieldScalar:
    """Scalar value of an identity-only, xi-free operator."""
    if not op.is_scalar() or not op.scalar_part().is_constant():
        raise ValueError(f"{op} is not a plain number")
    return op.scalar_part().constant_term()
