"""Invariant suites behind ``algebraic-sho verify``.

Each suite is a list of named checks returning :class:`CheckResult`.  The
exact suites compare canonical forms for equality; the oracle suite runs the
double-precision falsifier at the configured truncation.  Random inputs come
from a fixed seed, so repeated runs print identical reports.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

import numpy as np

from .exponentials import (
    A_FORM,
    AD_FORM,
    AffineForm,
    GroupElement,
    bch_compose,
    bch_split,
    boost_operator,
    braid,
    conjugation_residual,
    hadamard_conjugate,
    translation_operator,
)
from .expr import evaluate_text, parse, pretty
from .factorization import (
    DIALECTS,
    build_ladder,
    check_adjoint_intertwining,
    check_intertwining,
    dialect_hamiltonian,
    eigenstate,
    norm_product_formula,
    norm_product_operator,
    schrodinger_ops,
    spectrum,
)
from .operators import (
    A,
    AD,
    H,
    P,
    X,
    FockKetExpansion,
    OperatorPoly,
    apply_to_ket,
    commutator,
    matrix_element,
    normal_order,
)
from .oracle import (
    IdentityReport,
    check_identity,
    exponential_of,
    materialize,
    materialize_group,
    position_grid_wavefunctions,
    truncated_commutator,
)
from .scalars import I, SQRT2, XI, FieldScalar, PiPower, ScalarPoly, sqrt_rational
from .wavefunctions import (
    derive_momentum_wavefunction,
    derive_position_wavefunction,
    evaluate,
    hermite_recurrence,
    hermite_reduction,
    inner_product,
    parity_holds,
)

SEED = 20240601
ORACLE_DIMENSION = 64
PROTECTED_BLOCK = 8
ORACLE_TOLERANCE = 1e-8
MATRIX_ELEMENT_TOLERANCE = 1e-9

ROUND_TRIP_CORPUS: tuple[str, ...] = (
    "a",
    "ad",
    "x",
    "p",
    "H",
    "i",
    "sqrt2",
    "xi",
    "0",
    "7",
    "-3",
    "1/2",
    "-5/4",
    "a*ad",
    "ad*a",
    "ad*a + 1",
    "a^2*ad^2",
    "ad^2*a^2 + 4*ad*a + 2",
    "[a, ad]",
    "[x, p]",
    "[H, ad]",
    "[a, ad^3]",
    "[[a, ad], x]",
    "[x + p, x - p]",
    "exp(a)",
    "exp(-1/4*ad)",
    "exp(xi*(a - ad))",
    "exp(1/2*ad)*exp(1/2*a)",
    "exp(x*p)",
    "x^2",
    "(a + ad)*1/2",
    "(a + ad)^3",
    "(ad + sqrt2*xi)^4",
    "-(a + ad)",
    "-a*ad",
    "-(-a)",
    "i*sqrt2*x",
    "(1/2)^3",
    "2^10",
    "a - ad + x - p",
    "H - ad*a - 1/2",
    "1/2*(p^2 + x^2)",
    "(p - i*x)*(p + i*x)",
    "xi^2*a - 3*xi + 1",
    "(ad*a)^2 - ad^2*a^2",
    "[exp(a), ad]",
    "a*(ad*(a*ad))",
    "((a))",
    "[a, [ad, [a, ad]]]",
    "exp(i*x)^2",
    "-1/3*xi^4 + 2/7*i*xi",
    "(x + p)*(x - p) - [x, p]",
)


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f"  {self.detail}" if self.detail else ""
        return f"{status}  {self.suite}/{self.name}{tail}"


Check = Callable[[], tuple[bool, str]]


# ---------------------------------------------------------------------------
# seeded random inputs


def random_scalar(rng: random.Random, bound: int = 3) -> FieldScalar:
    def q() -> Fraction:
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))

    return FieldScalar(q(), q(), q(), q())


def random_operator(rng: random.Random, max_degree: int, terms: int = 5) -> OperatorPoly:
    """Sum of a few normal-ordered words of total degree at most ``max_degree``."""
    out = OperatorPoly()
    for _ in range(terms):
        r = rng.randint(0, max_degree)
        s = rng.randint(0, max_degree - r)
        out = out + OperatorPoly.word(r, s, random_scalar(rng))
    return out


def random_affine(rng: random.Random, bound: int = 3) -> AffineForm:
    return AffineForm(random_scalar(rng, bound), random_scalar(rng, bound), random_scalar(rng, bound))


def random_word(rng: random.Random, length: int) -> list[str]:
    return [rng.choice(("a", "ad")) for _ in range(length)]


def random_ket(rng: random.Random, nmax: int = 6) -> FockKetExpansion:
    return FockKetExpansion({n: random_scalar(rng) for n in range(nmax + 1) if rng.random() < 0.7})


def _word_operator(word: list[str]) -> OperatorPoly:
    out = OperatorPoly.scalar(1)
    for g in word:
        out = out * (A if g == "a" else AD)
    return out


def _all_zero(items: Iterator[OperatorPoly]) -> tuple[bool, str]:
    for k, residual in enumerate(items):
        if residual:
            return False, f"case {k}: residual {residual}"
    return True, ""


# ---------------------------------------------------------------------------
# algebra


def _algebra_checks() -> dict[str, Check]:
    def ladder_commutators() -> tuple[bool, str]:
        if commutator(A, AD) != OperatorPoly.scalar(1):
            return False, "[a, ad] != 1"
        if commutator(X, P) != OperatorPoly.scalar(I):
            return False, "[x, p] != i"
        for n in range(1, 13):
            if commutator(A, AD**n) != (AD ** (n - 1)).scale(n):
                return False, f"[a, ad^{n}] != {n} ad^{n - 1}"
        return True, "[a,ad]=1, [x,p]=i, [a,ad^n]=n ad^(n-1) for n<=12"

    def rewrite_route() -> tuple[bool, str]:
        rng = random.Random(SEED)
        for _ in range(40):
            word = random_word(rng, rng.randint(1, 8))
            if normal_order(word) != _word_operator(word):
                return False, f"bubble rewrite disagrees with word product on {' '.join(word)}"
        return True, "40 random words"

    def idempotence() -> tuple[bool, str]:
        rng = random.Random(SEED + 1)
        for _ in range(30):
            op = normal_order(random_word(rng, 8))
            if normal_order(op) != op:
                return False, f"normal_order not idempotent on {op}"
        return True, "30 random words of length 8"

    def jacobi() -> tuple[bool, str]:
        rng = random.Random(SEED + 2)

        def cases() -> Iterator[OperatorPoly]:
            for _ in range(15):
                a, b, c = (random_operator(rng, 3) for _ in range(3))
                yield commutator(commutator(a, b), c) + commutator(commutator(b, c), a) + commutator(commutator(c, a), b)

        return _all_zero(cases())

    def adjoint_involution() -> tuple[bool, str]:
        rng = random.Random(SEED + 3)
        return _all_zero(op.adjoint().adjoint() - op for op in (random_operator(rng, 5) for _ in range(20)))

    def positivity() -> tuple[bool, str]:
        rng = random.Random(SEED + 4)
        n_op = AD * A
        for _ in range(25):
            psi = random_ket(rng)
            value = psi.inner(apply_to_ket(n_op, psi)).to_field()
            if not value.is_real() or complex(value).real < 0:
                return False, f"<psi|ad a|psi> = {value}"
        return True, "25 random kets"

    def surface_lowering() -> tuple[bool, str]:
        pairs = [("a*ad", "ad*a + 1"), ("H", "ad*a + 1/2"), ("[x,p]", "i"), ("x", "1/2*sqrt2*(a + ad)")]
        for lhs, rhs in pairs:
            if evaluate_text(lhs) != evaluate_text(rhs):
                return False, f"{lhs!r} does not lower to {rhs!r}"
        return True, ""

    def round_trip() -> tuple[bool, str]:
        for text in ROUND_TRIP_CORPUS:
            ast = parse(text)
            if parse(pretty(ast)) != ast:
                return False, f"round trip changed {text!r} (printed {pretty(ast)!r})"
        return True, f"{len(ROUND_TRIP_CORPUS)} expressions"

    return {
        "ladder-commutators": ladder_commutators,
        "bubble-rewrite-route": rewrite_route,
        "normal-order-idempotent": idempotence,
        "jacobi-identity": jacobi,
        "adjoint-involution": adjoint_involution,
        "number-operator-positivity": positivity,
        "surface-lowering": surface_lowering,
        "parser-round-trip": round_trip,
    }


# ---------------------------------------------------------------------------
# exponentials


def _exponential_checks() -> dict[str, Check]:
    def translation_shift() -> tuple[bool, str]:
        x0 = XI
        g = translation_operator(x0)
        if conjugation_residual(g, X, X + x0):
            return False, "translation does not shift x"
        if hadamard_conjugate(g.inverse().exponent, X) != X + x0:
            return False, "exp(i x0 p) x exp(-i x0 p) != x + x0"
        return True, ""

    def boost_shift() -> tuple[bool, str]:
        if conjugation_residual(boost_operator(XI), P, P + XI):
            return False, "boost does not shift p"
        return True, ""

    def shift_powers() -> tuple[bool, str]:
        c = Fraction(1, 2)
        for n in range(7):
            if hadamard_conjugate(A_FORM.scale(c), AD**n) != (AD + c) ** n:
                return False, f"exp(c a) ad^{n} exp(-c a) != (ad + c)^{n}"
        return True, ""

    def braid_round_trip() -> tuple[bool, str]:
        rng = random.Random(SEED + 5)
        for _ in range(20):
            f, g = random_affine(rng), random_affine(rng)
            forward = braid(f, g)
            back = braid(*forward.factors)
            if back.factors != (f, g) or (forward.log_prefactor + back.log_prefactor):
                return False, "braid then reverse braid left a central factor"
            if forward.collapse() != bch_compose(f, g):
                return False, "braid and BCH presentations disagree"
        return True, "20 random pairs"

    def bch_associative() -> tuple[bool, str]:
        rng = random.Random(SEED + 6)
        for _ in range(20):
            f, g, h = (GroupElement(random_affine(rng)) for _ in range(3))
            if (f * g) * h != f * (g * h):
                return False, "bch composition is not associative"
            if not (f * f.inverse()).is_identity():
                return False, "g * g^-1 is not the identity"
        return True, "20 random triples"

    def homomorphism() -> tuple[bool, str]:
        rng = random.Random(SEED + 7)

        def cases() -> Iterator[OperatorPoly]:
            for _ in range(15):
                f = random_affine(rng)
                b, c = random_operator(rng, 3), random_operator(rng, 3)
                yield hadamard_conjugate(f, b * c) - hadamard_conjugate(f, b) * hadamard_conjugate(f, c)

        return _all_zero(cases())

    def gaussian_prefactors() -> tuple[bool, str]:
        c = XI.scale(SQRT2.inverse())
        split = bch_split(A_FORM.scale(c) - AD_FORM.scale(c))
        if split.log_prefactor != (XI * XI).scale(Fraction(-1, 4)):
            return False, f"split prefactor {split.log_prefactor}"
        joined = bch_compose(AD_FORM.scale(-c), A_FORM.scale(-c))
        if joined.log_prefactor != (XI * XI).scale(Fraction(-1, 4)):
            return False, f"recombination prefactor {joined.log_prefactor}"
        return True, "split and recombination both carry -xi^2/4"

    return {
        "translation-shift": translation_shift,
        "boost-shift": boost_shift,
        "hadamard-shift-powers": shift_powers,
        "braid-round-trip": braid_round_trip,
        "bch-associativity": bch_associative,
        "hadamard-homomorphism": homomorphism,
        "gaussian-prefactors": gaussian_prefactors,
    }


# ---------------------------------------------------------------------------
# factorization


def _factorization_checks() -> dict[str, Check]:
    def ground_factorization() -> tuple[bool, str]:
        a0, a0d = schrodinger_ops()
        residual = H - (a0d * a0 + Fraction(1, 2))
        return (not residual), f"residual {residual}"

    def ladder_shape() -> tuple[bool, str]:
        ladder = build_ladder(8)
        if ladder.energies != tuple(Fraction(2 * j + 1, 2) for j in range(8)):
            return False, f"energies {ladder.energies}"
        for j, h in enumerate(ladder.hamiltonians):
            if h != H + j:
                return False, f"H_{j} != H + {j}"
        if any(op != ladder.lowering_ops[0] for op in ladder.lowering_ops):
            return False, "lowering operators differ between rungs"
        return True, "E_j = j + 1/2, H_j = H + j, A_j = A_0 for j < 8"

    def intertwining() -> tuple[bool, str]:
        ladder = build_ladder(8)
        return _all_zero(
            r for j in range(7) for r in (check_intertwining(ladder, j), check_adjoint_intertwining(ladder, j))
        )

    def norm_products() -> tuple[bool, str]:
        energies = build_ladder(7).energies
        for e in energies:
            for j in range(7):
                formula, direct = norm_product_formula(e, j), norm_product_operator(e, j)
                if formula != direct:
                    return False, f"E={e}, j={j}: {formula} != {direct}"
        return True, "E in E_0..E_6, j <= 6"

    def spectrum_and_raising() -> tuple[bool, str]:
        for n in range(21):
            ket = eigenstate(n)
            if apply_to_ket(H, ket) != ket.scale(Fraction(2 * n + 1, 2)):
                return False, f"H|{n}> != ({n} + 1/2)|{n}>"
            if ket.inner(ket).to_field() != FieldScalar(1):
                return False, f"<{n}|{n}> != 1"
            if ket != FockKetExpansion.number_state(n):
                return False, f"raised state {n} differs from (ad)^n|0>/sqrt(n!)"
            raised = apply_to_ket(AD, ket)
            if raised != FockKetExpansion.number_state(n + 1).scale(sqrt_rational(n + 1)):
                return False, f"ad|{n}> != sqrt({n + 1})|{n + 1}>"
        if [e for _, e in spectrum(20)] != [Fraction(2 * n + 1, 2) for n in range(21)]:
            return False, "spectrum table"
        return True, "n <= 20"

    def dialects() -> tuple[bool, str]:
        for d in DIALECTS:
            if dialect_hamiltonian(d) != (1, Fraction(1, 2)):
                return False, f"{d}: H != raising*lowering + 1/2"
        return True, ", ".join(DIALECTS)

    return {
        "ground-factorization": ground_factorization,
        "ladder-shape": ladder_shape,
        "intertwining": intertwining,
        "norm-products": norm_products,
        "spectrum-and-raising": spectrum_and_raising,
        "dialects": dialects,
    }


# ---------------------------------------------------------------------------
# wavefunctions


def _wavefunction_checks() -> dict[str, Check]:
    def pipeline() -> tuple[bool, str]:
        for n in range(16):
            expected = hermite_recurrence(n).as_poly()
            for f in (derive_position_wavefunction(n), derive_momentum_wavefunction(n)):
                if f.poly != expected:
                    return False, f"{f.space} n={n}: poly {f.poly}"
                if f.scale_squared != Fraction(1, 2**n * math.factorial(n)):
                    return False, f"{f.space} n={n}: scale^2 {f.scale_squared}"
                if f.gaussian_rate != Fraction(1, 2) or f.norm != PiPower(1, Fraction(-1, 4)):
                    return False, f"{f.space} n={n}: gaussian or normalization"
        return True, "n <= 15, both spaces"

    def reduction() -> tuple[bool, str]:
        for n in range(16):
            for space in ("position", "momentum"):
                if hermite_reduction(n, space) != hermite_recurrence(n):
                    return False, f"{space} reduction differs at n={n}"
        return True, "n <= 15"

    def orthonormality() -> tuple[bool, str]:
        for derive in (derive_position_wavefunction, derive_momentum_wavefunction):
            states = [derive(n) for n in range(13)]
            for m, f in enumerate(states):
                for n, g in enumerate(states):
                    value = inner_product(f, g)
                    if value != FieldScalar(1 if m == n else 0):
                        return False, f"{f.space}: <{m}|{n}> = {value}"
        return True, "m, n <= 12, both spaces"

    def parity_and_isomorphism() -> tuple[bool, str]:
        for n in range(16):
            f, g = derive_position_wavefunction(n), derive_momentum_wavefunction(n)
            if not (parity_holds(f) and parity_holds(g)):
                return False, f"parity fails at n={n}"
            if n <= 12 and f.poly != g.poly:
                return False, f"momentum poly differs from position poly at n={n}"
        return True, ""

    return {
        "pipeline-vs-recurrence": pipeline,
        "hermite-reduction": reduction,
        "orthonormality": orthonormality,
        "parity-and-isomorphism": parity_and_isomorphism,
    }


# ---------------------------------------------------------------------------
# oracle


def oracle_identity_reports(dimension: int = ORACLE_DIMENSION, parameters: tuple[Fraction, ...] = (Fraction(1, 4), Fraction(1, 2))) -> list[IdentityReport]:
    """Braid, BCH, Hadamard and translation identities on truncated matrices."""
    reports: list[IdentityReport] = []

    def report(name: str, lhs, rhs) -> None:
        reports.append(check_identity(lhs, rhs, PROTECTED_BLOCK, ORACLE_TOLERANCE, name))

    for t in parameters:
        f, g = AD_FORM.scale(t), A_FORM.scale(t)
        mixed_f = AffineForm(t, -t * I)
        mixed_g = AffineForm(t * I, t)
        for label, (u, v) in {"ad,a": (f, g), "mixed": (mixed_f, mixed_g)}.items():
            lhs = [exponential_of(u, dimension), exponential_of(v, dimension)]
            report(f"braid[{label}] t={t}", lhs, materialize_group(braid(u, v), dimension))
            report(f"bch[{label}] t={t}", lhs, materialize_group(bch_compose(u, v), dimension))
        shift = translation_operator(t)
        gm = materialize_group(shift, dimension)
        report(f"translation x0={t}", [materialize(X, dimension), gm], [gm, materialize(X + t, dimension)])
        conj = A_FORM.scale(t)
        report(
            f"hadamard ad^3 c={t}",
            [exponential_of(conj, dimension), materialize(AD**3, dimension), exponential_of(-conj, dimension)],
            materialize(hadamard_conjugate(conj, AD**3), dimension),
        )
    return reports


def matrix_element_concordance(
    dimension: int = 32, nmax: int = 16, samples: int = 8, seed: int = SEED + 8
) -> tuple[float, int]:
    """Worst |exact <m|A|n> - oracle entry| over random degree-<=6 operators."""
    rng = random.Random(seed)
    worst, count = 0.0, 0
    for _ in range(samples):
        op = random_operator(rng, 6)
        dense = materialize(op, dimension).entries
        for m in range(nmax + 1):
            for n in range(nmax + 1):
                exact = complex(matrix_element(m, op, n))
                worst = max(worst, abs(exact - dense[m, n]))
                count += 1
    return worst, count


def grid_eigenfunction_residual(nmax: int = 8, dimension: int = ORACLE_DIMENSION, window: float = 4.0) -> float:
    nodes, values = position_grid_wavefunctions(dimension, nmax)
    keep = np.abs(nodes) <= window
    worst = 0.0
    for n in range(nmax + 1):
        exact = evaluate(derive_position_wavefunction(n), nodes[keep])
        worst = max(worst, float(np.max(np.abs(exact - values[n, keep]))))
    return worst


def convergence_residuals(parameter: Fraction = Fraction(2), sizes: tuple[int, ...] = (32, 64)) -> list[float]:
    """BCH residual of two large unitary displacements for increasing truncations.

    Anti-Hermitian exponents keep the exponentials bounded, so the residual is
    pure truncation error rather than rounding in huge entries.
    """
    f, g = AffineForm(parameter, -parameter), AffineForm(parameter * I, parameter * I)
    out = []
    for n in sizes:
        lhs = [exponential_of(f, n), exponential_of(g, n)]
        out.append(check_identity(lhs, materialize_group(bch_compose(f, g), n), PROTECTED_BLOCK).residual)
    return out


def _oracle_checks() -> dict[str, Check]:
    def identities() -> tuple[bool, str]:
        reports = oracle_identity_reports()
        failed = [r.line() for r in reports if not r.passed]
        worst = max(r.residual for r in reports)
        return not failed, "; ".join(failed) if failed else f"{len(reports)} identities, worst {worst:.2e}"

    def concordance() -> tuple[bool, str]:
        worst, count = matrix_element_concordance()
        return worst < MATRIX_ELEMENT_TOLERANCE, f"{count} entries, worst {worst:.2e}"

    def truncation_artifact() -> tuple[bool, str]:
        diag = np.diag(truncated_commutator(4).entries)
        return bool(np.allclose(diag, [1, 1, 1, -3])), f"diag {diag.real.tolist()}"

    def grid() -> tuple[bool, str]:
        worst = grid_eigenfunction_residual()
        return worst < 1e-6, f"n <= 8, worst {worst:.2e}"

    def convergence() -> tuple[bool, str]:
        coarse, fine = convergence_residuals()
        return fine < coarse, f"N=32 {coarse:.2e} -> N=64 {fine:.2e}"

    return {
        "identities": identities,
        "matrix-elements": concordance,
        "truncation-artifact": truncation_artifact,
        "grid-eigenfunctions": grid,
        "convergence": convergence,
    }


SUITES: dict[str, Callable[[], dict[str, Check]]] = {
    "algebra": _algebra_checks,
    "exponentials": _exponential_checks,
    "factorization": _factorization_checks,
    "wavefunctions": _wavefunction_checks,
    "oracle": _oracle_checks,
}


def run_suite(name: str) -> list[CheckResult]:
    """Run one suite (or ``"all"``); exceptions count as failures."""
    if name == "all":
        return [r for suite in SUITES for r in run_suite(suite)]
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    results = []
    for check_name, check in SUITES[name]().items():
        try:
            passed, detail = check()
        except Exception as exc:  # a crashing check is a failed check
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, check_name, bool(passed), detail))
    return results
