"""Schrödinger factorization ladder for the oscillator.

Starting from H = A_0^dagger A_0 + E_0, each auxiliary Hamiltonian is
H_j = A_{j-1} A_{j-1}^dagger + E_{j-1}, refactorized as A_j^dagger A_j + E_j
with the largest admissible E_j.  Everything is in natural units.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import AlgebraError, InvalidArgument
from .operators import A, H, P, X, FockKetExpansion, OperatorPoly, apply_to_ket, commutator
from .scalars import I, INV_SQRT2, FieldScalar, sqrt_rational


@dataclass(frozen=True)
class SuperpotentialLinear:
    """W(k' x) = k' x; only the product k k' enters the lowering operator."""

    k_product: Fraction = Fraction(-1)

    def lowering(self) -> OperatorPoly:
        # A = p/sqrt2 + (i/sqrt2) k W(k' x) = (p + i k k' x)/sqrt2
        return (P + X.scale(I * self.k_product)).scale(INV_SQRT2)

    def ground_energy(self) -> Fraction:
        """E_0 = V - (i k/2)[p, W] - (k^2/2) W^2 with V = x^2/2; must be a number."""
        k = self.k_product
        potential = (X * X).scale(Fraction(1, 2))
        residual = potential - commutator(P, X.scale(k)).scale(I * Fraction(1, 2)) - (X * X).scale(k * k / 2)
        if not residual.is_scalar():
            raise AlgebraError(f"k k' = {k} does not reproduce the oscillator potential")
        return residual.scalar_part().constant_term().to_rational()


def choose_superpotential() -> SuperpotentialLinear:
    """Pick k k' = +-1 (the only values matching x^2/2) with the larger ground energy."""
    candidates = [SuperpotentialLinear(Fraction(s)) for s in (1, -1)]
    return max(candidates, key=lambda w: w.ground_energy())


def schrodinger_ops() -> tuple[OperatorPoly, OperatorPoly]:
    """(A_0, A_0^dagger) = ((p - i x)/sqrt2, (p + i x)/sqrt2)."""
    lowering = choose_superpotential().lowering()
    if lowering != A.scale(-I):
        raise AlgebraError(f"unexpected Schrödinger lowering operator {lowering}")
    return lowering, lowering.adjoint()


def _as_number(op: OperatorPoly) -> Fraction | None:
    if not op.is_scalar():
        return None
    c = op.scalar_part()
    if not c.is_constant() or not c.constant_term().is_rational():
        return None
    return c.constant_term().to_rational()


@dataclass(frozen=True)
class FactorizationLadder:
    lowering_ops: tuple[OperatorPoly, ...]
    energies: tuple[Fraction, ...]
    hamiltonians: tuple[OperatorPoly, ...]

    @property
    def depth(self) -> int:
        return len(self.energies)


def build_ladder(depth: int) -> FactorizationLadder:
    """Construct H_j, A_j, E_j for j < depth."""
    if depth < 1:
        raise InvalidArgument("ladder depth must be at least 1")
    a0, a0d = schrodinger_ops()
    e0 = _as_number(H - a0d * a0)
    if e0 is None:
        raise AlgebraError("H - A_0^dagger A_0 is not a number")
    lowering, energies, hams = [a0], [e0], [a0d * a0 + e0]
    for _ in range(1, depth):
        prev, e_prev = lowering[-1], energies[-1]
        h_next = prev * prev.adjoint() + e_prev
        # candidate factorizations of h_next; keep the one with the largest energy
        best: tuple[Fraction, OperatorPoly] | None = None
        for cand in (a0, prev.adjoint()):
            e = _as_number(h_next - cand.adjoint() * cand)
            if e is not None and (best is None or e > best[0]):
                best = (e, cand)
        if best is None:
            raise AlgebraError("auxiliary Hamiltonian admits no factorization")
        energies.append(best[0])
        lowering.append(best[1])
        hams.append(h_next)
    return FactorizationLadder(tuple(lowering), tuple(energies), tuple(hams))


def check_intertwining(ladder: FactorizationLadder, j: int) -> OperatorPoly:
    """H_{j+1} A_j - A_j H_j; zero when the intertwining relation holds."""
    if not 0 <= j < ladder.depth - 1:
        raise IndexError(f"rung {j} needs a ladder deeper than {ladder.depth}")
    a_j = ladder.lowering_ops[j]
    return ladder.hamiltonians[j + 1] * a_j - a_j * ladder.hamiltonians[j]


def check_adjoint_intertwining(ladder: FactorizationLadder, j: int) -> OperatorPoly:
    """A_j^dagger H_{j+1} - H_j A_j^dagger."""
    if not 0 <= j < ladder.depth - 1:
        raise IndexError(f"rung {j} needs a ladder deeper than {ladder.depth}")
    a_jd = ladder.lowering_ops[j].adjoint()
    return a_jd * ladder.hamiltonians[j + 1] - ladder.hamiltonians[j] * a_jd


def spectrum(nmax: int) -> list[tuple[int, Fraction]]:
    return list(enumerate(build_ladder(nmax + 1).energies))


def _spectral_index(energy: Fraction) -> int | None:
    n = energy - Fraction(1, 2)
    return int(n) if n.denominator == 1 and n >= 0 else None


def norm_product_formula(energy: Fraction, j: int) -> Fraction:
    """(E - E_j)(E - E_{j-1}) ... (E - E_0)."""
    energies = build_ladder(j + 1).energies
    out = Fraction(1)
    for e in energies:
        out *= energy - e
    return out


def norm_product_operator(energy: Fraction, j: int) -> Fraction:
    """<psi| A_0^dagger ... A_j^dagger A_j ... A_0 |psi> for the eigenstate with energy E."""
    n = _spectral_index(Fraction(energy))
    if n is None:
        raise InvalidArgument(f"{energy} is not an oscillator eigenvalue")
    ladder = build_ladder(j + 1)
    phi = eigenstate(n)
    for op in ladder.lowering_ops:
        phi = apply_to_ket(op, phi)
    value = phi.inner(phi)
    return value.to_field().to_rational()


def norm_product(energy: Fraction | int, j: int) -> Fraction:
    """Norm-product formula, cross-checked against the operator string when E is an eigenvalue."""
    energy = Fraction(energy)
    symbolic = norm_product_formula(energy, j)
    if _spectral_index(energy) is not None:
        direct = norm_product_operator(energy, j)
        if direct != symbolic:
            raise AlgebraError(f"norm product mismatch at E={energy}, j={j}: {symbolic} != {direct}")
    return symbolic


def eigenstate(n: int) -> FockKetExpansion:
    """Normalized |n> built by raising the ground state with A_j^dagger.

    The Schrödinger operators differ from the Dirac ones by a phase
    (A_0 = c a), so the raised state is rephased by conj(c)^-n to match
    |n> = (ad)^n |0> / sqrt(n!).
    """
    if n < 0:
        raise InvalidArgument("eigenstate index must be nonnegative")
    ladder = build_ladder(max(n, 1))
    ground = FockKetExpansion.vacuum()
    if apply_to_ket(ladder.lowering_ops[0], ground):
        raise AlgebraError("vacuum is not annihilated by A_0")
    state = ground
    for j in reversed(range(n)):
        state = apply_to_ket(ladder.lowering_ops[j].adjoint(), state)
    c = ladder.lowering_ops[0].coefficient((0, 1)).constant_term()
    state = state.scale(c.conjugate().inverse() ** n)
    norm_sq = state.inner(state).to_field().to_rational()
    return state.scale(sqrt_rational(1 / norm_sq))


class DialectPair(NamedTuple):
    lowering: OperatorPoly
    raising: OperatorPoly


DIALECTS = ("schrodinger", "dirac1947", "born_jordan")


def dialect_ops(dialect: str) -> DialectPair:
    """Ladder pair of a historical notation, in the canonical a/ad algebra.

    schrodinger  A_0 = (p - i x)/sqrt2 = -i a
    dirac1947    eta_bar = (p - i q)/sqrt2 = -i a, eta = (p + i q)/sqrt2 = i ad
    born_jordan  b = C (p - 2 pi i nu0 mu q) = -i a with h nu0 = 2 pi nu0 mu = 1
    """
    if dialect == "schrodinger":
        pair = DialectPair(*schrodinger_ops())
    elif dialect == "dirac1947":
        eta = (P + X.scale(I)).scale(INV_SQRT2)
        eta_bar = (P - X.scale(I)).scale(INV_SQRT2)
        pair = DialectPair(eta_bar, eta)
    elif dialect == "born_jordan":
        two_pi_nu0_mu = Fraction(1)
        c = INV_SQRT2  # 1/sqrt(2 h nu0 mu)
        b = (P - X.scale(I * two_pi_nu0_mu)).scale(c)
        pair = DialectPair(b, (P + X.scale(I * two_pi_nu0_mu)).scale(c))
    else:
        raise InvalidArgument(f"unknown dialect {dialect!r}; expected one of {', '.join(DIALECTS)}")
    if pair.raising != pair.lowering.adjoint():
        raise AlgebraError(f"{dialect}: raising operator is not the adjoint of the lowering operator")
    if commutator(pair.lowering, pair.raising) != OperatorPoly.scalar(1):
        raise AlgebraError(f"{dialect}: defining commutator is not 1")
    return pair


def dialect_hamiltonian(dialect: str) -> tuple[Fraction, Fraction]:
    """(scale, shift) with H = scale * raising * lowering + shift."""
    pair = dialect_ops(dialect)
    product = pair.raising * pair.lowering
    kappa = product.coefficient((1, 1)).constant_term()
    scale = kappa.inverse()
    shift = _as_number(H - product.scale(scale))
    if shift is None or not scale.is_rational():
        raise AlgebraError(f"{dialect}: H is not affine in raising*lowering")
    return scale.to_rational(), shift


def phase_to_dirac(dialect: str) -> FieldScalar:
    """c with lowering = c * a."""
    return dialect_ops(dialect).lowering.coefficient((0, 1)).constant_term()


__all__ = [
    "DIALECTS",
    "DialectPair",
    "FactorizationLadder",
    "SuperpotentialLinear",
    "build_ladder",
    "check_adjoint_intertwining",
    "check_intertwining",
    "choose_superpotential",
    "dialect_hamiltonian",
    "dialect_ops",
    "eigenstate",
    "norm_product",
    "norm_product_formula",
    "norm_product_operator",
    "phase_to_dirac",
    "schrodinger_ops",
    "spectrum",
]
