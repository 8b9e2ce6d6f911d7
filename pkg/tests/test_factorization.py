from __future__ import annotations

from fractions import Fraction

import pytest

from algebraic_sho.errors import InvalidArgument
from algebraic_sho.factorization import (
    DIALECTS,
    SuperpotentialLinear,
    build_ladder,
    check_adjoint_intertwining,
    check_intertwining,
    choose_superpotential,
    dialect_hamiltonian,
    dialect_ops,
    eigenstate,
    norm_product,
    norm_product_formula,
    norm_product_operator,
    phase_to_dirac,
    schrodinger_ops,
    spectrum,
)
from algebraic_sho.operators import A, AD, H, IDENTITY, FockKetExpansion, adjoint, apply_to_ket, commutator
from algebraic_sho.scalars import I, FieldScalar, Surd

HALF = Fraction(1, 2)


def test_superpotential_choice_is_forced():
    assert choose_superpotential() == SuperpotentialLinear(Fraction(-1))
    assert SuperpotentialLinear(Fraction(-1)).ground_energy() == HALF
    assert SuperpotentialLinear(Fraction(1)).ground_energy() == -HALF


def test_schrodinger_operators():
    a0, a0d = schrodinger_ops()
    assert not (a0 + A.scale(I))
    assert adjoint(a0) == a0d
    assert a0d * a0 + HALF == H


class TestLadder:
    def test_depth_one(self):
        assert build_ladder(1).energies == (HALF,)

    def test_depth_four(self):
        assert build_ladder(4).energies == tuple(Fraction(k, 2) for k in (1, 3, 5, 7))

    def test_auxiliary_hamiltonians_shift_by_integers(self):
        ladder = build_ladder(6)
        assert not (ladder.hamiltonians[1] - ladder.hamiltonians[0] - 1)
        for j, h in enumerate(ladder.hamiltonians):
            assert h == H + j

    def test_all_lowering_operators_coincide(self):
        ladder = build_ladder(6)
        assert set(ladder.lowering_ops) == {ladder.lowering_ops[0]}

    def test_energies_strictly_increase(self):
        energies = build_ladder(10).energies
        assert all(e1 < e2 for e1, e2 in zip(energies, energies[1:]))

    @pytest.mark.parametrize("depth", [0, -3])
    def test_nonpositive_depth_rejected(self, depth):
        with pytest.raises(InvalidArgument):
            build_ladder(depth)

    @pytest.mark.parametrize("j", range(7))
    def test_intertwining(self, j):
        ladder = build_ladder(8)
        assert not check_intertwining(ladder, j)
        assert not check_adjoint_intertwining(ladder, j)

    def test_intertwining_out_of_range(self):
        with pytest.raises(IndexError):
            check_intertwining(build_ladder(3), 2)


class TestNormProduct:
    def test_examples(self):
        assert norm_product(HALF, 0) == 0
        assert norm_product(Fraction(5, 2), 1) == 2
        assert norm_product(Fraction(5, 2), 2) == 0

    def test_formula_for_non_eigenvalues(self):
        assert norm_product(Fraction(1, 3), 1) == (Fraction(1, 3) - HALF) * (Fraction(1, 3) - Fraction(3, 2))

    @pytest.mark.parametrize("n", range(7))
    @pytest.mark.parametrize("j", range(7))
    def test_formula_matches_operator_string(self, n, j):
        energy = Fraction(2 * n + 1, 2)
        assert norm_product_formula(energy, j) == norm_product_operator(energy, j)

    def test_operator_route_needs_eigenvalue(self):
        with pytest.raises(InvalidArgument):
            norm_product_operator(Fraction(1, 3), 0)


class TestEigenstates:
    def test_ground_state_annihilated(self):
        assert not apply_to_ket(A, eigenstate(0))

    def test_normalized(self):
        ket = eigenstate(2)
        assert ket.inner(ket) == Surd(FieldScalar(1))

    @pytest.mark.parametrize("n", range(21))
    def test_spectrum(self, n):
        ket = eigenstate(n)
        assert apply_to_ket(H, ket) == ket.scale(Fraction(2 * n + 1, 2))
        assert ket == FockKetExpansion.number_state(n)

    def test_negative_index(self):
        with pytest.raises(InvalidArgument):
            eigenstate(-1)

    def test_spectrum_table(self):
        assert spectrum(20) == [(n, n + HALF) for n in range(21)]


class TestDialects:
    @pytest.mark.parametrize("dialect", DIALECTS)
    def test_defining_commutator(self, dialect):
        lowering, raising = dialect_ops(dialect)
        assert commutator(lowering, raising) == IDENTITY
        assert dialect_hamiltonian(dialect) == (1, HALF)

    def test_dirac_relation(self):
        eta_bar, eta = dialect_ops("dirac1947")
        assert eta_bar * eta - eta * eta_bar == IDENTITY
        assert eta == AD.scale(I)

    def test_schrodinger_dialect_matches(self):
        assert tuple(dialect_ops("schrodinger")) == schrodinger_ops()

    @pytest.mark.parametrize("dialect", DIALECTS)
    def test_phase_relative_to_dirac_operators(self, dialect):
        assert phase_to_dirac(dialect) == -I

    def test_unknown_dialect(self):
        with pytest.raises(InvalidArgument):
            dialect_ops("heisenberg1925")
