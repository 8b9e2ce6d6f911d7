from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest
from conftest import field_scalars, generator_words, kets, operators
from hypothesis import given

from algebraic_sho.errors import UnboundIndeterminate
from algebraic_sho.operators import (
    A,
    AD,
    H,
    IDENTITY,
    NUMBER,
    P,
    X,
    FockKetExpansion,
    LadderWord,
    OperatorPoly,
    adjoint,
    apply_to_ket,
    commutator,
    matrix_element,
    normal_order,
    vacuum_matrix_element,
)
from algebraic_sho.oracle import materialize
from algebraic_sho.scalars import I, INV_SQRT2, XI, FieldScalar, ScalarPoly, Surd, sqrt_rational


def word_product(word: list[str]) -> OperatorPoly:
    out = IDENTITY
    for g in word:
        out = out * (A if g == "a" else AD)
    return out


class TestNormalOrder:
    def test_single_swap(self):
        assert normal_order(["a", "ad"]) == NUMBER + 1
        assert normal_order(["ad", "a"]) == NUMBER

    def test_double_swap(self):
        expected = OperatorPoly({(2, 2): 1, (1, 1): 4, (0, 0): 2})
        assert normal_order(["a", "a", "ad", "ad"]) == expected
        assert A**2 * AD**2 == expected

    def test_accepts_aliases_and_coefficient_pairs(self):
        assert normal_order(["â", "â†"]) == NUMBER + 1
        terms = [(2, ["a", "ad"]), (-1, ["ad", "a"])]
        assert normal_order(terms) == NUMBER + 2

    def test_terms_sorted_descending(self):
        op = A + AD * A + AD**2 + 3
        assert [w for w, _ in op.items()] == [LadderWord(2, 0), LadderWord(1, 1), LadderWord(0, 1), LadderWord(0, 0)]
        assert str(op) == "ad^2 + ad*a + a + 3"

    def test_no_zero_terms(self):
        assert (NUMBER - NUMBER).terms == {}
        assert not (NUMBER - NUMBER)

    @given(generator_words)
    def test_rewrite_route_matches_closed_form(self, word):
        assert normal_order(word) == word_product(word)

    @given(generator_words)
    def test_idempotent(self, word):
        once = normal_order(word)
        assert normal_order(once) == once

    @given(generator_words)
    def test_matches_truncated_matrices(self, word):
        n = 24
        dense = np.eye(n, dtype=complex)
        a = materialize(A, n).entries
        for g in word:
            dense = dense @ (a if g == "a" else a.conj().T)
        block = n - len(word) - 1
        assert np.allclose(materialize(normal_order(word), n).entries[:block, :block], dense[:block, :block])


class TestCommutator:
    def test_examples(self):
        assert commutator(A, AD) == IDENTITY
        assert commutator(A, AD**3) == (AD**2).scale(3)
        assert commutator(H, AD) == AD
        assert commutator(H, A) == -A
        assert commutator(X, P) == OperatorPoly.scalar(I)

    @pytest.mark.parametrize("n", range(1, 13))
    def test_power_rule(self, n):
        assert commutator(A, AD**n) == (AD ** (n - 1)).scale(n)

    @given(operators(), operators())
    def test_antisymmetric(self, f, g):
        assert commutator(f, g) == -commutator(g, f)

    @given(operators(), operators(), operators())
    def test_jacobi(self, f, g, h):
        total = commutator(commutator(f, g), h) + commutator(commutator(g, h), f) + commutator(commutator(h, f), g)
        assert not total

    @given(operators(), operators(), field_scalars)
    def test_bilinear(self, f, g, c):
        assert commutator(f.scale(c) + g, g) == commutator(f, g).scale(c)


class TestAdjoint:
    def test_examples(self):
        assert adjoint(A) == AD
        assert adjoint(NUMBER.scale(I)) == NUMBER.scale(-I)
        assert adjoint(A**2) == AD**2
        assert adjoint(X) == X and adjoint(P) == P and adjoint(H) == H

    @given(operators(max_degree=4))
    def test_involution(self, op):
        assert adjoint(adjoint(op)) == op

    @given(operators(), operators())
    def test_reverses_products(self, f, g):
        assert adjoint(f * g) == adjoint(g) * adjoint(f)

    def test_xi_coefficients_stay_real(self):
        op = AD.scale(XI)
        assert adjoint(op) == A.scale(XI)


class TestVacuumMatrixElement:
    def test_examples(self):
        assert vacuum_matrix_element(NUMBER) == ScalarPoly()
        assert vacuum_matrix_element(A * AD) == ScalarPoly.constant(1)
        assert vacuum_matrix_element(A**2 * AD**2) == ScalarPoly.constant(2)

    def test_polynomial_coefficients(self):
        shifted = (AD + XI) ** 2
        assert vacuum_matrix_element(shifted) == XI * XI


class TestKets:
    def test_lowering_kills_vacuum(self):
        assert not apply_to_ket(A, FockKetExpansion.vacuum())

    @pytest.mark.parametrize("n", range(8))
    def test_number_operator(self, n):
        ket = FockKetExpansion.number_state(n)
        assert apply_to_ket(NUMBER, ket) == ket.scale(n)

    def test_hamiltonian_on_three(self):
        ket = FockKetExpansion.number_state(3)
        assert apply_to_ket(H, ket) == ket.scale(Fraction(7, 2))

    @pytest.mark.parametrize("m", range(6))
    @pytest.mark.parametrize("n", range(6))
    def test_number_states_orthonormal(self, m, n):
        value = FockKetExpansion.number_state(m).inner(FockKetExpansion.number_state(n))
        assert value == Surd(FieldScalar(1 if m == n else 0))

    @pytest.mark.parametrize("n", range(21))
    def test_raising_chain(self, n):
        raised = apply_to_ket(AD, FockKetExpansion.number_state(n))
        assert raised == FockKetExpansion.number_state(n + 1).scale(sqrt_rational(n + 1))

    def test_matrix_elements(self):
        assert matrix_element(1, AD, 0) == Surd(FieldScalar(1))
        assert matrix_element(2, A, 3) == Surd(FieldScalar(1), 3)
        assert matrix_element(3, H, 3) == Surd(FieldScalar(Fraction(7, 2)))
        assert matrix_element(1, X, 0) == Surd(INV_SQRT2)

    def test_xi_dependent_operator_rejected(self):
        with pytest.raises(UnboundIndeterminate):
            apply_to_ket(A.scale(XI), FockKetExpansion.vacuum())

    @given(kets)
    def test_number_operator_is_positive(self, psi):
        value = psi.inner(apply_to_ket(AD * A, psi)).to_field()
        assert value.is_real()
        assert complex(value).real >= 0

    @given(kets, operators(max_degree=3, coefficients=field_scalars))
    def test_adjoint_matches_inner_product(self, psi, op):
        left = apply_to_ket(op, psi).inner(psi)
        right = psi.inner(apply_to_ket(adjoint(op), psi))
        assert left == right

    @given(operators(max_degree=6))
    def test_matrix_elements_match_oracle(self, op):
        n = 32
        dense = materialize(op, n).entries
        for m in range(0, 17, 3):
            for k in range(0, 17, 4):
                assert abs(complex(matrix_element(m, op, k)) - dense[m, k]) < 1e-9 * max(1.0, abs(dense[m, k]))

    def test_vacuum_normalization_radicand(self):
        ket = FockKetExpansion.number_state(3)
        assert ket.radicand == 3
        assert ket.inner(ket) == Surd(FieldScalar(1))
        assert math.isclose(abs(complex(ket.normalized_amplitude(3))), 1.0)
