from __future__ import annotations

import json
import math
from fractions import Fraction

import numpy as np
import pytest

from algebraic_sho.errors import InvalidArgument, SpaceMismatch
from algebraic_sho.oracle import position_grid_wavefunctions
from algebraic_sho.scalars import ONE, FieldScalar, PiPower, ScalarPoly, UnitSystem, i_power
from algebraic_sho.wavefunctions import (
    MOMENTUM_ORIGIN,
    POSITION_ORIGIN,
    ClosedFormWavefunction,
    HermitePolynomial,
    derive_momentum_wavefunction,
    derive_position_wavefunction,
    derive_wavefunction,
    evaluate,
    hermite_recurrence,
    hermite_reduction,
    inner_product,
    orthonormality_table,
    parity_holds,
    textbook_wavefunction,
)

PI_QUARTER = math.pi**-0.25


class TestHermite:
    @pytest.mark.parametrize(
        "n, coefficients",
        [(0, (1,)), (1, (0, 2)), (2, (-2, 0, 4)), (3, (0, -12, 0, 8)), (4, (12, 0, -48, 0, 16))],
    )
    def test_recurrence_examples(self, n, coefficients):
        assert hermite_recurrence(n).coefficients == coefficients

    def test_leading_coefficient_and_parity(self):
        for n in range(20):
            h = hermite_recurrence(n)
            assert h.coefficients[-1] == 2**n
            assert all(c == 0 for c in h.coefficients[(n + 1) % 2 :: 2])

    def test_invariants_enforced(self):
        with pytest.raises(ValueError):
            HermitePolynomial(2, (-2, 0, 3))
        with pytest.raises(ValueError):
            HermitePolynomial(2, (1, 2))

    def test_numeric_values_match_numpy(self):
        z = np.linspace(-2, 2, 7)
        for n in range(10):
            reference = np.polynomial.hermite.hermval(z, [0] * n + [1])
            assert np.allclose([hermite_recurrence(n)(v) for v in z], reference)

    @pytest.mark.parametrize("n", range(16))
    @pytest.mark.parametrize("space", ["position", "momentum"])
    def test_reduction_matches_recurrence(self, n, space):
        assert hermite_reduction(n, space) == hermite_recurrence(n)

    def test_fifteen_has_eight_nonzero_coefficients(self):
        h = hermite_reduction(15)
        assert sum(1 for c in h.coefficients if c) == 8

    def test_negative_index(self):
        with pytest.raises(InvalidArgument):
            hermite_recurrence(-1)
        with pytest.raises(InvalidArgument):
            hermite_reduction(-1)


class TestEigenbras:
    def test_creation_rules(self):
        # <x=0| ad = -<x=0| a and <p=0| ad = +<p=0| a
        assert POSITION_ORIGIN.creation_rule == FieldScalar(-1)
        assert MOMENTUM_ORIGIN.creation_rule == FieldScalar(1)


class TestPipeline:
    def test_ground_state(self):
        for f in (derive_position_wavefunction(0), derive_momentum_wavefunction(0)):
            assert f.poly == ScalarPoly.constant(1)
            assert f.gaussian_rate == Fraction(1, 2)
            assert f.norm == PiPower(ONE, Fraction(-1, 4))

    def test_low_orders(self):
        assert derive_position_wavefunction(1).poly == ScalarPoly([0, 2])
        assert derive_momentum_wavefunction(1).poly == ScalarPoly([0, 2])
        assert derive_position_wavefunction(4).poly == ScalarPoly([12, 0, -48, 0, 16])

    @pytest.mark.parametrize("n", range(16))
    def test_matches_textbook_closed_form(self, n):
        assert derive_position_wavefunction(n) == textbook_wavefunction("position", n)
        assert derive_momentum_wavefunction(n) == textbook_wavefunction("momentum", n)

    @pytest.mark.parametrize("n", range(16))
    def test_scale_bookkeeping(self, n):
        assert derive_position_wavefunction(n).scale_squared == Fraction(1, 2**n * math.factorial(n))

    @pytest.mark.parametrize("n", range(13))
    def test_momentum_isomorphic_to_position(self, n):
        assert derive_momentum_wavefunction(n).poly == derive_position_wavefunction(n).poly
        assert derive_momentum_wavefunction(n).phase == i_power(n)

    @pytest.mark.parametrize("n", range(16))
    def test_parity(self, n):
        f = derive_position_wavefunction(n)
        assert parity_holds(f)
        assert f.poly.degree == n
        assert f.poly.is_real()

    def test_trace_records_intermediate_forms(self):
        steps = dict(derive_position_wavefunction(3).trace)
        assert steps["BCH split"].startswith("exp(-1/4*xi^2)")
        assert steps["BCH recombine"].startswith("exp(-1/2*xi^2)")
        assert steps["braid inserted exponential back"] == "ad^3 + 3*sqrt2*xi*ad^2 + 6*xi^2*ad + 2*sqrt2*xi^3"
        assert steps["vacuum matrix element"] == "2*sqrt2*xi^3 - 3*sqrt2*xi"

    def test_dispatch_and_errors(self):
        assert derive_wavefunction("momentum", 2) == derive_momentum_wavefunction(2)
        with pytest.raises(InvalidArgument):
            derive_position_wavefunction(-1)
        with pytest.raises(InvalidArgument):
            derive_wavefunction("energy", 1)


class TestInnerProducts:
    def test_examples(self):
        psi = [derive_position_wavefunction(n) for n in range(4)]
        assert inner_product(psi[0], psi[0]) == ONE
        assert inner_product(psi[0], psi[1]) == FieldScalar(0)
        assert inner_product(psi[3], psi[3]) == ONE

    @pytest.mark.parametrize("space", ["position", "momentum"])
    def test_orthonormal_up_to_twelve(self, space):
        table = orthonormality_table(space, 12)
        for m, row in enumerate(table):
            for n, value in enumerate(row):
                assert value == FieldScalar(1 if m == n else 0)

    def test_mixed_spaces_rejected(self):
        with pytest.raises(SpaceMismatch):
            inner_product(derive_position_wavefunction(0), derive_momentum_wavefunction(0))


class TestEvaluation:
    def test_ground_state_peak(self):
        assert evaluate(derive_position_wavefunction(0), 0.0) == pytest.approx(PI_QUARTER)
        assert evaluate(derive_position_wavefunction(0), 0.0) == pytest.approx(0.7511255)

    def test_odd_state_vanishes_at_origin(self):
        assert evaluate(derive_position_wavefunction(1), 0.0) == pytest.approx(0.0)

    def test_second_state_at_origin(self):
        assert evaluate(derive_position_wavefunction(2), 0.0) == pytest.approx(-PI_QUARTER / math.sqrt(2))

    def test_normalized_numerically(self):
        xs = np.linspace(-10, 10, 4001)
        for n in (0, 3, 7):
            values = evaluate(derive_position_wavefunction(n), xs)
            assert np.trapezoid(values**2, xs) == pytest.approx(1.0, abs=1e-9)

    def test_grid_eigenfunctions(self):
        nodes, values = position_grid_wavefunctions(64, 8)
        keep = np.abs(nodes) <= 4
        for n in range(9):
            exact = evaluate(derive_position_wavefunction(n), nodes[keep])
            assert np.max(np.abs(exact - values[n, keep])) < 1e-6

    def test_deterministic(self):
        xs = np.linspace(-3, 3, 11)
        f = derive_position_wavefunction(5)
        assert np.array_equal(evaluate(f, xs), evaluate(f, xs))


class TestSerialization:
    def test_json_schema(self):
        record = json.loads(derive_momentum_wavefunction(3).to_json())
        assert record == {
            "space": "momentum",
            "n": 3,
            "coeffs": ["0", "-12", "0", "8"],
            "scale_squared": "1/48",
            "gaussian_rate": "1/2",
            "norm_pi_exponent": "-1/4",
            "phase": "-i",
        }

    @pytest.mark.parametrize("n", [0, 1, 5, 12])
    @pytest.mark.parametrize("space", ["position", "momentum"])
    def test_record_round_trip(self, n, space):
        f = derive_wavefunction(space, n)
        assert ClosedFormWavefunction.from_record(json.loads(f.to_json())) == f

    def test_formula_rendering(self):
        f = derive_position_wavefunction(2)
        assert f.formula() == "psi_2(xi) = pi^(-1/4) * sqrt(1/8) * (4*xi^2 - 2) * exp(-1/2*xi^2)"
        si = f.formula(UnitSystem("symbolic-SI"))
        assert "(m*w0/(pi*hbar))^(1/4)" in si and "hbar" in si
