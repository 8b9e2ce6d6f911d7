"""Acceptance criteria, one PASS/FAIL line each.

Run under pytest (the lines appear in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import math
import subprocess
import sys
from fractions import Fraction

from algebraic_sho.factorization import (
    build_ladder,
    check_intertwining,
    norm_product_formula,
    norm_product_operator,
    schrodinger_ops,
)
from algebraic_sho.cli import main as cli_main
from algebraic_sho.expr import parse, pretty
from algebraic_sho.operators import A, AD, H, IDENTITY, P, X, OperatorPoly, commutator
from algebraic_sho.scalars import I, FieldScalar, PiPower, ScalarPoly
from algebraic_sho.verification import (
    MATRIX_ELEMENT_TOLERANCE,
    ORACLE_TOLERANCE,
    ROUND_TRIP_CORPUS,
    matrix_element_concordance,
    oracle_identity_reports,
)
from algebraic_sho.wavefunctions import (
    derive_momentum_wavefunction,
    derive_position_wavefunction,
    hermite_recurrence,
    hermite_reduction,
    inner_product,
)

RESULTS: list[str] = []


def record(number: int, title: str, passed: bool, detail: str = "") -> None:
    line = f"[{'PASS' if passed else 'FAIL'}] {number}. {title}" + (f"  ({detail})" if detail else "")
    RESULTS.append(line)
    print(line)
    assert passed, line


def _recurrence_poly(n: int) -> ScalarPoly:
    """H_n via H_n = 2z H_{n-1} - 2(n-1) H_{n-2}, kept independent of the library's Hermite code."""
    prev, cur = ScalarPoly.constant(1), ScalarPoly([0, 2])
    if n == 0:
        return prev
    for k in range(2, n + 1):
        prev, cur = cur, ScalarPoly([0, 2]) * cur - prev.scale(2 * (k - 1))
    return cur


def test_criterion_1_spectrum(capsys):
    cli_main(["spectrum", "20"])
    out = capsys.readouterr().out.splitlines()
    expected = [f"{n} {Fraction(2 * n + 1, 2)}" for n in range(21)]
    energies = build_ladder(21).energies
    passed = out == expected and energies == tuple(n + Fraction(1, 2) for n in range(21))
    record(1, "spectrum 20 gives E_n = n + 1/2 exactly for n = 0..20", passed, f"{len(out)} rows")


def test_criterion_2_commutators():
    checks = [commutator(A, AD) == IDENTITY, commutator(X, P) == OperatorPoly.scalar(I)]
    checks += [commutator(A, AD**n) == (AD ** (n - 1)).scale(n) for n in range(1, 13)]
    record(2, "[a,ad] = 1, [x,p] = i, [a,ad^n] = n ad^(n-1) for n <= 12, exactly", all(checks))


def test_criterion_3_factorization():
    a0, a0d = schrodinger_ops()
    ground = not (H - (a0d * a0 + Fraction(1, 2)))
    ladder = build_ladder(8)
    intertwining = all(not check_intertwining(ladder, j) for j in range(7))
    energies = ladder.energies[:7]
    norms = all(norm_product_formula(e, j) == norm_product_operator(e, j) for e in energies for j in range(7))
    record(
        3,
        "H - (A0^dag A0 + 1/2) = 0; intertwining residual 0 for j <= 6; norm products match for E0..E6, j <= 6",
        ground and intertwining and norms,
        f"ground={ground} intertwining={intertwining} norms={norms}",
    )


def test_criterion_4_wavefunction_pipeline():
    pipeline = True
    for n in range(16):
        f = derive_position_wavefunction(n)
        pipeline &= (
            f.poly == _recurrence_poly(n)
            and f.scale_squared == Fraction(1, 2**n * math.factorial(n))
            and f.gaussian_rate == Fraction(1, 2)
            and f.norm == PiPower(FieldScalar(1), Fraction(-1, 4))
        )
    reduction = all(hermite_reduction(n) == hermite_recurrence(n) for n in range(16))
    reduction &= all(hermite_recurrence(n).as_poly() == _recurrence_poly(n) for n in range(16))
    record(
        4,
        "psi_n = (2^n n!)^(-1/2) H_n exp(-xi^2/2) pi^(-1/4) and reduction = recurrence for n <= 15",
        pipeline and reduction,
        f"pipeline={pipeline} reduction={reduction}",
    )


def test_criterion_5_orthonormality():
    bad = []
    for space, derive in (("position", derive_position_wavefunction), ("momentum", derive_momentum_wavefunction)):
        states = [derive(n) for n in range(13)]
        for m, f in enumerate(states):
            for n, g in enumerate(states):
                if inner_product(f, g) != FieldScalar(1 if m == n else 0):
                    bad.append(f"{space}<{m}|{n}>")
    record(5, "orthonormality exact for m, n <= 12 in both spaces", not bad, ", ".join(bad[:3]) or "338 pairs")


def test_criterion_6_momentum_isomorphism():
    same = all(derive_momentum_wavefunction(n).poly == derive_position_wavefunction(n).poly for n in range(13))
    record(6, "phase-stripped momentum polynomial equals position polynomial for n <= 12", same)


def test_criterion_7_oracle():
    reports = oracle_identity_reports()
    identities = all(r.passed for r in reports) and all(
        r.dimension == 64 and r.block == 8 and r.tolerance == ORACLE_TOLERANCE for r in reports
    )
    worst_identity = max(r.residual for r in reports)
    worst_element, count = matrix_element_concordance(dimension=32, nmax=16)
    elements = worst_element < MATRIX_ELEMENT_TOLERANCE
    record(
        7,
        "oracle: braid/BCH/translation at N=64 block 8 tol 1e-8; <m|A|n> vs matrices to 1e-9 (N=32, m,n <= 16)",
        identities and elements,
        f"{len(reports)} identities worst {worst_identity:.1e}; {count} elements worst {worst_element:.1e}",
    )


def test_criterion_8_parser_and_verify():
    round_trip = len(ROUND_TRIP_CORPUS) >= 50 and all(
        parse(pretty(parse(text))) == parse(text) for text in ROUND_TRIP_CORPUS
    )
    proc = subprocess.run(
        [sys.executable, "-m", "algebraic_sho", "verify", "--suite", "all"], capture_output=True, text=True
    )
    record(
        8,
        f"{len(ROUND_TRIP_CORPUS)}-expression corpus round-trips; verify --suite all exits 0",
        round_trip and proc.returncode == 0,
        f"round_trip={round_trip} verify_exit={proc.returncode}",
    )


if __name__ == "__main__":
    import pytest

    sys.exit(pytest.main([__file__, "-q", "-s"]))
