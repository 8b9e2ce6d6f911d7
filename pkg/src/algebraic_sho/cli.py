"""Command-line front end: ``algebraic-sho <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
Results go to standard output, diagnostics to standard error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .errors import AlgebraError
from .exponentials import GroupElement
from .expr import evaluate_text, format_group_element, format_operator
from .factorization import spectrum
from .operators import OperatorPoly, commutator, matrix_element
from .scalars import UnitSystem
from .verification import SUITES, run_suite
from .wavefunctions import derive_wavefunction, hermite_recurrence, hermite_reduction

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2

_SPACES = {"x": "position", "p": "momentum"}
_UNITS = {"natural": "natural", "si": "symbolic-SI"}


class UsageError(Exception):
    pass


def _natural(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {value}")
    return value


def _operator(text: str) -> OperatorPoly:
    value = evaluate_text(text)
    if isinstance(value, GroupElement):
        raise UsageError(f"{text!r} is an exponential; an operator polynomial is required here")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="algebraic-sho",
        description="Exact ladder-operator algebra for the quantum harmonic oscillator (natural units).",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("normal-order", help="print the canonical normal-ordered form")
    p.add_argument("expr")

    p = sub.add_parser("commutator", help="print [e1, e2] in canonical form")
    p.add_argument("e1")
    p.add_argument("e2")

    p = sub.add_parser("matel", help="exact <m|expr|n> between normalized number states")
    p.add_argument("m", type=_natural)
    p.add_argument("expr")
    p.add_argument("n", type=_natural)

    p = sub.add_parser("wavefunction", help="derive psi_n(x) or phi_n(p) algebraically")
    p.add_argument("n", type=_natural)
    p.add_argument("--space", choices=sorted(_SPACES), required=True)
    p.add_argument("--json", action="store_true", help="emit the JSON record")
    p.add_argument("--units", choices=sorted(_UNITS), default="natural")

    p = sub.add_parser("hermite", help="integer coefficients of H_n, ascending degree")
    p.add_argument("n", type=_natural)
    p.add_argument("--path", choices=("recurrence", "reduction"), default="recurrence")

    p = sub.add_parser("verify", help="run the invariant suites")
    p.add_argument("--suite", choices=(*SUITES, "all"), default="all")

    p = sub.add_parser("spectrum", help="E_n for n = 0..nmax")
    p.add_argument("nmax", type=_natural)
    return parser


def _run(args: argparse.Namespace, out) -> int:
    if args.command == "normal-order":
        value = evaluate_text(args.expr)
        text = format_group_element(value) if isinstance(value, GroupElement) else format_operator(value)
        print(text, file=out)
    elif args.command == "commutator":
        print(format_operator(commutator(_operator(args.e1), _operator(args.e2))), file=out)
    elif args.command == "matel":
        print(matrix_element(args.m, _operator(args.expr), args.n), file=out)
    elif args.command == "wavefunction":
        f = derive_wavefunction(_SPACES[args.space], args.n)
        if args.json:
            print(f.to_json(), file=out)
        else:
            print(f.to_text(), file=out)
            print(f"formula: {f.formula(UnitSystem(_UNITS[args.units]))}", file=out)
    elif args.command == "hermite":
        h = hermite_recurrence(args.n) if args.path == "recurrence" else hermite_reduction(args.n)
        print(" ".join(str(c) for c in h.coefficients), file=out)
    elif args.command == "spectrum":
        for n, e in spectrum(args.nmax):
            print(f"{n} {e}", file=out)
    elif args.command == "verify":
        results = run_suite(args.suite)
        for r in results:
            print(r.line(), file=out)
        failed = sum(not r.passed for r in results)
        print(f"{len(results) - failed}/{len(results)} checks passed", file=out)
        return EXIT_VERIFY_FAILED if failed else EXIT_OK
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _run(args, sys.stdout)
    except (AlgebraError, UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
