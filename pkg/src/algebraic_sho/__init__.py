"""Exact, derivative-free algebra of the quantum harmonic oscillator.

Natural units (hbar = m = omega_0 = 1) throughout: x = (a + ad)/sqrt2,
p = i (ad - a)/sqrt2, H = ad a + 1/2.  Coefficients live in Q(i, sqrt2)
and polynomials over it in the dimensionless variable xi; powers of pi are
tracked formally.
"""

from .errors import (
    AlgebraError,
    DivisionByZero,
    InvalidArgument,
    NotInField,
    SpaceMismatch,
    UnboundIndeterminate,
    UnsupportedExponent,
)
from .exponentials import (
    AffineForm,
    GroupElement,
    OrderedProduct,
    bch_compose,
    bch_split,
    boost_operator,
    braid,
    hadamard_conjugate,
    translation_operator,
)
from .expr import LoweringError, NonAffineExponent, ParseError, evaluate_text, lower, parse, pretty
from .factorization import (
    build_ladder,
    check_intertwining,
    dialect_ops,
    eigenstate,
    norm_product,
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
    LadderWord,
    OperatorPoly,
    adjoint,
    apply_to_ket,
    commutator,
    matrix_element,
    normal_order,
    vacuum_matrix_element,
)
from .scalars import XI, FieldScalar, PiPower, ScalarPoly, Surd, UnitSystem, gaussian_moment
from .wavefunctions import (
    ClosedFormWavefunction,
    HermitePolynomial,
    derive_momentum_wavefunction,
    derive_position_wavefunction,
    derive_wavefunction,
    evaluate,
    hermite_recurrence,
    hermite_reduction,
    inner_product,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
