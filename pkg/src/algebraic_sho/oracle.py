"""Truncated number-basis matrices used to falsify the exact engine.

Everything here is double precision.  Truncating at dimension N breaks
[a, ad] = 1 in the last diagonal entry (it becomes 1 - N), so identities are
only compared on a leading block far from the edge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.linalg

from .errors import InvalidArgument, UnboundIndeterminate
from .exponentials import AffineForm, GroupElement, OrderedProduct
from .operators import OperatorPoly
from .scalars import ScalarPoly


@dataclass(frozen=True)
class FockMatrix:
    entries: np.ndarray

    def __post_init__(self) -> None:
        m = np.array(self.entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("FockMatrix must be square")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def dimension(self) -> int:
        return self.entries.shape[0]

    def __matmul__(self, other: FockMatrix) -> FockMatrix:
        return FockMatrix(self.entries @ other.entries)

    def __add__(self, other: FockMatrix) -> FockMatrix:
        return FockMatrix(self.entries + other.entries)

    def __sub__(self, other: FockMatrix) -> FockMatrix:
        return FockMatrix(self.entries - other.entries)

    def __mul__(self, c: complex) -> FockMatrix:
        return FockMatrix(self.entries * c)

    __rmul__ = __mul__

    def block(self, size: int) -> np.ndarray:
        return self.entries[:size, :size]

    @classmethod
    def identity(cls, dimension: int) -> FockMatrix:
        return cls(np.eye(dimension))


def lowering_matrix(dimension: int) -> np.ndarray:
    """a with <n-1|a|n> = sqrt(n)."""
    return np.diag(np.sqrt(np.arange(1, dimension, dtype=float)), k=1).astype(complex)


def _numeric(c: ScalarPoly, xi: float | None) -> complex:
    if c.is_constant():
        return complex(c.constant_term())
    if xi is None:
        raise UnboundIndeterminate(f"coefficient {c} depends on xi; supply a value")
    return c(xi)


def materialize(op: OperatorPoly, dimension: int, xi: float | None = None) -> FockMatrix:
    if dimension < 2:
        raise InvalidArgument("truncation dimension must be at least 2")
    a = lowering_matrix(dimension)
    ad = a.conj().T
    out = np.zeros((dimension, dimension), dtype=complex)
    for (r, s), c in op.items():
        out += _numeric(c, xi) * (np.linalg.matrix_power(ad, r) @ np.linalg.matrix_power(a, s))
    return FockMatrix(out)


def materialize_word(word: Sequence[str], dimension: int) -> FockMatrix:
    """Product of truncated generator matrices in the given order, no reordering."""
    a = lowering_matrix(dimension)
    mats = {"a": a, "ad": a.conj().T}
    out = np.eye(dimension, dtype=complex)
    for g in word:
        out = out @ mats[g]
    return FockMatrix(out)


def truncated_commutator(dimension: int) -> FockMatrix:
    """[a, ad] of the truncated matrices: diag(1, ..., 1, 1 - N)."""
    return materialize_word(["a", "ad"], dimension) - materialize_word(["ad", "a"], dimension)


def matrix_exponential(m: FockMatrix) -> FockMatrix:
    return FockMatrix(scipy.linalg.expm(m.entries))


def exponential_of(form: AffineForm, dimension: int, xi: float | None = None) -> FockMatrix:
    return matrix_exponential(materialize(form.to_operator(), dimension, xi))


def materialize_group(element: GroupElement | OrderedProduct, dimension: int, xi: float | None = None) -> FockMatrix:
    """exp(prefactor) * exp(F_1) * exp(F_2) ... as a truncated matrix."""
    factors = (element.exponent,) if isinstance(element, GroupElement) else element.factors
    out = FockMatrix.identity(dimension) * complex(np.exp(_numeric(element.log_prefactor, xi)))
    for f in factors:
        out = out @ exponential_of(f, dimension, xi)
    return out


@dataclass(frozen=True)
class IdentityReport:
    name: str
    dimension: int
    block: int
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.residual < self.tolerance

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{self.name}  N={self.dimension}  block={self.block}  residual={self.residual:.3e}  {status}"


def _compose(side: FockMatrix | Sequence[FockMatrix]) -> FockMatrix:
    if isinstance(side, FockMatrix):
        return side
    mats = list(side)
    out = mats[0]
    for m in mats[1:]:
        out = out @ m
    return out


def check_identity(
    lhs: FockMatrix | Sequence[FockMatrix],
    rhs: FockMatrix | Sequence[FockMatrix],
    protected_block: int = 8,
    tol: float = 1e-8,
    name: str = "identity",
) -> IdentityReport:
    """Max-abs difference of two matrix products over the leading block."""
    left, right = _compose(lhs), _compose(rhs)
    if left.dimension != right.dimension:
        raise InvalidArgument("dimension mismatch")
    if protected_block > left.dimension // 2:
        raise InvalidArgument("protected block must not exceed half the truncation")
    residual = float(np.max(np.abs(left.block(protected_block) - right.block(protected_block))))
    return IdentityReport(name, left.dimension, protected_block, residual, tol)


def position_grid_wavefunctions(dimension: int, nmax: int) -> tuple[np.ndarray, np.ndarray]:
    """Oscillator eigenfunctions sampled at the eigenvalues of the truncated x matrix.

    If x v = x_k v, then v[n]/v[0] = psi_n(x_k)/psi_0(x_k), independent of the
    eigenvector's sign, so psi_n(x_k) = v[n]/v[0] * pi^(-1/4) exp(-x_k^2/2).
    Returns (nodes, values) with values[n, k] = psi_n(nodes[k]).
    """
    a = lowering_matrix(dimension).real
    x = (a + a.T) / math.sqrt(2.0)
    nodes, vecs = np.linalg.eigh(x)
    ground = math.pi**-0.25 * np.exp(-(nodes**2) / 2)
    values = vecs[: nmax + 1, :] / vecs[0, :] * ground
    return nodes, values
