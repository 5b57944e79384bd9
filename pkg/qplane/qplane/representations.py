"""
Truncated operator representations of the quantum plane.

pi_lambda sends x to the left shift E and y to lambda*D, pi'_mu sends x to
mu*D and y to the right shift F, where D = diag(1, q, q^2, ...). Matrices
are cut to N x N before they are multiplied. pi_lambda images are upper
triangular and pi'_mu images lower triangular, so the truncation commutes
with products.
"""
from __future__ import annotations

import csv
import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable, Sequence, TextIO

import numpy as np

from .errors import BadDim, ModeError, NotNilpotent
from .plane import PlaneElement
from .scalars import QScalar, as_complex
from .univariate import UPoly

logger = logging.getLogger(__name__)

_is_nonzero = np.frompyfunc(bool, 1, 1)


def format_entry(value) -> str:
    """Return the canonical text of a matrix entry in either mode."""
    if isinstance(value, QScalar):
        return str(value)
    value = complex(value)
    if value.imag == 0:
        return repr(value.real)
    sign = "+" if value.imag >= 0 else "-"
    return f"{value.real!r}{sign}{abs(value.imag)!r}*i"


class TruncatedOperator:
    """
    A dense N x N matrix.

    Attributes:
    - entries: QScalar objects in EXACT mode, complex128 in FLOAT mode
    - exact: whether entries are QScalars
    - diagonal: True if the matrix is known to be diagonal
    """
    __slots__ = ('entries', 'exact', 'diagonal')
    entries: np.ndarray
    exact: bool
    diagonal: bool

    def __init__(self, entries: np.ndarray, exact: bool, diagonal: bool = False) -> None:
        """Initialize this TruncatedOperator from a square array."""
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise BadDim(f"Operator entries must be square, got shape {entries.shape}.")
        self.entries = entries
        self.exact = exact
        self.diagonal = diagonal

    @classmethod
    def zeros(cls, dim: int, exact: bool) -> TruncatedOperator:
        if exact:
            return cls(np.full((dim, dim), QScalar.zero(), dtype=object), True, diagonal=True)
        return cls(np.zeros((dim, dim), dtype=complex), False, diagonal=True)

    @classmethod
    def identity(cls, dim: int, exact: bool) -> TruncatedOperator:
        return cls.from_diagonal([QScalar.one() if exact else 1] * dim, exact)

    @classmethod
    def from_diagonal(cls, values: Sequence, exact: bool) -> TruncatedOperator:
        result = cls.zeros(len(values), exact)
        for i, value in enumerate(values):
            result.entries[i, i] = QScalar.coerce(value) if exact else complex(value)
        return result

    @classmethod
    def shift(cls, dim: int, offset: int, exact: bool) -> TruncatedOperator:
        """Return the matrix with ones on the diagonal at <offset> (+1 above, -1 below)."""
        result = cls.zeros(dim, exact)
        one = QScalar.one() if exact else 1
        for i in range(dim):
            if 0 <= i + offset < dim:
                result.entries[i, i + offset] = one
        result.diagonal = offset == 0
        return result

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def diagonal_values(self) -> np.ndarray:
        return np.diagonal(self.entries).copy()

    def nonzero_mask(self) -> np.ndarray:
        if self.exact:
            return _is_nonzero(self.entries).astype(bool)
        return self.entries != 0

    def is_zero(self, tol: float = 0.0) -> bool:
        """Return True iff every entry is zero (within tol in FLOAT mode)."""
        if self.exact:
            return not self.nonzero_mask().any()
        return bool(np.max(np.abs(self.entries), initial=0.0) <= tol)

    def _check_compatible(self, other: TruncatedOperator) -> None:
        if self.dim != other.dim:
            raise BadDim(f"Dimension mismatch: {self.dim} and {other.dim}.")
        if self.exact != other.exact:
            raise ModeError("Cannot combine EXACT and FLOAT operators.")

    def __add__(self, other: TruncatedOperator) -> TruncatedOperator:
        self._check_compatible(other)
        diagonal = self.diagonal and other.diagonal
        if not self.exact:
            return TruncatedOperator(self.entries + other.entries, False, diagonal)
        # Exact entries are Python objects: only touch the nonzero ones.
        entries = self.entries.copy()
        mask = other.nonzero_mask()
        entries[mask] = entries[mask] + other.entries[mask]
        return TruncatedOperator(entries, True, diagonal)

    def __sub__(self, other: TruncatedOperator) -> TruncatedOperator:
        return self + other.scale(-1)

    def scale(self, factor) -> TruncatedOperator:
        if not self.exact:
            return TruncatedOperator(self.entries * complex(factor), False, self.diagonal)
        factor = QScalar.coerce(factor)
        if factor.is_zero():
            return TruncatedOperator.zeros(self.dim, True)
        entries = self.entries.copy()
        mask = self.nonzero_mask()
        entries[mask] = entries[mask] * factor
        return TruncatedOperator(entries, True, self.diagonal)

    def __matmul__(self, other: TruncatedOperator) -> TruncatedOperator:
        self._check_compatible(other)
        if self.diagonal:
            if not self.exact:
                return TruncatedOperator(self.diagonal_values()[:, None] * other.entries,
                                         False, other.diagonal)
            entries = other.entries.copy()
            mask = other.nonzero_mask()
            rows = np.nonzero(mask)[0]
            entries[mask] = self.diagonal_values()[rows] * other.entries[mask]
            return TruncatedOperator(entries, True, other.diagonal)
        if other.diagonal:
            if not self.exact:
                return TruncatedOperator(self.entries * other.diagonal_values()[None, :],
                                         False, False)
            entries = self.entries.copy()
            mask = self.nonzero_mask()
            columns = np.nonzero(mask)[1]
            entries[mask] = self.entries[mask] * other.diagonal_values()[columns]
            return TruncatedOperator(entries, True, False)
        if not self.exact:
            return TruncatedOperator(self.entries @ other.entries, False)
        return TruncatedOperator(self._sparse_product(other), True)

    def _sparse_product(self, other: TruncatedOperator) -> np.ndarray:
        """Return the exact product, visiting only pairs of nonzero entries."""
        entries = np.full((self.dim, self.dim), QScalar.zero(), dtype=object)
        right_rows = [np.flatnonzero(row) for row in other.nonzero_mask()]
        for i, k in zip(*np.nonzero(self.nonzero_mask())):
            left = self.entries[i, k]
            for j in right_rows[k]:
                entries[i, j] = entries[i, j] + left * other.entries[k, j]
        return entries

    def __pow__(self, n: int) -> TruncatedOperator:
        result = TruncatedOperator.identity(self.dim, self.exact)
        for _ in range(n):
            result = result @ self
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedOperator):
            return NotImplemented
        if self.dim != other.dim or self.exact != other.exact:
            return False
        return bool(np.all(self.entries == other.entries))

    __hash__ = None

    def is_upper_triangular(self) -> bool:
        return not np.tril(self.nonzero_mask(), -1).any()

    def evaluate(self, q_value) -> TruncatedOperator:
        """Return the FLOAT operator with every entry evaluated at q = q_value."""
        if not self.exact:
            return self
        values = np.frompyfunc(lambda c: c.evaluate(q_value), 1, 1)(self.entries)
        return TruncatedOperator(values.astype(complex), False, self.diagonal)

    def row_sum_norm(self) -> float:
        """Return the max absolute row sum, an upper bound of the operator norm on l_inf."""
        if self.exact:
            raise ModeError("row_sum_norm needs a FLOAT operator; evaluate it at q first.")
        return float(np.max(np.sum(np.abs(self.entries), axis=1), initial=0.0))

    def to_json(self) -> dict:
        return {"dim": self.dim, "mode": "exact" if self.exact else "float",
                "rows": [[format_entry(e) for e in row] for row in self.entries]}

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(format_entry(e) for e in row) + "]" for row in self.entries)

    def __repr__(self) -> str:
        return f"TruncatedOperator(dim={self.dim}, exact={self.exact})"


class RepFamily(Enum):
    PI_LAMBDA = "pi_lambda"
    PI_PRIME_MU = "pi_prime_mu"


@dataclass(frozen=True)
class RepSpec:
    """
    A truncated representation.

    Attributes:
    - family: PI_LAMBDA (x -> E, y -> lambda*D) or PI_PRIME_MU (x -> mu*D, y -> F)
    - parameter: lambda or mu
    - dim: the truncation size N
    - q: a complex value of q, or None to keep q symbolic (EXACT mode)
    """
    family: RepFamily
    parameter: object = 1
    dim: int = 8
    q: complex | None = None

    @property
    def exact(self) -> bool:
        return self.q is None

    def scalar(self, value):
        """Return value in this spec's scalar mode."""
        if self.exact:
            return QScalar.coerce(value)
        if isinstance(value, QScalar):
            return value.evaluate(self.q)
        return as_complex(value)

    def q_power(self, exponent: int):
        if self.exact:
            return QScalar.q_power(exponent)
        return complex(self.q) ** exponent

    def with_dim(self, dim: int) -> RepSpec:
        return RepSpec(self.family, self.parameter, dim, self.q)


def _diagonal_q(spec: RepSpec, dim: int, factor) -> TruncatedOperator:
    factor = spec.scalar(factor)
    return TruncatedOperator.from_diagonal([factor * spec.q_power(k) for k in range(dim)], spec.exact)


def _generators(spec: RepSpec, dim: int) -> tuple[TruncatedOperator, TruncatedOperator]:
    if spec.family is RepFamily.PI_LAMBDA:
        return TruncatedOperator.shift(dim, 1, spec.exact), _diagonal_q(spec, dim, spec.parameter)
    return _diagonal_q(spec, dim, spec.parameter), TruncatedOperator.shift(dim, -1, spec.exact)


def build_generators(spec: RepSpec) -> tuple[TruncatedOperator, TruncatedOperator]:
    """Return the images (X, Y) of x and y.

    Raises BadDim if N < 2.
    """
    if spec.dim < 2:
        raise BadDim(f"Representations need N >= 2, got {spec.dim}.")
    return _generators(spec, spec.dim)


@lru_cache(maxsize=1024)
def _band_values(spec: RepSpec, k: int, l: int) -> tuple[int, tuple]:
    """Return (offset, values) of the single band of Y^k X^l."""
    if spec.family is RepFamily.PI_LAMBDA:
        # (lambda D)^k E^l: entry (i, i+l) is lambda^k q^(k*i)
        offset, power = l, k
    else:
        # F^k (mu D)^l: entry (j+k, j) is mu^l q^(l*j)
        offset, power = -k, l
    factor = spec.scalar(spec.parameter) ** power
    length = max(0, spec.dim - abs(offset))
    return offset, tuple(factor * spec.q_power(power * t) for t in range(length))


def rep_apply(spec: RepSpec, a: PlaneElement) -> TruncatedOperator:
    """Return the image of a, substituting Y^k X^l for every y^k x^l."""
    if spec.dim < 2:
        raise BadDim(f"Representations need N >= 2, got {spec.dim}.")
    result = TruncatedOperator.zeros(spec.dim, spec.exact)
    dtype = object if spec.exact else complex
    for (k, l), coeff in a:
        offset, values = _band_values(spec, k, l)
        if not values:
            continue
        rows = np.arange(len(values)) + max(0, -offset)
        result.entries[rows, rows + offset] += np.array(values, dtype=dtype) * spec.scalar(coeff)
        result.diagonal = result.diagonal and offset == 0
    return result


def first_row(op: TruncatedOperator) -> tuple:
    return tuple(op.entries[0, :])


def first_column(op: TruncatedOperator) -> tuple:
    return tuple(op.entries[:, 0])


def eta_vector(spec: RepSpec, a: PlaneElement) -> tuple:
    """Return the first row of pi_lambda(a) or the first column of pi'_mu(a)."""
    op = rep_apply(spec, a)
    return first_row(op) if spec.family is RepFamily.PI_LAMBDA else first_column(op)


def commutation_check(N: int, q: complex | None = None) -> bool:
    """Return True iff ED = qDE and DF = qFD at size N."""
    e_op, d_op = build_generators(RepSpec(RepFamily.PI_LAMBDA, 1, N, q))
    _, f_op = build_generators(RepSpec(RepFamily.PI_PRIME_MU, 1, N, q))
    q_scalar = QScalar.q_power(1) if q is None else q
    first = (e_op @ d_op - (d_op @ e_op).scale(q_scalar))
    second = (d_op @ f_op - (f_op @ d_op).scale(q_scalar))
    tol = 0.0 if q is None else 1e-12
    return first.is_zero(tol) and second.is_zero(tol)


def homomorphism_check(spec: RepSpec, a: PlaneElement, b: PlaneElement) -> bool:
    """Return True iff rep_apply(a*b) == rep_apply(a) @ rep_apply(b)."""
    product = rep_apply(spec, a * b)
    composed = rep_apply(spec, a) @ rep_apply(spec, b)
    if spec.exact:
        return product == composed
    return (product - composed).is_zero(1e-9 * max(1.0, composed.row_sum_norm()))


def pi_eval_family(family: RepFamily, a: PlaneElement, params: Iterable, dim: int,
                   q: complex | None = None) -> list[tuple[object, TruncatedOperator]]:
    """Return (parameter, image of a) for every lambda (or mu) in params."""
    return [(p, rep_apply(RepSpec(family, p, dim, q), a)) for p in params]


def upper_triangular_truncation(spec: RepSpec, p: int) -> tuple[TruncatedOperator, TruncatedOperator]:
    """Return X = E_p and Y = lambda*D_p in the upper triangular matrices of order p."""
    if spec.family is not RepFamily.PI_LAMBDA:
        raise ValueError("Upper triangular truncations come from pi_lambda.")
    if p < 1:
        raise BadDim(f"Order p must be at least 1, got {p}.")
    return _generators(spec, p)


def nilpotent_series_substitute(series: UPoly, b: TruncatedOperator, p: int,
                                tol: float = 1e-12) -> TruncatedOperator:
    """Return sum_(n<p) alpha_n b^n for a b with b^p = 0.

    Raises NotNilpotent if b^p is not zero (exactly, or within tol in FLOAT mode).
    """
    power = TruncatedOperator.identity(b.dim, b.exact)
    result = TruncatedOperator.zeros(b.dim, b.exact)
    for n in range(p):
        coeff = series.coefficient(n)
        if coeff != 0:
            result = result + power.scale(coeff if b.exact else as_complex(coeff))
        power = power @ b
    scale = 1.0 if b.exact else max(1.0, b.row_sum_norm()) ** p
    if not power.is_zero(tol * scale):
        raise NotNilpotent(f"b^{p} is not zero.")
    return result


@dataclass(frozen=True)
class GrowthRow:
    """
    One point of a growth profile.

    Attributes:
    - n: the power of u
    - estimate: ||pi(u)^n||^(1/n) with the row-sum norm
    - reference: |q|^((n+1)/2) ||Y|| ||X||
    """
    n: int
    estimate: float
    reference: float

    def within_bound(self, rel_tol: float = 1e-9) -> bool:
        return self.estimate <= (1 + rel_tol) * self.reference


def growth_profile(spec: RepSpec, nmax: int) -> list[GrowthRow]:
    """Return the growth of ||pi(u)^n||^(1/n) for n = 1..nmax.

    Needs FLOAT mode with |q| < 1.
    """
    if spec.exact:
        raise ModeError("growth_profile needs a numeric q.")
    q_abs = abs(complex(spec.q))
    if not 0 < q_abs < 1:
        raise ValueError(f"growth_profile needs 0 < |q| < 1, got |q| = {q_abs}.")
    x_op, y_op = build_generators(spec)
    norms = y_op.row_sum_norm() * x_op.row_sum_norm()
    u_op = rep_apply(spec, PlaneElement.u())
    power = u_op
    rows = []
    for n in range(1, nmax + 1):
        estimate = power.row_sum_norm() ** (1 / n)
        rows.append(GrowthRow(n, estimate, q_abs ** ((n + 1) / 2) * norms))
        power = power @ u_op
    logger.debug("growth profile of %s: %s", spec, rows)
    return rows


GROWTH_COLUMNS = ("n", "estimate", "reference")


def write_growth_csv(rows: Iterable[GrowthRow], stream: TextIO) -> None:
    writer = csv.writer(stream)
    writer.writerow(GROWTH_COLUMNS)
    for row in rows:
        writer.writerow([row.n, repr(row.estimate), repr(row.reference)])
