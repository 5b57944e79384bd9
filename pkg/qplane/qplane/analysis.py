"""
The W_n operators and the checks built on them: the first-row/first-column
formulas of the two representation families, the hnset inequality, and the
geometric coefficient identity behind the injectivity estimate.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .errors import BadDim, IndexOutOfRange
from .omega import OmegaUElement, PairConvention, PairSequence, from_omega, to_pairs
from .representations import RepFamily, RepSpec, eta_vector
from .scalars import QScalar
from .seminorms import SeminormValue, bracket_sum, pair_sup_bracket, plane_seminorm, sup_norm
from .univariate import UPoly

logger = logging.getLogger(__name__)

THREE_HALVES = Fraction(3, 2)
FIVE_HALVES = Fraction(5, 2)


def _q_power(q_value, exponent: int):
    """Return q^exponent, symbolic when q_value is None."""
    if q_value is None:
        return QScalar.q_power(exponent)
    return q_value ** exponent


@dataclass(frozen=True)
class WnInput:
    """
    Data for W_n(h)(z).

    Attributes:
    - h_bar: the polynomials h_0, ..., h_m
    - q_value: None for symbolic q, else a GaussianRational or complex q
    - z: an optional evaluation point
    """
    h_bar: tuple[UPoly, ...]
    q_value: object = None
    z: object = None

    def padded(self, length: int) -> WnInput:
        """Return the input extended with zero polynomials to <length> entries."""
        extra = max(0, length - len(self.h_bar))
        return WnInput(self.h_bar + (UPoly(),) * extra, self.q_value, self.z)


def wn_polynomial(inp: WnInput, n: int):
    """
    Return W_n(h)(z) = h_n(z) z^n q^(n(n+1)/2) + sum_(k=0..n) h_k^(n-k)(0)/(n-k)! z^k q^(k(k+1)/2).

    The result is a polynomial in z, or its value when inp.z is set. Raises
    IndexOutOfRange if h_n is not part of the input.
    """
    if not 0 <= n < len(inp.h_bar):
        raise IndexOutOfRange(f"W_{n} needs h_{n}, but only {len(inp.h_bar)} polynomials were given.")
    h_n = inp.h_bar[n]
    result = h_n.shift(n).scale(_q_power(inp.q_value, n * (n + 1) // 2))
    for k in range(n + 1):
        coeff = inp.h_bar[k].coefficient(n - k)
        if coeff != 0:
            result = result + UPoly.monomial(k, coeff * _q_power(inp.q_value, k * (k + 1) // 2))
    if inp.z is not None:
        return result(inp.z)
    return result


def wn_reach(h_bar: Sequence[UPoly]) -> int:
    """Return the number of nonzero W_n, i.e. max(k + deg h_k) + 1."""
    return max((k + h.degree for k, h in enumerate(h_bar) if not h.is_zero()), default=-1) + 1


def _pairs(a: OmegaUElement, spec: RepSpec) -> PairSequence:
    pairs = to_pairs(a, PairConvention.RPHIXY)
    return pairs if spec.exact else pairs.evaluate(spec.q)


def _check_dim(a: OmegaUElement, spec: RepSpec, j: int) -> None:
    if spec.dim <= j + a.max_level():
        raise BadDim(f"Need N > j + level = {j + a.max_level()}, got N = {spec.dim}.")


def eta_entry_oracle(a: OmegaUElement, spec: RepSpec, j: int):
    """Return entry j of the first row of pi_lambda(a) (first column of pi'_mu(a))."""
    _check_dim(a, spec, j)
    return eta_vector(spec, from_omega(a))[j]


def eta_corrected_kernel(a: OmegaUElement, spec: RepSpec, j: int):
    """
    Return entry j of eta(a) in closed form from the RPHIXY pairs (f_n, g_n).

    pi_lambda: g_j(lam) lam^j q^(j(j+1)/2) + sum_(k<=j) [t^(j-k)]f_k lam^k q^(kj - k(k-1)/2)
    pi'_mu:    f_j(mu q^j) mu^j q^(j(j+1)/2) + sum_(k<=j) [t^(j-k)]g_k mu^k q^(k(k+1)/2)
    """
    _check_dim(a, spec, j)
    pairs = _pairs(a, spec)
    param = spec.scalar(spec.parameter)
    f_j, g_j = pairs[j]
    leading_scale = param ** j * spec.q_power(j * (j + 1) // 2)
    if spec.family is RepFamily.PI_LAMBDA:
        value = g_j(param) * leading_scale
    else:
        value = f_j(param * spec.q_power(j)) * leading_scale
    for k in range(min(j, len(pairs) - 1) + 1):
        f_k, g_k = pairs[k]
        if spec.family is RepFamily.PI_LAMBDA:
            value = value + f_k.coefficient(j - k) * param ** k * spec.q_power(k * j - k * (k - 1) // 2)
        else:
            value = value + g_k.coefficient(j - k) * param ** k * spec.q_power(k * (k + 1) // 2)
    return spec.scalar(value)


def _wn_values(pairs: PairSequence, spec: RepSpec, j: int) -> tuple:
    """Return (verbatim, mixed) readings of W_j at the representation parameter."""
    param = spec.scalar(spec.parameter)
    q_value = None if spec.exact else complex(spec.q)
    length = max(len(pairs), j + 1)
    own, other = (pairs.g_bar(), pairs.f_bar()) if spec.family is RepFamily.PI_LAMBDA \
        else (pairs.f_bar(), pairs.g_bar())
    own_input = WnInput(tuple(own), q_value, param).padded(length)
    verbatim = wn_polynomial(own_input, j)
    # mixed: the leading term from one side, the derivative sum from the other
    leading = own_input.h_bar[j](param) * param ** j * _q_power(q_value, j * (j + 1) // 2)
    mixed = leading
    other_bar = tuple(other) + (UPoly(),) * (length - len(other))
    for k in range(j + 1):
        coeff = other_bar[k].coefficient(j - k)
        if coeff != 0:
            mixed = mixed + coeff * param ** k * _q_power(q_value, k * (k + 1) // 2)
    return spec.scalar(verbatim), spec.scalar(mixed)


class EtaStatus(Enum):
    AGREE = "agree"
    DISCREPANCY = "discrepancy"


@dataclass(frozen=True)
class EtaRow:
    """
    One entry of an eta report.

    Attributes:
    - j: the entry index
    - oracle: the matrix entry
    - verbatim: W_j of the same-side sequence at the parameter
    - mixed: the leading term from that sequence plus derivative terms of the other
    - corrected: eta_corrected_kernel
    - difference: oracle - verbatim
    """
    j: int
    oracle: object
    verbatim: object
    mixed: object
    corrected: object
    difference: object

    @property
    def status(self) -> EtaStatus:
        return EtaStatus.AGREE if _same(self.oracle, self.verbatim) else EtaStatus.DISCREPANCY

    @property
    def corrected_agrees(self) -> bool:
        return _same(self.oracle, self.corrected)

    def to_json(self) -> dict:
        def text(value):
            return str(value) if isinstance(value, QScalar) else [complex(value).real, complex(value).imag]
        return {"j": self.j, "oracle": text(self.oracle), "verbatim": text(self.verbatim),
                "mixed": text(self.mixed), "corrected": text(self.corrected),
                "difference": text(self.difference), "status": self.status.value}


def _same(first, second, rel_tol: float = 1e-9) -> bool:
    if isinstance(first, QScalar) and isinstance(second, QScalar):
        return first == second
    first, second = complex(first), complex(second)
    return abs(first - second) <= rel_tol * max(1.0, abs(first), abs(second))


@dataclass
class EtaReport:
    """
    The eta entries of one element under one representation.

    Attributes:
    - element: the element examined
    - spec: the representation
    - rows: one EtaRow per entry 0..jmax
    """
    element: OmegaUElement
    spec: RepSpec
    rows: list[EtaRow] = field(default_factory=list)

    def discrepancies(self) -> list[EtaRow]:
        return [row for row in self.rows if row.status is EtaStatus.DISCREPANCY]

    def corrected_agrees(self) -> bool:
        return all(row.corrected_agrees for row in self.rows)

    def leading_terms_agree(self) -> bool:
        """Return True iff each pure term c*u^n gives entry n = c lam^n q^(n(n+1)/2).

        Both the matrix entry and the W_n reading of the lone term are checked.
        """
        param = self.spec.scalar(self.spec.parameter)
        for n, coeff in self.element.pure_u.items():
            if n >= len(self.rows):
                continue
            alone = OmegaUElement.u_power(n, coeff)
            expected = self.spec.scalar(self.spec.scalar(coeff) * param ** n
                                        * self.spec.q_power(n * (n + 1) // 2))
            verbatim, _ = _wn_values(_pairs(alone, self.spec), self.spec, n)
            if not (_same(eta_entry_oracle(alone, self.spec, n), expected) and _same(verbatim, expected)):
                return False
        return True

    def to_json(self) -> dict:
        return {"element": str(self.element), "family": self.spec.family.value,
                "parameter": str(self.spec.parameter), "dim": self.spec.dim,
                "rows": [row.to_json() for row in self.rows]}


def eta12_report(a: OmegaUElement, spec: RepSpec, jmax: int) -> EtaReport:
    """Return the oracle, verbatim, mixed and corrected values of entries 0..jmax.

    Nothing is asserted: a disagreement is recorded in the row's status.
    """
    _check_dim(a, spec, jmax)
    oracle = eta_vector(spec, from_omega(a))
    pairs = _pairs(a, spec)
    report = EtaReport(a, spec)
    for j in range(jmax + 1):
        verbatim, mixed = _wn_values(pairs, spec, j)
        entry = oracle[j]
        report.rows.append(EtaRow(j, entry, verbatim, mixed, eta_corrected_kernel(a, spec, j),
                                  entry - verbatim))
    logger.debug("eta report for %s: %d discrepancies", a, len(report.discrepancies()))
    return report


@dataclass(frozen=True)
class HnsetResult:
    """
    Both sides of the hnset inequality.

    Attributes:
    - lhs_lower, lhs_upper: bracket of ||h_n|| rho^n |q|^(n(n+1)/2)
    - rhs_lower, rhs_upper: the right side from sampled and coefficient sup bounds
    - ok: the sound check lhs_lower <= rhs_upper and the sharp check
      lhs_lower <= rhs_lower (1 + tol)
    """
    lhs_lower: float
    lhs_upper: float
    rhs_lower: float
    rhs_upper: float
    ok: bool


def hnset_check(h_bar: Sequence[UPoly], rho, q_abs: float, n: int, q_value=None,
                tol: float = 1e-6, samples: int | None = None) -> HnsetResult:
    """
    Check ||h_n|| rho^n |q|^(n(n+1)/2) <= 3/2 ||W_n|| + (3/2)^2 sum_(k<n) (5/2)^k ||W_(n-1-k)|| / rho^(k+1).

    W_m is built with q = q_value, which defaults to the positive real q_abs.
    """
    if not 0 < q_abs < 1:
        raise ValueError(f"q_abs must lie in (0, 1), got {q_abs}.")
    if not 0 <= n < len(h_bar):
        raise IndexOutOfRange(f"hnset_check needs h_{n}, got {len(h_bar)} polynomials.")
    rho = float(rho)
    q_value = complex(q_abs if q_value is None else q_value)
    inp = WnInput(tuple(h.map(complex) for h in h_bar), q_value)
    h_norm = sup_norm(inp.h_bar[n], rho, samples)
    factor = rho ** n * q_abs ** (n * (n + 1) / 2)
    w_norms = [sup_norm(wn_polynomial(inp, m), rho, samples) for m in range(n + 1)]

    def right_side(bound: str) -> float:
        total = 1.5 * getattr(w_norms[n], bound)
        for k in range(n):
            total += 2.25 * 2.5 ** k * getattr(w_norms[n - 1 - k], bound) / rho ** (k + 1)
        return total

    lhs_lower, lhs_upper = h_norm.lower * factor, h_norm.upper * factor
    rhs_lower, rhs_upper = right_side("lower"), right_side("upper")
    ok = lhs_lower <= rhs_upper and lhs_lower <= rhs_lower * (1 + tol)
    return HnsetResult(lhs_lower, lhs_upper, rhs_lower, rhs_upper, ok)


def coefficient_identity_check(n: int, m: int) -> bool:
    """Return True iff (3/2)^2 + (3/2)^3 sum_(i=0..n-m-2) (5/2)^i == (3/2)^2 (5/2)^(n-m-1)."""
    if not 0 <= m <= n - 1:
        raise ValueError(f"coefficient_identity_check needs 0 <= m <= n-1, got n={n}, m={m}.")
    geometric = sum((FIVE_HALVES ** i for i in range(n - m - 1)), Fraction(0))
    left = THREE_HALVES ** 2 + THREE_HALVES ** 3 * geometric
    return left == THREE_HALVES ** 2 * FIVE_HALVES ** (n - m - 1)


def tilde_norm(w_seq: Sequence[tuple[UPoly, UPoly]], rho, samples: int | None = None) -> SeminormValue:
    """Return ||(f, g)||~_rho = sum_n max{||f_n||_rho, ||g_n||_rho} as an interval."""
    return bracket_sum(pair_sup_bracket(f, g, rho, samples) for f, g in w_seq)


@dataclass(frozen=True)
class MajorizationPoint:
    """
    |a|_(rho, rho|q|^(1/2)) against ||(W(f), W(g))||~_rho at one rho, in both directions.

    Both sides read the RPHIXY pairs (f_n, g_n) of a. Summing the hnset
    inequality over n gives the forward bound
        |a|_(rho, rho|q|^(1/2)) <= (3/2 + (9/4) / (rho - 5/2)) ||W||~_rho   for rho > 5/2,
    and the Cauchy inequalities on the circle of radius R = max(rho, 2) give
        ||W||~_rho <= (2 + 1 / (R - 1)) |a|_(R, rho|q|^(1/2)).

    Attributes:
    - rho: the radius
    - seminorm: |a|_(rho, rho|q|^(1/2))
    - tilde: the tilde norm of the W sequences
    - ratio: seminorm / tilde, using the upper bound over the lower bound
    - reverse_radius: R
    - reverse_seminorm: |a|_(R, rho|q|^(1/2))
    - reverse_ratio: tilde / reverse_seminorm, upper over lower
    """
    rho: float
    seminorm: SeminormValue
    tilde: SeminormValue
    ratio: float
    reverse_radius: float
    reverse_seminorm: SeminormValue
    reverse_ratio: float

    @property
    def forward_constant(self) -> float | None:
        """The constant of the forward bound, None for rho <= 5/2."""
        return forward_majorization_constant(self.rho)

    @property
    def reverse_constant(self) -> float:
        return reverse_majorization_constant(self.reverse_radius)

    @property
    def forward_ok(self) -> bool | None:
        """Whether seminorm <= C tilde holds on the sound brackets; None for rho <= 5/2."""
        constant = self.forward_constant
        if constant is None:
            return None
        return self.seminorm.lower <= constant * self.tilde.upper

    @property
    def reverse_ok(self) -> bool:
        return self.tilde.lower <= self.reverse_constant * self.reverse_seminorm.upper


def forward_majorization_constant(rho) -> float | None:
    """Return 3/2 + (9/4) / (rho - 5/2), or None when rho <= 5/2."""
    rho = float(rho)
    if rho <= FIVE_HALVES:
        return None
    return float(THREE_HALVES) + float(THREE_HALVES ** 2) / (rho - float(FIVE_HALVES))


def reverse_majorization_constant(radius) -> float:
    """Return 2 + 1 / (R - 1) for a Cauchy radius R > 1."""
    radius = float(radius)
    if radius <= 1:
        raise ValueError(f"The Cauchy radius must exceed 1, got {radius}.")
    return 2 + 1 / (radius - 1)


def majorization_report(a: OmegaUElement, q, rhos: Sequence[float],
                        samples: int | None = None) -> list[MajorizationPoint]:
    """Return |a|_(rho, rho|q|^(1/2)) and ||W||~_rho with both bounds for each rho."""
    q = complex(q)
    q_abs = abs(q)
    pairs = to_pairs(a, PairConvention.RPHIXY).evaluate(q)
    f_bar, g_bar = pairs.f_bar(), pairs.g_bar()
    length = max(wn_reach(f_bar), wn_reach(g_bar))
    f_input = WnInput(tuple(f_bar), q).padded(length)
    g_input = WnInput(tuple(g_bar), q).padded(length)
    w_seq = [(wn_polynomial(f_input, n), wn_polynomial(g_input, n)) for n in range(length)]
    points = []
    for rho in rhos:
        rho = float(rho)
        r = rho * q_abs ** 0.5
        radius = max(rho, 2.0)
        seminorm = plane_seminorm(pairs, rho, r, q_abs, samples)
        reverse = plane_seminorm(pairs, radius, r, q_abs, samples)
        tilde = tilde_norm(w_seq, rho, samples)
        ratio = seminorm.upper / tilde.lower if tilde.lower else 0.0
        reverse_ratio = tilde.upper / reverse.lower if reverse.lower else 0.0
        points.append(MajorizationPoint(rho, seminorm, tilde, ratio, radius, reverse, reverse_ratio))
    logger.debug("majorization of %s: %s", a, points)
    return points
