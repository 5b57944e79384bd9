"""
Seminorm families on u-series, pair sequences and plane elements.

EXACT results keep moduli of Gaussian rationals as sums c_0 + sum c_m sqrt(m)
with rational c and integer m, and report sound float bounds next to them.
FLOAT results are mpmath intervals, reported with outward-rounded float endpoints.
"""
from __future__ import annotations

import csv
import logging
import math
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence, TextIO

import numpy as np
from mpmath import iv
from mpmath.libmp import round_ceiling, round_floor, to_float

from .config import sample_count
from .errors import ConfigError, ModeError
from .omega import BetaGammaForm, PairSequence, PairConvention, to_beta_gamma, to_omega, to_pairs
from .plane import PlaneElement
from .scalars import GaussianRational, QScalar, as_complex
from .univariate import UPoly

logger = logging.getLogger(__name__)

_TRIAL_LIMIT = 100_000


def _split_square(n: int) -> tuple[int, int]:
    """Return (s, m) with n = s^2 * m and m squarefree.

    Trial division runs while p^3 <= n. What remains then has at most two
    prime factors, so it is squarefree unless it is a perfect square.
    Raises ValueError if that needs primes beyond _TRIAL_LIMIT.
    """
    root = math.isqrt(n)
    if root * root == n:
        return root, 1
    s, m, p = 1, 1, 2
    while p * p * p <= n:
        if p > _TRIAL_LIMIT:
            raise ValueError(f"Cannot split the square part of {n}: it needs primes beyond {_TRIAL_LIMIT}.")
        while n % p == 0:
            n //= p
            if n % p == 0:
                n //= p
                s *= p
            else:
                m *= p
        p += 1 if p == 2 else 2
    root = math.isqrt(n)
    if root * root == n:
        return s * root, m
    return s, m * n


def exact_modulus(value: GaussianRational) -> tuple[Fraction, int]:
    """Return (c, m) with |value| = c * sqrt(m)."""
    norm = value.abs2()
    s, m = _split_square(norm.numerator * norm.denominator)
    return Fraction(s, norm.denominator), m


def _sqrt_bounds(m: int, bits: int) -> tuple[Fraction, Fraction]:
    scale = 1 << bits
    low = math.isqrt(m * scale * scale)
    if low * low == m * scale * scale:
        return Fraction(low, scale), Fraction(low, scale)
    return Fraction(low, scale), Fraction(low + 1, scale)


def _parts_bounds(rational: Fraction, radicals: dict[int, Fraction], bits: int = 64) \
        -> tuple[Fraction, Fraction]:
    low = high = rational
    for m, c in radicals.items():
        lo, hi = _sqrt_bounds(m, bits)
        if c >= 0:
            low, high = low + c * lo, high + c * hi
        else:
            low, high = low + c * hi, high + c * lo
    return low, high


def _down(value) -> float:
    return math.nextafter(float(value), -math.inf)


def _up(value) -> float:
    return math.nextafter(float(value), math.inf)


def _real_interval(value):
    """Return a real weight as an mpmath interval containing it."""
    if hasattr(value, "_mpi_"):
        return value
    if isinstance(value, Fraction):
        return iv.mpf(value.numerator) / value.denominator
    return iv.mpf(float(value))


def _modulus_interval(value):
    """Return |value| of a numeric scalar as an mpmath interval."""
    value = complex(value)
    return abs(iv.mpc(value.real, value.imag))


def _interval_bounds(value) -> tuple[float, float]:
    """Return the endpoints of an mpmath interval as floats, rounded outward."""
    low, high = value._mpi_
    return to_float(low, rnd=round_floor), to_float(high, rnd=round_ceiling)


@dataclass(frozen=True)
class SeminormValue:
    """
    The value of a seminorm.

    In EXACT mode the value is rational + sum(c * sqrt(m)) over radicals, and
    lower/upper are sound float bounds of it. In FLOAT mode only the interval
    is known.

    Attributes:
    - lower: a float lower bound
    - upper: a float upper bound
    - rational: the rational part in EXACT mode, None in FLOAT mode
    - radicals: sorted (m, c) pairs in EXACT mode
    """
    lower: float
    upper: float
    rational: Fraction | None = None
    radicals: tuple[tuple[int, Fraction], ...] = ()

    def __post_init__(self) -> None:
        if self.lower > self.upper:
            raise ValueError(f"Empty interval [{self.lower}, {self.upper}].")

    @classmethod
    def from_parts(cls, rational: Fraction, radicals: dict[int, Fraction] | None = None) -> SeminormValue:
        radicals = {m: c for m, c in (radicals or {}).items() if c}
        low, high = _parts_bounds(rational, radicals)
        return cls(_down(low), _up(high), Fraction(rational), tuple(sorted(radicals.items())))

    @classmethod
    def from_fraction(cls, value) -> SeminormValue:
        return cls.from_parts(Fraction(value))

    @classmethod
    def from_interval(cls, value) -> SeminormValue:
        """Return the float bracket of an mpmath interval."""
        return cls(*_interval_bounds(value))

    @classmethod
    def interval(cls, lower: float, upper: float) -> SeminormValue:
        return cls(lower, upper)

    @property
    def is_exact(self) -> bool:
        return self.rational is not None

    @property
    def exact(self) -> Fraction | None:
        """The exact value when it is rational, else None."""
        if self.rational is not None and not self.radicals:
            return self.rational
        return None

    @property
    def midpoint(self) -> float:
        if self.exact is not None:
            return float(self.exact)
        return (self.lower + self.upper) / 2

    def _radical_map(self) -> dict[int, Fraction]:
        return dict(self.radicals)

    def __add__(self, other: SeminormValue) -> SeminormValue:
        if self.is_exact and other.is_exact:
            radicals = defaultdict(Fraction, self.radicals)
            for m, c in other.radicals:
                radicals[m] += c
            return SeminormValue.from_parts(self.rational + other.rational, radicals)
        return SeminormValue(_down(self.lower + other.lower), _up(self.upper + other.upper))

    def __mul__(self, other: SeminormValue) -> SeminormValue:
        if self.is_exact and other.is_exact:
            left = [(1, self.rational)] + list(self.radicals)
            right = [(1, other.rational)] + list(other.radicals)
            rational, radicals = Fraction(0), defaultdict(Fraction)
            for m1, c1 in left:
                for m2, c2 in right:
                    # m1 and m2 are squarefree
                    s = math.gcd(m1, m2)
                    m = (m1 // s) * (m2 // s)
                    if m == 1:
                        rational += c1 * c2 * s
                    else:
                        radicals[m] += c1 * c2 * s
            return SeminormValue.from_parts(rational, radicals)
        products = [a * b for a in (self.lower, self.upper) for b in (other.lower, other.upper)]
        return SeminormValue(_down(min(products)), _up(max(products)))

    def compare(self, other: SeminormValue) -> int | None:
        """Return the sign of self - other, or None if the intervals overlap.

        Exact values are always decided.
        """
        if self.is_exact and other.is_exact:
            difference = self + SeminormValue._negated(other)
            if not difference.radicals:
                return (difference.rational > 0) - (difference.rational < 0)
            for bits in (64, 256, 1024):
                low, high = _parts_bounds(difference.rational, difference._radical_map(), bits)
                if low > 0:
                    return 1
                if high < 0:
                    return -1
            return 0
        if self.upper < other.lower:
            return -1
        if self.lower > other.upper:
            return 1
        return None

    @staticmethod
    def _negated(value: SeminormValue) -> SeminormValue:
        low, high = _parts_bounds(-value.rational, {m: -c for m, c in value.radicals})
        return SeminormValue(_down(low), _up(high), -value.rational,
                             tuple((m, -c) for m, c in value.radicals))

    def at_most(self, other: SeminormValue, rel_tol: float = 0.0) -> bool:
        """Return False only if self > other is certain (beyond rel_tol)."""
        if self.is_exact and other.is_exact:
            return self.compare(other) <= 0
        return self.lower <= other.upper * (1 + rel_tol)

    def same_value(self, other: SeminormValue, rel_tol: float = 1e-12) -> bool:
        """Return True iff both values agree: exactly when both are exact, else within rel_tol."""
        if self.is_exact and other.is_exact:
            return self.compare(other) == 0
        scale = max(abs(self.midpoint), abs(other.midpoint), 1e-300)
        return abs(self.midpoint - other.midpoint) <= rel_tol * scale + \
            (self.upper - self.lower) + (other.upper - other.lower)

    def __str__(self) -> str:
        if self.is_exact:
            pieces = [str(self.rational)] if self.rational or not self.radicals else []
            pieces += [f"{c}*sqrt({m})" for m, c in self.radicals]
            return "+".join(pieces).replace("+-", "-")
        return f"[{self.lower!r}, {self.upper!r}]"


def _is_exact_scalar(value) -> bool:
    return isinstance(value, (int, Fraction, GaussianRational, QScalar)) and not isinstance(value, bool)


def _constant(value):
    if isinstance(value, QScalar):
        return value.constant_value()
    return value


class ModulusSum:
    """
    Accumulates sum(weight * |value|) in either mode.

    Attributes:
    - exact: whether values and weights are exact rationals
    """

    def __init__(self, exact: bool) -> None:
        self.exact = exact
        self._rational = Fraction(0)
        self._radicals: dict[int, Fraction] = defaultdict(Fraction)
        self._total = iv.mpf(0)

    def add(self, value, weight) -> None:
        value = _constant(value)
        if self.exact:
            value = GaussianRational.coerce(value)
            if not value:
                return
            c, m = exact_modulus(value)
            c *= Fraction(weight)
            if m == 1:
                self._rational += c
            else:
                self._radicals[m] += c
        else:
            self._total += _modulus_interval(value) * _real_interval(weight)

    def result(self) -> SeminormValue:
        if self.exact:
            return SeminormValue.from_parts(self._rational, self._radicals)
        return SeminormValue.from_interval(self._total)


def _check_positive(name: str, value) -> None:
    if not value > 0:
        raise ValueError(f"{name} must be positive, got {value}.")


class WeightKind(Enum):
    TRIVIAL = "trivial"
    BS = "bs"
    CUSTOM = "custom"


@dataclass(frozen=True)
class WeightSpec:
    """
    A weight sequence omega_n on u-series.

    Attributes:
    - kind: TRIVIAL (omega_n = 1), BS (omega_n = s^(n^2)) or CUSTOM (a table)
    - s: the rational base of a BS weight
    - table: the explicit values of a CUSTOM weight
    """
    kind: WeightKind
    s: Fraction | None = None
    table: tuple[Fraction, ...] = ()

    @classmethod
    def trivial(cls) -> WeightSpec:
        return cls(WeightKind.TRIVIAL)

    @classmethod
    def bs(cls, s) -> WeightSpec:
        """Return the weight s^(n^2) of B_s, for rational s in (0, 1)."""
        s = Fraction(s)
        if not 0 < s < 1:
            raise ValueError(f"B_s needs 0 < s < 1, got {s}.")
        return cls(WeightKind.BS, s=s)

    @classmethod
    def custom(cls, table: Iterable) -> WeightSpec:
        table = tuple(Fraction(w) for w in table)
        if any(w <= 0 for w in table):
            raise ValueError("Custom weights must be positive.")
        return cls(WeightKind.CUSTOM, table=table)

    def omega(self, n: int) -> Fraction:
        if self.kind is WeightKind.TRIVIAL:
            return Fraction(1)
        if self.kind is WeightKind.BS:
            return self.s ** (n * n)
        if n >= len(self.table):
            raise ValueError(f"Custom weight table has no entry {n}.")
        return self.table[n]

    def ratio(self, m: int, n: int) -> Fraction:
        """Return omega_(m+n) / (omega_m * omega_n)."""
        if self.kind is WeightKind.TRIVIAL:
            return Fraction(1)
        if self.kind is WeightKind.BS:
            # s^((m+n)^2) / s^(m^2 + n^2)
            return self.s ** (2 * m * n)
        return self.omega(m + n) / (self.omega(m) * self.omega(n))


def weight_submult_check(w: WeightSpec, N: int) -> bool:
    """Return True iff omega_(m+n) <= omega_m * omega_n for all m, n <= N.

    CUSTOM weights are checked on the pairs their table covers.
    """
    if N < 1:
        raise ValueError(f"weight_submult_check needs N >= 1, got {N}.")
    for m in range(N + 1):
        for n in range(m, N + 1):
            if w.kind is WeightKind.CUSTOM and m + n >= len(w.table):
                break
            if w.ratio(m, n) > 1:
                logger.debug("weight %s fails at m=%d, n=%d", w, m, n)
                return False
    return True


def cw_norm(series: UPoly, r, w: WeightSpec) -> SeminormValue:
    """Return sum |alpha_n| r^n omega_n.

    Exact when r and every coefficient are exact, else an interval.
    """
    _check_positive("r", r)
    exact = _is_exact_scalar(r) and all(_is_exact_scalar(c) for c in series.coeffs)
    total = ModulusSum(exact)
    for n, coeff in series.items():
        if exact:
            total.add(coeff, Fraction(r) ** n * w.omega(n))
        else:
            total.add(coeff, _real_interval(r) ** n * _real_interval(w.omega(n)))
    return total.result()


def bq12_norm(series: UPoly, r: float, q_abs: float) -> SeminormValue:
    """Return the B_(|q|^(1/2)) norm sum |alpha_n| r^n |q|^(n^2/2)."""
    _check_positive("r", r)
    if not 0 < q_abs < 1:
        raise ValueError(f"q_abs must lie in (0, 1), got {q_abs}.")
    total = ModulusSum(False)
    radius, root_q = _real_interval(r), iv.sqrt(_real_interval(q_abs))
    for n, coeff in series.items():
        total.add(coeff, radius ** n * root_q ** (n * n))
    return total.result()


@dataclass(frozen=True)
class SupNormEstimate:
    """
    A bracket of sup{|f(z)| : |z| <= rho}.

    Attributes:
    - lower: the largest modulus among equispaced points of |z| = rho
    - upper: the coefficient bound sum |alpha_k| rho^k
    - samples: the number of boundary points
    """
    lower: float
    upper: float
    samples: int


def _numeric_coeffs(f: UPoly) -> np.ndarray:
    try:
        return np.array([as_complex(c) for c in f.coeffs], dtype=complex)
    except ModeError:
        raise ModeError(f"Polynomial {f} has q-dependent coefficients; evaluate it at q first.")


def sup_norm(f: UPoly, rho, samples: int | None = None) -> SupNormEstimate:
    """Return the sampled lower and coefficient upper bound of ||f||_rho."""
    _check_positive("rho", rho)
    samples = sample_count() if samples is None else samples
    if samples < 8:
        raise ValueError(f"sup_norm needs at least 8 samples, got {samples}.")
    coeffs = _numeric_coeffs(f)
    if not len(coeffs):
        return SupNormEstimate(0.0, 0.0, samples)
    radius = _real_interval(rho)
    bound = iv.mpf(0)
    for k, c in enumerate(coeffs):
        if c:
            bound += _modulus_interval(c) * radius ** k
    upper = _interval_bounds(bound)[1]
    rho = float(rho)
    points = rho * np.exp(2j * np.pi * np.arange(samples) / samples)
    lower = float(np.max(np.abs(np.polyval(coeffs[::-1], points))))
    # a rounding error may push the sampled maximum past the exact bound
    return SupNormEstimate(min(lower, upper), upper, samples)


def cauchy_check(f: UPoly, rho, m: int, tol: float = 1e-9, samples: int | None = None) -> bool:
    """Return True iff |f^(m)(0)|/m! <= ||f||_rho / rho^m.

    The coefficient is read off exactly. It is compared with both bounds of
    the sup estimate: the sampled maximum is itself an upper bound for the
    coefficient whenever samples > deg f, so both comparisons must hold.
    Fewer samples are raised to deg f + 1.
    """
    if not 0 <= m <= f.degree:
        raise ValueError(f"cauchy_check needs 0 <= m <= deg f = {f.degree}, got {m}.")
    samples = max(sample_count() if samples is None else samples, f.degree + 1)
    coefficient = abs(as_complex(f.coefficient(m)))
    estimate = sup_norm(f, rho, samples)
    scaled = coefficient * float(rho) ** m
    return scaled <= estimate.upper * (1 + tol) and scaled <= estimate.lower * (1 + tol)


def pair_sup_bracket(f: UPoly, g: UPoly, rho, samples: int | None = None) -> tuple[float, float]:
    """Return the (lower, upper) bracket of max{||f||_rho, ||g||_rho}."""
    sf, sg = sup_norm(f, rho, samples), sup_norm(g, rho, samples)
    return max(sf.lower, sg.lower), max(sf.upper, sg.upper)


def bracket_sum(brackets: Iterable[tuple[float, float]]) -> SeminormValue:
    """Return the interval sum of (lower, upper) float brackets."""
    lower = upper = iv.mpf(0)
    for low, high in brackets:
        lower += low
        upper += high
    return SeminormValue.interval(_interval_bounds(lower)[0], _interval_bounds(upper)[1])


def plane_seminorm(a: PairSequence, rho, r, q_abs: float, samples: int | None = None) -> SeminormValue:
    """Return |a|_(rho,r) = sum max{||f_n||_rho, ||g_n||_rho} r^n |q|^(n^2/2) as an interval.

    <a> must have numeric coefficients (see PairSequence.evaluate).
    """
    _check_positive("rho", rho)
    _check_positive("r", r)
    if not 0 < q_abs < 1:
        raise ValueError(f"q_abs must lie in (0, 1), got {q_abs}.")
    lower = upper = iv.mpf(0)
    radius, root_q = _real_interval(r), iv.sqrt(_real_interval(q_abs))
    for n, (f, g) in enumerate(a):
        low, high = pair_sup_bracket(f, g, rho, samples)
        weight = radius ** n * root_q ** (n * n)
        lower += low * weight
        upper += high * weight
    return SeminormValue.interval(_interval_bounds(lower)[0], _interval_bounds(upper)[1])


class DosiFamily(Enum):
    """Dosi's norms: PRIME_L fixes the x-degree l, DPRIME_K fixes the y-degree k."""
    PRIME_L = "prime_l"
    DPRIME_K = "dprime_k"


class PiFamily(Enum):
    """|a|'_(r,k) = sum_i |beta_ik| r^i and |a|''_(r,l) = sum_i |gamma_il| r^i."""
    PRIME_K = "prime_k"
    DPRIME_L = "dprime_l"


def _at_q(coeff: QScalar, q, exact: bool):
    if exact:
        return coeff.substitute(q)
    return coeff.evaluate(q)


def _sile_power(n: int) -> QScalar:
    return QScalar.q_power(n * (n + 1) // 2)


def dosi_norms(a: PlaneElement, q, r, index: int, which: DosiFamily) -> SeminormValue:
    """Return ||a||'_(r,l) = sum_k |alpha_kl| r^k or ||a||''_(r,k) = sum_l |alpha_kl| r^l.

    Exact when q and r are exact rationals, else an interval at the float q.
    """
    _check_positive("r", r)
    exact = _is_exact_scalar(q) and _is_exact_scalar(r)
    total = ModulusSum(exact)
    for (k, l), coeff in a:
        if which is DosiFamily.PRIME_L and l == index:
            total.add(_at_q(coeff, q, exact), _power(r, k, exact))
        elif which is DosiFamily.DPRIME_K and k == index:
            total.add(_at_q(coeff, q, exact), _power(r, l, exact))
    return total.result()


def _power(r, n: int, exact: bool):
    return Fraction(r) ** n if exact else _real_interval(r) ** n


def dosi_from_beta_gamma(c: BetaGammaForm, q, r, index: int, which: DosiFamily) -> SeminormValue:
    """Return Dosi's norms from beta/gamma coefficients.

    ||a||'_(r,l)  = sum_(k<=l) |beta_(l-k,k) q^(k(k+1)/2)| r^k + sum_(k>l) |gamma_(k-l,l) q^(l(l+1)/2)| r^k
    ||a||''_(r,k) = sum_(l>=k) |beta_(l-k,k) q^(k(k+1)/2)| r^l + sum_(l<k) |gamma_(k-l,l) q^(l(l+1)/2)| r^l
    """
    _check_positive("r", r)
    exact = _is_exact_scalar(q) and _is_exact_scalar(r)
    total = ModulusSum(exact)
    if which is DosiFamily.PRIME_L:
        l = index
        for (i, j), beta in c.beta.items():
            if i + j == l:
                total.add(_at_q(beta * _sile_power(j), q, exact), _power(r, j, exact))
        for (i, j), gamma in c.gamma.items():
            if j == l:
                total.add(_at_q(gamma * _sile_power(l), q, exact), _power(r, i + j, exact))
    else:
        k = index
        for (i, j), beta in c.beta.items():
            if j == k:
                total.add(_at_q(beta * _sile_power(k), q, exact), _power(r, i + j, exact))
        for (i, j), gamma in c.gamma.items():
            if i + j == k:
                total.add(_at_q(gamma * _sile_power(j), q, exact), _power(r, j, exact))
    return total.result()


def dosi_from_beta_gamma_printed(c: BetaGammaForm, q, r, index: int, which: DosiFamily) -> SeminormValue:
    """Return the beta/gamma sums in the form they are usually displayed.

    ||a||'_(r,l)  = sum_(k>=l) |beta_(k-l,l) q^(l(l+1)/2)| r^k + sum_(k=1..l) |gamma_(k,l-k) q^((l-k)(l-k+1)/2)| r^k
    ||a||''_(r,k) = sum_(l>=k) |beta_(l-k,k) q^(k(k+1)/2)| r^l + sum_(l=1..k) |gamma_(l,k-l) q^((k-l)(k-l+1)/2)| r^l

    These index the beta part by the u-level instead of the x-degree and
    weight the gamma part by r^i, so they differ from dosi_norms in general.
    """
    _check_positive("r", r)
    exact = _is_exact_scalar(q) and _is_exact_scalar(r)
    total = ModulusSum(exact)
    for (i, j), beta in c.beta.items():
        if j == index:
            total.add(_at_q(beta * _sile_power(index), q, exact), _power(r, i + index, exact))
    for (i, j), gamma in c.gamma.items():
        if i + j == index:
            total.add(_at_q(gamma * _sile_power(j), q, exact), _power(r, i, exact))
    return total.result()


def pi_family_norms(a: PlaneElement, q, r, index: int, which: PiFamily) -> SeminormValue:
    """Return |a|'_(r,k) = sum_i |beta_ik| r^i or |a|''_(r,l) = sum_i |gamma_il| r^i.

    gamma_0l is beta_0l.
    """
    _check_positive("r", r)
    exact = _is_exact_scalar(q) and _is_exact_scalar(r)
    c = to_beta_gamma(to_omega(a))
    total = ModulusSum(exact)
    if which is PiFamily.PRIME_K:
        for (i, j), beta in c.beta.items():
            if j == index:
                total.add(_at_q(beta, q, exact), _power(r, i, exact))
    else:
        total.add(_at_q(c.gamma_at(0, index), q, exact), 1)
        for (i, j), gamma in c.gamma.items():
            if j == index:
                total.add(_at_q(gamma, q, exact), _power(r, i, exact))
    return total.result()


@dataclass(frozen=True)
class MajorizationRow:
    """
    One norm against the combination of the other family that dominates it.

    Attributes:
    - family: the dominated norm, a DosiFamily or a PiFamily
    - index: its fixed degree
    - norm: the dominated norm value
    - bound: the dominating combination
    - ratio: norm / bound (0 when the bound vanishes)
    """
    family: DosiFamily | PiFamily
    index: int
    norm: SeminormValue
    bound: SeminormValue
    ratio: float


def majorization_ratios(a: PlaneElement, q, r, indices: Iterable[int]) -> list[MajorizationRow]:
    """Return the ratios of Dosi's norms to the pi family, for each index.

    With R = max(1, r) and |q| <= 1,
    ||a||'_(r,l)  <= R^l (sum_(k<=l) |a|'_(R,k) + |a|''_(R,l)),
    ||a||''_(r,k) <= R^k (|a|'_(R,k) + sum_(l<k) |a|''_(R,l)),
    so every reported ratio is at most 1 in that range.
    """
    exact = _is_exact_scalar(q) and _is_exact_scalar(r)
    big_r = max(Fraction(r) if exact else float(r), 1)
    rows = []
    for index in indices:
        scale = SeminormValue.from_fraction(Fraction(big_r) ** index) if exact \
            else SeminormValue.from_interval(_real_interval(big_r) ** index)
        for family in DosiFamily:
            norm = dosi_norms(a, q, r, index, family)
            if family is DosiFamily.PRIME_L:
                parts = [pi_family_norms(a, q, big_r, k, PiFamily.PRIME_K) for k in range(index + 1)]
                parts.append(pi_family_norms(a, q, big_r, index, PiFamily.DPRIME_L))
            else:
                parts = [pi_family_norms(a, q, big_r, l, PiFamily.DPRIME_L) for l in range(index)]
                parts.append(pi_family_norms(a, q, big_r, index, PiFamily.PRIME_K))
            bound = parts[0]
            for part in parts[1:]:
                bound = bound + part
            bound = bound * scale
            ratio = norm.midpoint / bound.midpoint if bound.midpoint else 0.0
            rows.append(MajorizationRow(family, index, norm, bound, ratio))
    return rows


def _inverse_level_weight(q, r, level: int, exact: bool) -> SeminormValue:
    """Return 1 / (|q|^(level(level+1)/2) r^level)."""
    e = level * (level + 1) // 2
    if not exact:
        return SeminormValue.from_interval(1 / (_modulus_interval(q) ** e * _real_interval(r) ** level))
    c, m = exact_modulus(GaussianRational.coerce(q))
    base = c ** e * Fraction(r) ** level
    if m == 1 or e % 2 == 0:
        return SeminormValue.from_fraction(1 / (base * Fraction(m) ** (e // 2)))
    # |q|^e = c^e m^((e-1)/2) sqrt(m)
    return SeminormValue.from_parts(Fraction(0), {m: 1 / (base * Fraction(m) ** ((e + 1) // 2))})


def reverse_majorization_ratios(a: PlaneElement, q, r, indices: Iterable[int]) -> list[MajorizationRow]:
    """Return the ratios of the pi family to Dosi's norms, for each index.

    Every beta_ik and gamma_il is one coefficient of a times q^(-level(level+1)/2), so
    |a|'_(r,k)  <= ||a||''_(r,k) / (|q|^(k(k+1)/2) r^k),
    |a|''_(r,l) <= ||a||'_(r,l) / (|q|^(l(l+1)/2) r^l),
    and every reported ratio is at most 1.
    """
    _check_positive("r", r)
    exact = _is_exact_scalar(q) and _is_exact_scalar(r)
    rows = []
    for index in indices:
        scale = _inverse_level_weight(q, r, index, exact)
        for family, dosi in ((PiFamily.PRIME_K, DosiFamily.DPRIME_K),
                             (PiFamily.DPRIME_L, DosiFamily.PRIME_L)):
            norm = pi_family_norms(a, q, r, index, family)
            bound = dosi_norms(a, q, r, index, dosi) * scale
            ratio = norm.midpoint / bound.midpoint if bound.midpoint else 0.0
            rows.append(MajorizationRow(family, index, norm, bound, ratio))
    return rows


SWEEP_COLUMNS = ("norm_family", "index", "r", "rho", "lower", "upper")


@dataclass(frozen=True)
class SweepRow:
    """One evaluated seminorm in a sweep; rho is None for families without it."""
    norm_family: str
    index: int
    r: float
    rho: float | None
    lower: float
    upper: float


SWEEP_FAMILIES = ("dosi_prime", "dosi_dprime", "pi_prime", "pi_dprime", "plane", "cw", "bq12")


def pure_u_series(a: PlaneElement, q) -> UPoly:
    """Return the u-series of a with coefficients at q.

    Raises ConfigError unless a is a polynomial in u = xy.
    """
    omega = to_omega(a)
    if omega.x_part or omega.y_part:
        raise ConfigError(f"{a} is not a polynomial in u = xy.")
    exact = _is_exact_scalar(q)
    return UPoly.from_dict({j: _at_q(c, q, exact) for j, c in omega.pure_u.items()})


def seminorm_sweep(family: str, a: PlaneElement, q, rs: Sequence, rhos: Sequence = (1,),
                   indices: Sequence[int] = (0,), samples: int | None = None,
                   weight: WeightSpec | None = None) -> list[SweepRow]:
    """Return the rows of <family> evaluated at a over the (index, r, rho) grid.

    The plane family reads a as an OMEGA_PAIR sequence at the numeric q and
    ignores indices. The cw (weight, trivial by default) and bq12 families
    read a as a u-series and ignore indices and rhos.
    """
    rows = []
    if family in ("cw", "bq12"):
        series = pure_u_series(a, q)
        for r in rs:
            if family == "cw":
                value = cw_norm(series, r, weight or WeightSpec.trivial())
            else:
                value = bq12_norm(series, float(r), abs(complex(q)))
            rows.append(SweepRow(family, 0, float(r), None, value.lower, value.upper))
        return rows
    if family == "plane":
        q_value = complex(q)
        pairs = to_pairs(to_omega(a), PairConvention.OMEGA_PAIR).evaluate(q_value)
        for r in rs:
            for rho in rhos:
                value = plane_seminorm(pairs, rho, r, abs(q_value), samples)
                rows.append(SweepRow(family, 0, float(r), float(rho), value.lower, value.upper))
        return rows
    evaluators = {
        "dosi_prime": lambda i, r: dosi_norms(a, q, r, i, DosiFamily.PRIME_L),
        "dosi_dprime": lambda i, r: dosi_norms(a, q, r, i, DosiFamily.DPRIME_K),
        "pi_prime": lambda i, r: pi_family_norms(a, q, r, i, PiFamily.PRIME_K),
        "pi_dprime": lambda i, r: pi_family_norms(a, q, r, i, PiFamily.DPRIME_L),
    }
    if family not in evaluators:
        raise ValueError(f"Unknown seminorm family {family!r}; expected one of {SWEEP_FAMILIES}.")
    for index in indices:
        for r in rs:
            value = evaluators[family](index, r)
            rows.append(SweepRow(family, index, float(r), None, value.lower, value.upper))
    logger.debug("sweep %s produced %d rows", family, len(rows))
    return rows


def write_sweep_csv(rows: Iterable[SweepRow], stream: TextIO) -> None:
    writer = csv.writer(stream)
    writer.writerow(SWEEP_COLUMNS)
    for row in rows:
        writer.writerow([row.norm_family, row.index, repr(row.r),
                         "" if row.rho is None else repr(row.rho),
                         repr(row.lower), repr(row.upper)])
