"""
Property suites for the quantum plane kit.

Each suite runs a family of checks under a runtime budget and returns one
CheckResult per check. Randomized suites draw from a numpy Generator seeded
from the run's root seed, so a report can be reproduced from the seed it
embeds.
"""
from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Iterator

import numpy as np
from timeout_decorator.timeout_decorator import TimeoutError

from .analysis import (EtaStatus, WnInput, coefficient_identity_check, eta12_report,
                       hnset_check, majorization_report, wn_polynomial)
from .config import Mode, RunConfig
from .errors import NotNilpotent
from .omega import (OmegaUElement, PairConvention, beta_gamma_expand, from_omega, from_pairs,
                    omega_mul, omega_mul_direct, to_beta_gamma, to_omega, to_pairs)
from .plane import (PlaneElement, commutator_identity_check, normalize_word, plane_pow,
                    sile_identity_check, yx_power_identity_check)
from .representations import (RepFamily, RepSpec, TruncatedOperator, commutation_check,
                              eta_vector, growth_profile, homomorphism_check,
                              nilpotent_series_substitute,
                              upper_triangular_truncation)
from .scalars import GaussianRational, QScalar
from .seminorms import (DosiFamily, WeightSpec, cw_norm, dosi_from_beta_gamma,
                        dosi_from_beta_gamma_printed, dosi_norms, majorization_ratios,
                        reverse_majorization_ratios, weight_submult_check)
from .timeout import bound_timeout
from .univariate import UPoly

logger = logging.getLogger(__name__)


class CheckStatus(Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    DISCREPANCY_RECORDED = "DISCREPANCY_RECORDED"


def _text(value) -> str | None:
    if value is None:
        return None
    if isinstance(value, float):
        return repr(value)
    return str(value)


@dataclass
class CheckResult:
    """
    The outcome of one check.

    Attributes:
    - name: '<suite>.<check>[<params>]', unique within a report
    - params: the parameters the check ran with
    - lhs: the computed side, as text
    - rhs: the expected side, as text
    - status: PASS, FAIL or DISCREPANCY_RECORDED
    - details: a free-form note
    - seed: the suite seed the check drew its inputs from
    - elapsed: seconds spent on the check
    """
    name: str
    params: dict
    lhs: str | None
    rhs: str | None
    status: CheckStatus
    details: str = ""
    seed: int | None = None
    elapsed: float = 0.0

    @property
    def suite(self) -> str:
        return self.name.split('.', 1)[0]

    def to_json(self) -> dict:
        return {"name": self.name, "params": {k: _text(v) for k, v in self.params.items()},
                "lhs": self.lhs, "rhs": self.rhs, "status": self.status.value,
                "details": self.details, "seed": self.seed, "elapsed": self.elapsed}


class VerificationReport:
    """
    The results of one or more suites.

    Attributes:
    - _results: a dictionary mapping check names to their results, in the
                order the checks ran
    """
    _results: dict[str, CheckResult]

    def __init__(self, results: Iterable[CheckResult] = ()) -> None:
        """Initialize this VerificationReport."""
        self._results = {}
        for result in results:
            self.add(result)

    def add(self, result: CheckResult) -> None:
        if result.name in self._results:
            raise ValueError(f"Duplicate check name {result.name!r}.")
        self._results[result.name] = result

    def get_suite_names(self) -> set[str]:
        """Return the names of the suites that produced these results."""
        return {result.suite for result in self._results.values()}

    def filter(self, statuses: set[CheckStatus] = None,
               exclusions: set[str] = None) -> set[str]:
        """Return the names of checks whose status is in statuses and whose
        name is not in exclusions. No statuses means every status.
        """
        exclusions = exclusions if exclusions else set()
        return {name for name, result in self._results.items()
                if name not in exclusions and
                (not statuses or result.status in statuses)}

    def failed(self) -> list[CheckResult]:
        return [r for r in self if r.status is CheckStatus.FAIL]

    def discrepancies(self) -> list[CheckResult]:
        return [r for r in self if r.status is CheckStatus.DISCREPANCY_RECORDED]

    def counts(self) -> dict[str, int]:
        counts = {status.value: 0 for status in CheckStatus}
        for result in self:
            counts[result.status.value] += 1
        return counts

    def exit_code(self) -> int:
        """Return 1 if any check failed, else 0. Recorded discrepancies do not fail a run."""
        return 1 if self.failed() else 0

    def to_json(self) -> dict:
        return {"counts": self.counts(), "results": [r.to_json() for r in self]}

    def __getitem__(self, item: str) -> CheckResult:
        """Return the result of the check named item."""
        return self._results[item]

    def __iter__(self) -> Iterator[CheckResult]:
        return iter(list(self._results.values()))

    def __len__(self) -> int:
        return len(self._results)


@dataclass
class _Recorder:
    """Collects the results of one suite run, timing each check."""
    suite: str
    seed: int
    results: list[CheckResult] = field(default_factory=list)
    _start: float = field(default_factory=time.perf_counter)

    def __call__(self, check: str, params: dict, lhs, rhs, status, details: str = "") -> None:
        now = time.perf_counter()
        if isinstance(status, (bool, np.bool_)):
            status = CheckStatus.PASS if status else CheckStatus.FAIL
        if not isinstance(status, CheckStatus):
            raise TypeError(f"Check {check} has status {status!r}; expected a bool or CheckStatus.")
        label = ",".join(f"{k}={_text(v)}" for k, v in params.items())
        name = f"{self.suite}.{check}[{label}]" if label else f"{self.suite}.{check}"
        self.results.append(CheckResult(name, dict(params), _text(lhs), _text(rhs), status,
                                        details, self.seed, now - self._start))
        self._start = now


# Random inputs


def random_gaussian(rng: np.random.Generator, bound: int = 3) -> GaussianRational:
    re, im = rng.integers(-bound, bound + 1, size=2)
    return GaussianRational(int(re), int(im))


def random_qscalar(rng: np.random.Generator) -> QScalar:
    """Return a nonzero Laurent polynomial with one or two q-powers in [-2, 2]."""
    terms = {}
    for _ in range(int(rng.integers(1, 3))):
        coeff = random_gaussian(rng)
        if coeff:
            terms[int(rng.integers(-2, 3))] = coeff
    result = QScalar(terms)
    return result if not result.is_zero() else QScalar.one()


def random_plane_element(rng: np.random.Generator, max_degree: int = 6,
                         max_terms: int = 6) -> PlaneElement:
    """Return an element with total degree at most max_degree."""
    terms = {}
    for _ in range(int(rng.integers(1, max_terms + 1))):
        k = int(rng.integers(0, max_degree + 1))
        l = int(rng.integers(0, max_degree - k + 1))
        terms[(k, l)] = random_qscalar(rng)
    return PlaneElement(terms)


def random_omega_element(rng: np.random.Generator, max_level: int = 3, max_index: int = 3,
                         max_terms: int = 5) -> OmegaUElement:
    pure, x_part, y_part = {}, {}, {}
    for _ in range(int(rng.integers(1, max_terms + 1))):
        kind = int(rng.integers(0, 3))
        j = int(rng.integers(0, max_level + 1))
        i = int(rng.integers(1, max_index + 1))
        coeff = random_qscalar(rng)
        if kind == 0:
            pure[j] = coeff
        elif kind == 1:
            x_part[(i, j)] = coeff
        else:
            y_part[(i, j)] = coeff
    return OmegaUElement(pure, x_part, y_part)


def random_series(rng: np.random.Generator, max_length: int = 6) -> UPoly:
    return UPoly([random_gaussian(rng) for _ in range(int(rng.integers(1, max_length + 1)))])


def random_complex_poly(rng: np.random.Generator, max_degree: int) -> UPoly:
    size = int(rng.integers(1, max_degree + 2))
    values = rng.uniform(-1, 1, size) + 1j * rng.uniform(-1, 1, size)
    return UPoly(complex(v) for v in values)


def random_parameter(rng: np.random.Generator) -> GaussianRational:
    """Return a nonzero rational lambda or mu."""
    return GaussianRational(Fraction(int(rng.integers(1, 5)), int(rng.integers(1, 4))))


def _contraction_q(config: RunConfig, default) -> object:
    """Return the configured q when |q| <= 1, else <default>."""
    return config.q_value() if config.q_abs() <= 1 else default


# Suites


def suite_sile(rng: np.random.Generator, config: RunConfig, record: _Recorder) -> None:
    xy = PlaneElement.x() * PlaneElement.y()
    yx = PlaneElement.y() * PlaneElement.x()
    for n in range(1, 33):
        record("xy_power", {"n": n}, plane_pow(xy, n),
               PlaneElement.monomial(n, n, QScalar.q_power(n * (n + 1) // 2)),
               sile_identity_check(n))
        record("yx_power", {"n": n}, plane_pow(yx, n),
               PlaneElement.monomial(n, n, QScalar.q_power(n * (n - 1) // 2)),
               yx_power_identity_check(n))


def suite_commutator(rng: np.random.Generator, config: RunConfig, record: _Recorder) -> None:
    x, y = PlaneElement.x(), PlaneElement.y()
    record("xy_minus_yx", {}, x * y - y * x,
           (x * y).scale(QScalar.one() - QScalar.q_power(-1)), commutator_identity_check())
    letters = {'x': x, 'y': y}
    for sample in range(100):
        word = "".join(rng.choice(['x', 'y'], size=int(rng.integers(1, 11))))
        product = PlaneElement.one()
        for letter in word:
            product = product * letters[letter]
        expected = normalize_word(word)
        record("word", {"sample": sample, "word": word}, product, expected, product == expected)


def suite_representations(rng: np.random.Generator, config: RunConfig, record: _Recorder) -> None:
    q = None if config.mode is Mode.EXACT else config.q_value()
    for dim in (2, 8, 32, 64):
        record("commutation", {"N": dim}, None, None, commutation_check(dim, q))
    for sample in range(100):
        family = RepFamily.PI_LAMBDA if sample % 2 == 0 else RepFamily.PI_PRIME_MU
        spec = RepSpec(family, random_parameter(rng), config.trunc, q)
        a, b = random_plane_element(rng), random_plane_element(rng)
        record("homomorphism", {"sample": sample, "family": family.value}, a, b,
               homomorphism_check(spec, a, b))
    for family in RepFamily:
        param = random_parameter(rng)
        spec = RepSpec(family, param, max(config.trunc, 13), q)
        for n in range(13):
            vector = eta_vector(spec, PlaneElement.u() ** n)
            expected = spec.scalar(spec.scalar(param) ** n * spec.q_power(n * (n + 1) // 2))
            others = [v for j, v in enumerate(vector) if j != n]
            if spec.exact:
                holds = vector[n] == expected and not any(others)
            else:
                holds = bool(abs(vector[n] - expected) <= 1e-12 * max(1.0, abs(expected))
                             and max((abs(v) for v in others), default=0.0) <= 1e-12)
            record("u_power_vector", {"family": family.value, "n": n}, vector[n], expected, holds)


def suite_eta(rng: np.random.Generator, config: RunConfig, record: _Recorder) -> None:
    q = None if config.mode is Mode.EXACT else config.q_value()
    jmax = 10
    for sample in range(50):
        a = random_omega_element(rng)
        for family in RepFamily:
            spec = RepSpec(family, random_parameter(rng), jmax + a.max_level() + 1, q)
            report = eta12_report(a, spec, jmax)
            params = {"sample": sample, "family": family.value}
            record("corrected_kernel", params, a, None, report.corrected_agrees())
            record("leading_terms", params, a, None, report.leading_terms_agree())
            rows = report.discrepancies()
            record("verbatim_formula", params, a, None,
                   CheckStatus.DISCREPANCY_RECORDED if rows else CheckStatus.PASS,
                   f"entries differing: {[row.j for row in rows]}" if rows else "")
    spec = RepSpec(RepFamily.PI_LAMBDA, 1, 4, q)
    row = eta12_report(OmegaUElement.x_u(1, 1), spec, 2).rows[2]
    record("x_times_u", {"j": 2}, row.oracle, row.verbatim,
           CheckStatus.DISCREPANCY_RECORDED if row.status is EtaStatus.DISCREPANCY
           else CheckStatus.PASS,
           f"mixed reading gives {row.mixed}, corrected kernel gives {row.corrected}")


def suite_hnset(rng: np.random.Generator, config: RunConfig, record: _Recorder) -> None:
    for sample in range(200):
        count = int(rng.integers(1, 10))
        h_bar = tuple(UPoly(rng.uniform(-1, 1, size=int(rng.integers(1, 10)))
                            + 1j * rng.uniform(-1, 1, size=1)[0])
                      for _ in range(count))
        n = int(rng.integers(0, count))
        rho = float(rng.choice([0.5, 1.0, 3.0]))
        q_abs = float(rng.choice([0.3, 0.7]))
        result = hnset_check(h_bar, rho, q_abs, n, samples=config.samples)
        record("inequality", {"sample": sample, "n": n, "rho": rho, "q_abs": q_abs},
               result.lhs_lower, result.rhs_lower, result.ok,
               f"rhs upper bound {result.rhs_upper!r}")
    # W_1 of (h_0, h_1) = (0, t) is z^2 q: h_1(0) vanishes.
    inp = WnInput((UPoly(), UPoly([0, 1])), None)
    w_1 = wn_polynomial(inp, 1)
    expected = UPoly.monomial(2, QScalar.q_power(1))
    record("w1_example", {}, w_1, expected, w_1 == expected)


def suite_coefficients(rng: np.random.Generator, config: RunConfig, record: _Recorder) -> None:
    for gap in range(1, 31):
        for m in (0, 3):
            record("geometric", {"n": gap + m, "m": m}, None, None,
                   coefficient_identity_check(gap + m, m))


def suite_weights(rng: np.random.Generator, config: RunConfig, record: _Recorder) -> None:
    for s in (Fraction(1, 2), Fraction(9, 10)):
        record("bs_submultiplicative", {"s": s, "N": 100}, None, None,
               weight_submult_check(WeightSpec.bs(s), 100))
    record("trivial_submultiplicative", {"N": 100}, None, None,
           weight_submult_check(WeightSpec.trivial(), 100))
    record("custom_violation_detected", {"table": "1,1,3"}, None, None,
           not weight_submult_check(WeightSpec.custom([1, 1, 3]), 1))
    weight = WeightSpec.bs(Fraction(1, 2))
    for sample in range(100):
        a, b = random_series(rng), random_series(rng)
        r = Fraction(int(rng.integers(1, 5)), 2)
        product = cw_norm(a * b, r, weight)
        bound = cw_norm(a, r, weight) * cw_norm(b, r, weight)
        record("cw_submultiplicative", {"sample": sample, "r": r}, product, bound,
               product.at_most(bound))


def suite_dosi(rng: np.random.Generator, config: RunConfig, record: _Recorder) -> None:
    q = config.q_value()
    r = Fraction(2) if config.mode is Mode.EXACT else 2.0
    for sample in range(50):
        a = random_plane_element(rng)
        c = to_beta_gamma(to_omega(a))
        agree, printed_differs = True, []
        for index in range(a.total_degree() + 1):
            for which in DosiFamily:
                direct = dosi_norms(a, q, r, index, which)
                if not direct.same_value(dosi_from_beta_gamma(c, q, r, index, which)):
                    agree = False
                if not direct.same_value(dosi_from_beta_gamma_printed(c, q, r, index, which)):
                    printed_differs.append((which.value, index))
        params = {"sample": sample}
        record("beta_gamma_paths", params, a, None, agree)
        record("printed_formula", params, a, None,
               CheckStatus.DISCREPANCY_RECORDED if printed_differs else CheckStatus.PASS,
               f"differs at {printed_differs}" if printed_differs else "")


def suite_roundtrip(rng: np.random.Generator, config: RunConfig, record: _Recorder) -> None:
    for sample in range(500):
        a = random_plane_element(rng)
        b = random_omega_element(rng)
        broken = []
        if from_omega(to_omega(a)) != a:
            broken.append("plane->omega->plane")
        if to_omega(from_omega(b)) != b:
            broken.append("omega->plane->omega")
        if beta_gamma_expand(to_beta_gamma(to_omega(a))) != a:
            broken.append("beta_gamma_expand")
        if a.transpose_q().transpose_q() != a:
            broken.append("transpose_q")
        for convention in PairConvention:
            pairs = to_pairs(b, convention)
            if not pairs.check_invariant() or from_pairs(pairs) != b:
                broken.append(f"pairs:{convention.value}")
        if sample < 200:
            other = random_omega_element(rng)
            if omega_mul(b, other) != omega_mul_direct(b, other):
                broken.append("omega_mul")
        record("element", {"sample": sample}, a, b, not broken, ", ".join(broken))


def suite_nilpotent(rng: np.random.Generator, config: RunConfig, record: _Recorder) -> None:
    for p in range(1, 17):
        param = random_parameter(rng)
        e_op, d_op = upper_triangular_truncation(RepSpec(RepFamily.PI_LAMBDA, param), p)
        b = e_op @ d_op
        corner = (b ** (p - 1)).entries[0, p - 1]
        expected = QScalar.coerce(param) ** (p - 1) * QScalar.q_power(p * (p - 1) // 2)
        holds = (b ** p).is_zero() and (p == 1 or corner == expected)
        record("ed_power", {"p": p, "lambda": param}, corner, expected, holds)
    p = 6
    e_op, d_op = upper_triangular_truncation(RepSpec(RepFamily.PI_LAMBDA, 1), p)
    b = e_op @ d_op
    for sample in range(20):
        series = random_series(rng, max_length=10)
        substituted = nilpotent_series_substitute(series, b, p)
        direct = TruncatedOperator.zeros(p, True)
        for n, coeff in series.items():
            if n < p:
                direct = direct + (b ** n).scale(coeff)
        record("series", {"sample": sample, "p": p}, series, None, substituted == direct)
    geometric = nilpotent_series_substitute(UPoly([1] * p), e_op, p)
    ones = TruncatedOperator.zeros(p, True)
    for i in range(p):
        ones.entries[i, i:] = QScalar.one()
    record("geometric_series", {"p": p}, None, None, geometric == ones)
    try:
        nilpotent_series_substitute(UPoly([1, 1]), d_op, p)
        raised = False
    except NotNilpotent:
        raised = True
    record("not_nilpotent_detected", {"p": p}, None, None, raised)


def suite_growth(rng: np.random.Generator, config: RunConfig, record: _Recorder) -> None:
    dim = max(config.trunc, 32)
    for q_abs in (0.3, 0.9):
        for family in RepFamily:
            rows = growth_profile(RepSpec(family, 1, dim, q_abs), 20)
            worst = max(row.estimate / row.reference for row in rows)
            record("profile", {"q_abs": q_abs, "family": family.value}, worst, 1.0,
                   all(row.within_bound() for row in rows), "max estimate/reference")


def suite_majorization(rng: np.random.Generator, config: RunConfig, record: _Recorder) -> None:
    exact = config.mode is Mode.EXACT
    q = _contraction_q(config, GaussianRational(Fraction(1, 2)) if exact else 0.5)
    for sample in range(20):
        a = random_plane_element(rng, max_degree=4)
        for r in ((Fraction(1, 2), Fraction(2)) if exact else (0.5, 2.0)):
            rows = majorization_ratios(a, q, r, range(a.total_degree() + 1))
            worst = max(row.ratio for row in rows)
            record("pi_dominates_dosi", {"sample": sample, "r": r}, worst, 1.0,
                   worst <= 1 + 1e-12)
            rows = reverse_majorization_ratios(a, q, r, range(a.total_degree() + 1))
            worst = max(row.ratio for row in rows)
            record("dosi_dominates_pi", {"sample": sample, "r": r}, worst, 1.0,
                   all(row.norm.at_most(row.bound, 1e-12) for row in rows))
    q_float = complex(q) if abs(complex(q)) < 1 else 0.5
    for sample in range(5):
        a = random_omega_element(rng, max_level=2, max_index=2)
        for point in majorization_report(a, q_float, (1.0, 2.0, 3.0), config.samples):
            params = {"sample": sample, "rho": point.rho}
            if point.forward_ok is None:
                record("w_tilde_ratio", params, point.ratio, None,
                       math.isfinite(point.ratio) and point.ratio >= 0,
                       "rho <= 5/2: ratio reported, no constant asserted")
            else:
                record("w_tilde_forward", params, point.seminorm.lower,
                       point.forward_constant * point.tilde.upper, point.forward_ok,
                       f"ratio {point.ratio}")
            record("w_tilde_reverse", params, point.tilde.lower,
                   point.reverse_constant * point.reverse_seminorm.upper, point.reverse_ok,
                   f"R={point.reverse_radius}, ratio {point.reverse_ratio}")


SUITES: dict[str, Callable[[np.random.Generator, RunConfig, _Recorder], None]] = {
    "sile": suite_sile,
    "commutator": suite_commutator,
    "representations": suite_representations,
    "eta": suite_eta,
    "hnset": suite_hnset,
    "coefficients": suite_coefficients,
    "weights": suite_weights,
    "dosi": suite_dosi,
    "roundtrip": suite_roundtrip,
    "nilpotent": suite_nilpotent,
    "growth": suite_growth,
    "majorization": suite_majorization,
}

SUITE_BUDGETS = {"sile": 1, "representations": 30}
DEFAULT_BUDGET = 60


def suite_names(suite: str) -> list[str]:
    """Return the suites selected by <suite>, expanding 'all'."""
    if suite == "all":
        return list(SUITES)
    if suite not in SUITES:
        raise ValueError(f"Unknown suite {suite!r}; expected 'all' or one of {sorted(SUITES)}.")
    return [suite]


def suite_seed(root_seed: int, suite: str) -> int:
    """Return the seed of <suite>, fanned out from the root seed by suite position."""
    children = np.random.SeedSequence(root_seed).spawn(len(SUITES))
    return int(children[list(SUITES).index(suite)].generate_state(1)[0])


def _run_unbounded(suite: str, config: RunConfig, seed: int) -> list[CheckResult]:
    record = _Recorder(suite, seed)
    SUITES[suite](np.random.default_rng(seed), config, record)
    return record.results


def run_suite(suite: str, config: RunConfig, budget: float | None = None) -> list[CheckResult]:
    """Return the results of one suite, or a single FAIL if it exceeds its budget."""
    seed = suite_seed(config.seed, suite)
    budget = SUITE_BUDGETS.get(suite, DEFAULT_BUDGET) if budget is None else budget
    started = time.perf_counter()
    try:
        results = bound_timeout(budget)(_run_unbounded)(suite, config, seed)
    except TimeoutError as e:
        results = [CheckResult(f"{suite}.budget", {"seconds": budget}, None, None,
                               CheckStatus.FAIL, str(e), seed, time.perf_counter() - started)]
    for result in results:
        logger.info("%s %s %s", result.status.value, result.name, result.details)
    return results


def run_verification(config: RunConfig, suite: str = "all") -> VerificationReport:
    """Return the report of the selected suites."""
    report = VerificationReport()
    for name in suite_names(suite):
        for result in run_suite(name, config):
            report.add(result)
    logger.info("verification %s: %s", suite, report.counts())
    return report
