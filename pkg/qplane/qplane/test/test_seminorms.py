import io
from fractions import Fraction

import pytest
from hypothesis import given
from mpmath import iv
from qplane.errors import ConfigError
from qplane.omega import OmegaUElement, PairConvention, PairSequence, from_omega, \
    to_beta_gamma, to_omega
from qplane.plane import PlaneElement
from qplane.scalars import GaussianRational
from qplane.seminorms import DosiFamily, PiFamily, SeminormValue, WeightSpec, _split_square, \
    bq12_norm, cauchy_check, cw_norm, dosi_from_beta_gamma, dosi_norms, exact_modulus, \
    majorization_ratios, pi_family_norms, plane_seminorm, reverse_majorization_ratios, \
    seminorm_sweep, sup_norm, weight_submult_check, write_sweep_csv, SWEEP_COLUMNS
from qplane.univariate import UPoly
from qplane.test.strategies import complex_polys, plane_elements, series

HALF = Fraction(1, 2)
Q = GaussianRational(HALF)


class TestSeminormValue:
    def test_exact_modulus(self) -> None:
        """Test that |3+4i| = 5 and |1+i| = sqrt(2)."""
        assert exact_modulus(GaussianRational(3, 4)) == (5, 1)
        assert exact_modulus(GaussianRational(1, 1)) == (1, 2)

    def test_radicals_compare(self) -> None:
        root_two = SeminormValue.from_parts(Fraction(0), {2: Fraction(1)})
        assert SeminormValue.from_fraction(Fraction(141, 100)).at_most(root_two)
        assert not SeminormValue.from_fraction(Fraction(142, 100)).at_most(root_two)
        assert root_two.lower <= 2 ** 0.5 <= root_two.upper

    def test_sum_of_radicals(self) -> None:
        root_two = SeminormValue.from_parts(Fraction(0), {2: Fraction(1)})
        assert (root_two + root_two).same_value(SeminormValue.from_parts(Fraction(0), {2: Fraction(2)}))
        assert (root_two * root_two).same_value(SeminormValue.from_fraction(2))

    def test_empty_interval_rejected(self) -> None:
        with pytest.raises(ValueError):
            SeminormValue.interval(2.0, 1.0)

    @pytest.mark.parametrize('n, expected', [
        (2 * 1009 ** 2, (1009, 2)),
        (1009 ** 2 * 1013, (1009, 1013)),
        (2 ** 5 * 3 ** 4 * 7, (36, 14)),
        (100003 * 100019, (1, 100003 * 100019)),
        (1, (1, 1)),
    ], ids=['large_square_factor', 'square_times_large_prime', 'small_primes', 'two_large_primes', 'one'])
    def test_split_square(self, n, expected) -> None:
        assert _split_square(n) == expected

    def test_split_square_beyond_trial_limit(self) -> None:
        with pytest.raises(ValueError):
            _split_square(100003 ** 3)

    def test_modulus_with_large_square_factor(self) -> None:
        assert exact_modulus(GaussianRational(1009, 1009)) == (1009, 2)

    def test_product_of_radicals(self) -> None:
        """Test that sqrt(6) * sqrt(10) = 2 sqrt(15)."""
        product = SeminormValue.from_parts(Fraction(0), {6: Fraction(1)}) \
            * SeminormValue.from_parts(Fraction(0), {10: Fraction(1)})
        assert product.rational == 0 and product.radicals == ((15, Fraction(2)),)


class TestIntervals:
    def test_from_interval(self) -> None:
        value = SeminormValue.from_interval(iv.mpf([1, 2]))
        assert (value.lower, value.upper) == (1.0, 2.0)

    def test_float_norm_encloses_exact_sum(self) -> None:
        """Test that a float cw norm of many rounded terms encloses the exact rational sum."""
        coeffs = [0.1, -0.7, 0.3, 1 / 3] * 10
        weight = WeightSpec.bs(Fraction(9, 10))
        value = cw_norm(UPoly(coeffs), 1.1, weight)
        exact = sum(abs(Fraction(c)) * Fraction(1.1) ** n * weight.omega(n) for n, c in enumerate(coeffs))
        assert Fraction(value.lower) <= exact <= Fraction(value.upper)

    def test_sup_norm_upper_is_sound(self) -> None:
        coeffs = [0.1, -0.7, 0.3, 1 / 3, 0.2]
        estimate = sup_norm(UPoly(coeffs), 1.1, samples=16)
        exact = sum(abs(Fraction(c)) * Fraction(1.1) ** k for k, c in enumerate(coeffs))
        assert exact <= Fraction(estimate.upper)


class TestWeights:
    @pytest.mark.parametrize('weight', [
        WeightSpec.trivial(), WeightSpec.bs(HALF), WeightSpec.bs(Fraction(9, 10))
    ], ids=['trivial', 'bs_half', 'bs_nine_tenths'])
    def test_submultiplicative(self, weight) -> None:
        assert weight_submult_check(weight, 40)

    def test_custom_violation(self) -> None:
        assert not weight_submult_check(WeightSpec.custom([1, 1, 3]), 1)

    @pytest.mark.parametrize('s', [0, 1, Fraction(3, 2)])
    def test_bs_range(self, s) -> None:
        with pytest.raises(ValueError):
            WeightSpec.bs(s)

    def test_custom_table_too_short(self) -> None:
        with pytest.raises(ValueError):
            WeightSpec.custom([1, 1]).omega(2)


class TestCwNorm:
    def test_trivial_weight(self) -> None:
        assert cw_norm(UPoly([1, 1]), 2, WeightSpec.trivial()).exact == 3

    def test_bs_weight(self) -> None:
        assert cw_norm(UPoly([0, 0, 1]), 2, WeightSpec.bs(HALF)).exact == Fraction(1, 4)

    def test_submultiplicative_example(self) -> None:
        """Test that ||(1+z)^2|| = 33/16 <= ||1+z||^2 = 36/16 for B_(1/2) at r = 1."""
        weight = WeightSpec.bs(HALF)
        square = cw_norm(UPoly([1, 2, 1]), 1, weight)
        bound = cw_norm(UPoly([1, 1]), 1, weight) * cw_norm(UPoly([1, 1]), 1, weight)
        assert square.exact == Fraction(33, 16)
        assert bound.exact == Fraction(36, 16)
        assert square.at_most(bound)

    def test_float_radius_gives_interval(self) -> None:
        value = cw_norm(UPoly([1, 1]), 2.0, WeightSpec.trivial())
        assert not value.is_exact
        assert value.lower <= 3 <= value.upper

    def test_radius_must_be_positive(self) -> None:
        with pytest.raises(ValueError):
            cw_norm(UPoly([1]), 0, WeightSpec.trivial())

    @given(series, series)
    def test_submultiplicative(self, a, b) -> None:
        weight = WeightSpec.bs(HALF)
        assert cw_norm(a * b, 2, weight).at_most(cw_norm(a, 2, weight) * cw_norm(b, 2, weight))

    def test_bq12(self) -> None:
        value = bq12_norm(UPoly([0, 1]), 2.0, 0.25)
        assert value.lower <= 1.0 <= value.upper


class TestSupNorm:
    def test_cube(self) -> None:
        estimate = sup_norm(UPoly([0, 0, 0, 1]), 2)
        assert estimate.upper == 8
        assert estimate.lower == pytest.approx(8)

    def test_zero_polynomial(self) -> None:
        assert sup_norm(UPoly(), 1).upper == 0

    def test_too_few_samples(self) -> None:
        with pytest.raises(ValueError):
            sup_norm(UPoly([1]), 1, samples=4)

    def test_cauchy_example(self) -> None:
        assert cauchy_check(UPoly([1, 3]), 2, 1)

    def test_cauchy_index_range(self) -> None:
        with pytest.raises(ValueError):
            cauchy_check(UPoly([1, 3]), 2, 2)

    def test_cauchy_with_fewer_samples_than_degree(self) -> None:
        """Test that 1 - z^8, which vanishes at the 8th roots of unity, passes with 8 samples."""
        f = UPoly([1] + [0] * 7 + [-1])
        assert cauchy_check(f, 1, 0, samples=8)
        assert cauchy_check(f, 1, 8, samples=8)

    @given(complex_polys)
    def test_bracket_and_cauchy(self, f) -> None:
        estimate = sup_norm(f, 1.5, samples=64)
        assert estimate.lower <= estimate.upper
        for m in range(f.degree + 1):
            assert cauchy_check(f, 1.5, m, samples=64)

    def test_lower_bound_grows_with_doubled_samples(self) -> None:
        f = UPoly([1, -2j, 0.5, 3])
        lowers = [sup_norm(f, 1.2, samples=s).lower for s in (16, 32, 64, 128)]
        assert lowers == sorted(lowers)


def test_plane_seminorm_example() -> None:
    """Test |t u|_(2, 1) at |q| = 1/4: ||t||_2 * |q|^(1/2) = 1."""
    pairs = PairSequence([([], []), ([0, 1], [])], PairConvention.OMEGA_PAIR)
    value = plane_seminorm(pairs, 2, 1, 0.25)
    assert value.lower == pytest.approx(1.0)
    assert value.lower <= 1.0 <= value.upper


def test_plane_seminorm_needs_contraction() -> None:
    pairs = PairSequence([([1], [1])], PairConvention.OMEGA_PAIR)
    with pytest.raises(ValueError):
        plane_seminorm(pairs, 1, 1, 1.0)


class TestDosi:
    def test_prime_family(self) -> None:
        a = PlaneElement.monomial(2, 3)
        assert dosi_norms(a, Q, 2, 3, DosiFamily.PRIME_L).exact == 4
        assert dosi_norms(a, Q, 2, 2, DosiFamily.PRIME_L).exact == 0

    def test_u_at_half(self) -> None:
        """Test that u = q y x has ||u||'_(1,1) = 1/2 at q = 1/2."""
        assert dosi_norms(PlaneElement.u(), Q, 1, 1, DosiFamily.PRIME_L).exact == HALF

    def test_dprime_family(self) -> None:
        a = PlaneElement.monomial(1, 0, 3) + PlaneElement.monomial(1, 2, -1)
        assert dosi_norms(a, Q, 2, 1, DosiFamily.DPRIME_K).exact == 7

    def test_float_q(self) -> None:
        value = dosi_norms(PlaneElement.u(), 0.5, 1.0, 1, DosiFamily.PRIME_L)
        assert value.lower <= 0.5 <= value.upper

    @pytest.mark.parametrize('which', list(DosiFamily), ids=lambda w: w.value)
    @given(a=plane_elements)
    def test_beta_gamma_path_agrees(self, which, a) -> None:
        c = to_beta_gamma(to_omega(a))
        for index in range(a.total_degree() + 1):
            direct = dosi_norms(a, Q, 2, index, which)
            assert direct.same_value(dosi_from_beta_gamma(c, Q, 2, index, which))


class TestPiFamily:
    def test_prime(self) -> None:
        a = from_omega(OmegaUElement.x_u(2, 1))
        assert pi_family_norms(a, Q, 3, 1, PiFamily.PRIME_K).exact == Fraction(9, 4)

    def test_dprime(self) -> None:
        a = from_omega(OmegaUElement.y_u(3, 2))
        assert pi_family_norms(a, Q, 3, 2, PiFamily.DPRIME_L).exact == 27

    def test_dprime_counts_pure_level(self) -> None:
        a = from_omega(OmegaUElement.u_power(1, 5))
        assert pi_family_norms(a, Q, 3, 1, PiFamily.DPRIME_L).exact == 5

    @pytest.mark.parametrize('r', [HALF, Fraction(2)], ids=['half', 'two'])
    @given(a=plane_elements)
    def test_pi_family_dominates_dosi(self, r, a) -> None:
        for row in majorization_ratios(a, Q, r, range(a.total_degree() + 1)):
            assert row.ratio <= 1 + 1e-12

    @pytest.mark.parametrize('q', [Q, 0.6 + 0.3j], ids=['half', 'complex_float'])
    @pytest.mark.parametrize('r', [HALF, Fraction(2)], ids=['half', 'two'])
    @given(a=plane_elements)
    def test_dosi_dominates_pi_family(self, q, r, a) -> None:
        for row in reverse_majorization_ratios(a, q, r, range(a.total_degree() + 1)):
            assert row.norm.at_most(row.bound, 1e-12)
            assert row.ratio <= 1 + 1e-12

    def test_reverse_bound_is_tight_for_a_monomial(self) -> None:
        """Test that x^2 u (one beta at level 1) meets |a|'_(2,1) = ||a||''_(2,1) / (|q| 2) at q = 1/2."""
        a = from_omega(OmegaUElement.x_u(2, 1))
        rows = reverse_majorization_ratios(a, Q, Fraction(2), [1])
        prime = next(row for row in rows if row.family is PiFamily.PRIME_K)
        assert prime.norm.exact == 4
        assert prime.bound.exact == 4

    def test_reverse_gaussian_q_has_radical_scale(self) -> None:
        """Test that |q| = sqrt(2)/2 at q = (1+i)/2 enters the level-1 scale exactly."""
        q = GaussianRational(HALF, HALF)
        a = from_omega(OmegaUElement.x_u(1, 1))
        rows = reverse_majorization_ratios(a, q, 1, [1])
        assert all(row.norm.at_most(row.bound) for row in rows)
        prime = next(row for row in rows if row.family is PiFamily.PRIME_K)
        assert prime.norm.same_value(prime.bound)


class TestSweep:
    def test_rows(self) -> None:
        rows = seminorm_sweep("dosi_prime", PlaneElement.monomial(2, 3), Q, [1, 2], indices=[3])
        assert [(row.index, row.r) for row in rows] == [(3, 1.0), (3, 2.0)]
        assert [row.lower for row in rows] == pytest.approx([1.0, 4.0])
        assert all(row.lower <= row.upper for row in rows)

    def test_plane_rows_carry_rho(self) -> None:
        rows = seminorm_sweep("plane", PlaneElement.u(), 0.5, [1], rhos=[1, 2], samples=32)
        assert [row.rho for row in rows] == [1.0, 2.0]

    @pytest.mark.parametrize('family, weight, expected', [
        ("cw", None, 5),
        ("cw", WeightSpec.bs(HALF), 4),
        ("bq12", None, 3 + 2 ** 0.5),
    ], ids=['cw_trivial', 'cw_bs_half', 'bq12'])
    def test_u_series_families(self, family, weight, expected) -> None:
        """Test 3 + u at r = 2 and q = 1/2."""
        a = PlaneElement.monomial(0, 0, 3) + PlaneElement.u()
        rows = seminorm_sweep(family, a, Q, [Fraction(2)], weight=weight)
        assert [(row.norm_family, row.index, row.r, row.rho) for row in rows] == [(family, 0, 2.0, None)]
        assert rows[0].lower <= expected <= rows[0].upper
        assert rows[0].lower == pytest.approx(expected)

    def test_u_series_float_q(self) -> None:
        rows = seminorm_sweep("cw", PlaneElement.u(), 0.5 + 0.5j, [2.0])
        assert rows[0].lower <= 2 <= rows[0].upper

    @pytest.mark.parametrize('family', ["cw", "bq12"])
    def test_u_series_needs_pure_u(self, family) -> None:
        with pytest.raises(ConfigError):
            seminorm_sweep(family, PlaneElement.x(), Q, [1])

    def test_unknown_family(self) -> None:
        with pytest.raises(ValueError):
            seminorm_sweep("nope", PlaneElement.one(), Q, [1])

    def test_csv(self) -> None:
        stream = io.StringIO()
        write_sweep_csv(seminorm_sweep("pi_prime", PlaneElement.one(), Q, [1]), stream)
        lines = stream.getvalue().splitlines()
        assert lines[0] == ",".join(SWEEP_COLUMNS)
        assert lines[1].startswith("pi_prime,0,1.0,,")
