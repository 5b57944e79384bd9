from fractions import Fraction

import pytest
from qplane.analysis import EtaStatus, WnInput, coefficient_identity_check, eta12_report, \
    eta_corrected_kernel, eta_entry_oracle, forward_majorization_constant, hnset_check, \
    majorization_report, reverse_majorization_constant, tilde_norm, wn_polynomial, wn_reach
from qplane.errors import BadDim, IndexOutOfRange
from qplane.omega import OmegaUElement
from qplane.representations import RepFamily, RepSpec
from qplane.scalars import QScalar
from qplane.univariate import UPoly

Q = QScalar.q_power(1)


class TestWn:
    def test_constant_doubles(self) -> None:
        """Test that W_0 of a constant c is 2c."""
        assert wn_polynomial(WnInput((UPoly([5]),)), 0) == UPoly([10])

    def test_w1_of_t(self) -> None:
        """Test that W_1 of (0, t) is z^2 q, since h_1(0) = 0."""
        assert wn_polynomial(WnInput((UPoly(), UPoly([0, 1]))), 1) == UPoly.monomial(2, Q)

    def test_derivative_terms(self) -> None:
        """Test that h_0 = t contributes its linear coefficient to W_1."""
        w_1 = wn_polynomial(WnInput((UPoly([0, 1]), UPoly())), 1)
        assert w_1 == UPoly([1])

    def test_evaluated(self) -> None:
        inp = WnInput((UPoly(), UPoly([0, 1])), Fraction(1, 2), 2)
        assert wn_polynomial(inp, 1) == 2

    def test_missing_index(self) -> None:
        with pytest.raises(IndexOutOfRange):
            wn_polynomial(WnInput((UPoly([1]),)), 1)

    def test_reach(self) -> None:
        assert wn_reach([UPoly([1]), UPoly([0, 0, 1])]) == 4
        assert wn_reach([UPoly()]) == 0

    def test_padded(self) -> None:
        assert len(WnInput((UPoly([1]),)).padded(3).h_bar) == 3


class TestEta:
    def test_x_times_u(self) -> None:
        """Test entry 2 of eta(x u): the matrix gives lambda q^2, the same-side W_2 gives 0."""
        spec = RepSpec(RepFamily.PI_LAMBDA, 1, 4)
        row = eta12_report(OmegaUElement.x_u(1, 1), spec, 2).rows[2]
        assert row.oracle == Q ** 2
        assert row.verbatim == 0
        assert row.status is EtaStatus.DISCREPANCY
        assert row.corrected == Q ** 2

    @pytest.mark.parametrize('family', list(RepFamily), ids=lambda f: f.value)
    def test_corrected_kernel_matches_matrix(self, family) -> None:
        a = OmegaUElement.x_u(2, 1, 3) + OmegaUElement.y_u(1, 2, Q) + OmegaUElement.u_power(1, -2)
        spec = RepSpec(family, 2, 10)
        for j in range(6):
            assert eta_corrected_kernel(a, spec, j) == eta_entry_oracle(a, spec, j)

    def test_float_mode(self) -> None:
        a = OmegaUElement.x_u(1, 2) + OmegaUElement.u_power(2, 3)
        report = eta12_report(a, RepSpec(RepFamily.PI_PRIME_MU, 0.5 + 1j, 10, 0.6), 5)
        assert report.corrected_agrees()
        assert report.leading_terms_agree()

    def test_pure_levels_agree(self) -> None:
        a = OmegaUElement.u_power(0, 2) + OmegaUElement.u_power(3, 1)
        report = eta12_report(a, RepSpec(RepFamily.PI_LAMBDA, 3, 8), 4)
        assert report.leading_terms_agree()
        assert not report.discrepancies()

    def test_dimension_check(self) -> None:
        with pytest.raises(BadDim):
            eta12_report(OmegaUElement.x_u(1, 1), RepSpec(RepFamily.PI_LAMBDA, 1, 3), 2)

    def test_json(self) -> None:
        report = eta12_report(OmegaUElement.x_u(1, 1), RepSpec(RepFamily.PI_LAMBDA, 1, 4), 2)
        data = report.to_json()
        assert data["family"] == "pi_lambda"
        assert data["rows"][2]["status"] == "discrepancy"


class TestHnset:
    @pytest.mark.parametrize('n', range(4))
    def test_random_polynomials(self, n) -> None:
        h_bar = (UPoly([1, 0.5j]), UPoly([-0.3, 0.2, 0.9]), UPoly([0.1j]), UPoly([0.7, 0, -0.4]))
        assert hnset_check(h_bar, 1.0, 0.5, n, samples=256).ok

    def test_needs_contraction(self) -> None:
        with pytest.raises(ValueError):
            hnset_check((UPoly([1]),), 1.0, 1.0, 0)

    def test_missing_index(self) -> None:
        with pytest.raises(IndexOutOfRange):
            hnset_check((UPoly([1]),), 1.0, 0.5, 2)


@pytest.mark.parametrize('gap', [1, 2, 5, 30])
@pytest.mark.parametrize('m', [0, 3])
def test_coefficient_identity(gap, m) -> None:
    assert coefficient_identity_check(gap + m, m)


def test_coefficient_identity_range() -> None:
    with pytest.raises(ValueError):
        coefficient_identity_check(2, 2)


def test_tilde_norm() -> None:
    """Test that ((t, 0), (0, t^2)) has norm 2 + 4 at rho = 2."""
    value = tilde_norm([(UPoly([0, 1]), UPoly()), (UPoly(), UPoly([0, 0, 1]))], 2)
    assert value.upper == 6
    assert value.lower == pytest.approx(6)


class TestMajorization:
    @pytest.mark.parametrize('a', [
        OmegaUElement.x_u(1, 1) + OmegaUElement.u_power(0, 1),
        OmegaUElement.x_u(2, 0) + OmegaUElement.x_u(1, 2),
    ], ids=['x_u_plus_u', 'x2_plus_x_u2'])
    def test_both_directions(self, a) -> None:
        """Test that rho = 3 > 5/2 gets the forward bound and every rho the reverse one."""
        points = majorization_report(a, 0.5, [1.0, 2.0, 3.0], samples=64)
        assert [point.rho for point in points] == [1.0, 2.0, 3.0]
        assert [point.forward_ok for point in points[:2]] == [None, None]
        assert points[2].forward_ok is True
        assert points[2].forward_constant == pytest.approx(6)
        assert points[2].seminorm.lower <= 6 * points[2].tilde.upper
        assert all(point.reverse_ok for point in points)
        assert all(point.ratio > 0 and point.reverse_ratio > 0 for point in points)
        assert [point.reverse_radius for point in points] == [2.0, 2.0, 3.0]

    def test_complex_q(self) -> None:
        points = majorization_report(OmegaUElement.x_u(1, 1), 0.3 + 0.4j, [3.0, 4.0], samples=64)
        assert all(point.forward_ok and point.reverse_ok for point in points)

    def test_constants(self) -> None:
        assert forward_majorization_constant(2.5) is None
        assert forward_majorization_constant(3.5) == pytest.approx(3.75)
        assert reverse_majorization_constant(2) == 3
        with pytest.raises(ValueError):
            reverse_majorization_constant(1)
