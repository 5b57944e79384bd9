from fractions import Fraction

import pytest
from hypothesis import given, settings
from qplane.omega import BetaGammaForm, OmegaUElement, PairConvention, PairSequence, \
    beta_gamma_expand, from_beta_gamma, from_omega, from_pairs, omega_mul, omega_mul_direct, \
    to_beta_gamma, to_omega, to_pairs
from qplane.plane import PlaneElement
from qplane.scalars import QScalar
from qplane.univariate import UPoly
from qplane.test.strategies import omega_elements, plane_elements

Q = QScalar.q_power(1)


@pytest.mark.parametrize('element, expected', [
    (OmegaUElement.x_u(1, 1), PlaneElement.monomial(1, 2, Q ** 2)),
    (OmegaUElement.y_u(1, 1), PlaneElement.monomial(2, 1, Q)),
    (OmegaUElement.u_power(1), PlaneElement.u()),
    (OmegaUElement.u_power(2), PlaneElement.monomial(2, 2, Q ** 3)),
], ids=['x_u', 'y_u', 'u', 'u_squared'])
def test_from_omega(element, expected) -> None:
    assert from_omega(element) == expected


def test_to_omega_pure_level() -> None:
    """Test that y^2 x^2 is q^-3 u^2."""
    assert to_omega(PlaneElement.monomial(2, 2)) == OmegaUElement.u_power(2, QScalar.q_power(-3))


def test_to_omega_mixed_monomial() -> None:
    assert to_omega(PlaneElement.monomial(1, 2)) == OmegaUElement.x_u(1, 1, QScalar.q_power(-2))


def test_text() -> None:
    assert str(to_omega(PlaneElement.monomial(2, 2))) == "q^-3*u^2"


def test_bad_index_rejected() -> None:
    with pytest.raises(ValueError):
        OmegaUElement(x_part={(0, 1): 1})


def test_levels() -> None:
    b = OmegaUElement.x_u(2, 3) + OmegaUElement.u_power(1)
    assert b.levels() == [1, 3]
    assert b.max_level() == 3


class TestPairs:
    def test_rphixy_halves_constants(self) -> None:
        """Test the pairs of 3u^2 + x^2 u^2."""
        b = OmegaUElement.u_power(2, 3) + OmegaUElement.x_u(2, 2)
        pairs = to_pairs(b, PairConvention.RPHIXY)
        f_2, g_2 = pairs[2]
        assert len(pairs) == 3
        assert f_2 == UPoly([Fraction(3, 2), 0, 1])
        assert g_2 == UPoly([Fraction(3, 2)])
        assert pairs.check_invariant()

    def test_omega_pair_keeps_constants(self) -> None:
        b = OmegaUElement.u_power(0, 5) + OmegaUElement.y_u(1, 0)
        f_0, g_0 = to_pairs(b, PairConvention.OMEGA_PAIR)[0]
        assert f_0 == UPoly([5])
        assert g_0 == UPoly([5, 1])

    def test_missing_level_is_zero(self) -> None:
        pairs = PairSequence([([1], [1])], PairConvention.OMEGA_PAIR)
        assert pairs[4] == (UPoly(), UPoly())

    def test_evaluate(self) -> None:
        pairs = to_pairs(OmegaUElement.x_u(1, 0, Q), PairConvention.OMEGA_PAIR).evaluate(0.5)
        assert pairs[0][0].coefficient(1) == pytest.approx(0.5)

    @pytest.mark.parametrize('convention', list(PairConvention), ids=lambda c: c.value)
    @given(b=omega_elements)
    def test_from_pairs_inverts_to_pairs(self, convention, b) -> None:
        assert from_pairs(to_pairs(b, convention)) == b


class TestBetaGamma:
    def test_x_u(self) -> None:
        """Test that x u = q u x gives beta_11 = q."""
        assert to_beta_gamma(OmegaUElement.x_u(1, 1)) == BetaGammaForm({(1, 1): Q})

    def test_expand_u_squared(self) -> None:
        form = to_beta_gamma(OmegaUElement.u_power(2))
        assert beta_gamma_expand(form) == PlaneElement.monomial(2, 2, Q ** 3)

    def test_expand_y_part(self) -> None:
        form = to_beta_gamma(OmegaUElement.y_u(2, 1))
        assert beta_gamma_expand(form) == PlaneElement.monomial(3, 1, Q)

    def test_gamma_zero_index_rejected(self) -> None:
        with pytest.raises(ValueError):
            BetaGammaForm(gamma={(0, 1): 1})

    def test_gamma_at_zero_is_beta(self) -> None:
        form = BetaGammaForm({(0, 2): 7})
        assert form.gamma_at(0, 2) == 7

    @given(b=omega_elements)
    def test_from_beta_gamma_inverts(self, b) -> None:
        assert from_beta_gamma(to_beta_gamma(b)) == b

    @given(a=plane_elements)
    def test_expand_matches_plane(self, a) -> None:
        assert beta_gamma_expand(to_beta_gamma(to_omega(a))) == a


@given(plane_elements)
def test_plane_round_trip(a) -> None:
    assert from_omega(to_omega(a)) == a


@given(omega_elements)
def test_omega_round_trip(b) -> None:
    assert to_omega(from_omega(b)) == b


@settings(max_examples=50)
@given(omega_elements, omega_elements)
def test_direct_product_agrees(a, b) -> None:
    """Test that the level relations multiply like the plane does."""
    assert omega_mul_direct(a, b) == omega_mul(a, b)


def test_u_is_central_up_to_q() -> None:
    x, u = OmegaUElement.x_u(1, 0), OmegaUElement.u_power(1)
    assert x * u == (u * x).scale(Q)


def test_json_preserves_value() -> None:
    b = OmegaUElement.x_u(2, 1, Q) + OmegaUElement.y_u(1, 3, 2) + OmegaUElement.u_power(0, -1)
    assert OmegaUElement.from_json(b.to_json()) == b
