from fractions import Fraction

import pytest
from hypothesis import given
from qplane.scalars import GaussianRational, NumericScalar, QScalar, as_complex, \
    format_coefficient, qscalar_eval, qscalar_mul, sum_scalars
from qplane.test.strategies import gaussians, qscalars

Q = QScalar.q_power(1)


class TestGaussianRational:
    def test_exact_arithmetic(self) -> None:
        """Test that products and quotients stay exact."""
        z = GaussianRational(Fraction(1, 2), 3)
        assert z * z.inverse() == 1
        assert (z + 1).re == Fraction(3, 2)
        assert GaussianRational(0, 1) ** 2 == -1

    def test_abs2(self) -> None:
        assert GaussianRational(3, 4).abs2() == 25

    def test_text(self) -> None:
        assert str(GaussianRational(Fraction(1, 2), Fraction(3, 4))) == "1/2+3/4*i"
        assert str(GaussianRational(2)) == "2"

    def test_zero_inverse(self) -> None:
        with pytest.raises(ZeroDivisionError):
            GaussianRational(0).inverse()

    @given(gaussians, gaussians)
    def test_multiplication_commutes(self, a, b) -> None:
        assert a * b == b * a


def test_q_times_inverse_is_one() -> None:
    """Test that q * q^-1 == 1."""
    assert Q * QScalar.q_power(-1) == QScalar.one()


def test_substitute_q_squared() -> None:
    """Test that q^2 at q = 1/2 is exactly 1/4."""
    assert (Q ** 2).substitute(Fraction(1, 2)) == Fraction(1, 4)


def test_evaluate_at_complex_q() -> None:
    assert (Q + 1).evaluate(1j) == pytest.approx(1 + 1j)


def test_negative_power_of_monomial() -> None:
    assert QScalar.q_power(2, 3) ** -1 == QScalar.q_power(-2, Fraction(1, 3))


def test_negative_power_of_sum_raises() -> None:
    with pytest.raises(ZeroDivisionError):
        (Q + 1) ** -1


def test_text_sorted_by_exponent() -> None:
    assert str(Q + QScalar.q_power(-3)) == "q^-3+q"


@pytest.mark.parametrize('coeff, expected', [
    (QScalar.one(), ""),
    (-QScalar.one(), "-"),
    (Q + 1, "(1+q)"),
    (QScalar.q_power(2, 3), "3*q^2"),
], ids=['one', 'minus_one', 'sum', 'monomial'])
def test_format_coefficient(coeff, expected) -> None:
    assert format_coefficient(coeff) == expected


def test_invert_q_is_involution() -> None:
    a = QScalar({-1: 2, 3: GaussianRational(0, 1)})
    assert a.invert_q().invert_q() == a
    assert a.invert_q().exponents() == [-3, 1]


def test_constant_value_of_non_constant_raises() -> None:
    with pytest.raises(ValueError):
        Q.constant_value()


def test_numeric_helpers() -> None:
    """Test the float counterparts of QScalar operations."""
    product = qscalar_mul(Q, Q + 1)
    assert product == Q ** 2 + Q
    value = qscalar_eval(product, NumericScalar.coerce(0.5))
    assert abs(value) == pytest.approx(0.75)
    assert as_complex(GaussianRational(1, 2)) == 1 + 2j
    assert sum_scalars([Q, Q, 1]) == QScalar({0: 1, 1: 2})


@given(qscalars, qscalars, qscalars)
def test_distributive(a, b, c) -> None:
    """Test that Laurent polynomial multiplication distributes over addition."""
    assert a * (b + c) == a * b + a * c


@given(qscalars)
def test_json_preserves_value(a) -> None:
    assert QScalar.from_json(a.to_json()) == a
