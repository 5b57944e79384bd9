from fractions import Fraction

from hypothesis import given
from qplane.univariate import UPoly
from qplane.test.strategies import series


def test_trailing_zeros_are_stripped() -> None:
    assert UPoly([1, 2, 0, 0]).degree == 1
    assert UPoly([0, 0]).degree == -1
    assert UPoly([0]) == 0


def test_coefficients() -> None:
    f = UPoly([3, 0, Fraction(1, 2)])
    assert f.coefficient(2) == Fraction(1, 2)
    assert f.coefficient(7) == 0
    assert f.at_zero() == 3
    assert f.items() == [(0, 3), (2, Fraction(1, 2))]


def test_evaluation() -> None:
    assert UPoly([1, 2, 3])(2) == 17
    assert UPoly()(5) == 0


def test_square_of_binomial() -> None:
    assert UPoly([1, 1]) * UPoly([1, 1]) == UPoly([1, 2, 1])


def test_shift_and_truncate() -> None:
    f = UPoly([1, 2, 3])
    assert f.shift(2) == UPoly([0, 0, 1, 2, 3])
    assert f.truncate(2) == UPoly([1, 2])


def test_from_dict_and_monomial() -> None:
    assert UPoly.from_dict({3: 2}) == UPoly.monomial(3, 2)
    assert UPoly.from_dict({}).is_zero()


@given(series, series)
def test_product_degree(f, g) -> None:
    """Test that degrees add under multiplication over a field."""
    product = f * g
    if f.is_zero() or g.is_zero():
        assert product.is_zero()
    else:
        assert product.degree == f.degree + g.degree


@given(series, series)
def test_subtraction_inverts_addition(f, g) -> None:
    assert (f + g) - g == f
