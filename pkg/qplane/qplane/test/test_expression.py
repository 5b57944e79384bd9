from fractions import Fraction

import pytest
from qplane.errors import ExpressionSyntaxError, ModeError
from qplane.expression import evaluate, evaluate_coefficient, evaluate_scalar, normalize, \
    parse, to_source, tokenize
from qplane.plane import PlaneElement
from qplane.scalars import GaussianRational, QScalar

Q = QScalar.q_power(1)


def test_tokenize_columns() -> None:
    tokens = tokenize("x * 1/2")
    assert [(t.kind, t.text, t.column) for t in tokens] == [
        ('name', 'x', 1), ('op', '*', 3), ('number', '1/2', 5), ('eof', '', 5)]


@pytest.mark.parametrize('source, expected', [
    ("x*y", PlaneElement.monomial(1, 1, Q)),
    ("x*y - q*y*x", PlaneElement.zero()),
    ("u", PlaneElement.u()),
    ("(x + y)^2", PlaneElement.monomial(0, 2) + PlaneElement.monomial(1, 1, Q + 1)
     + PlaneElement.monomial(2, 0)),
    ("q^-2*y^2*x^2", PlaneElement.monomial(2, 2, QScalar.q_power(-2))),
    ("0.3*x", PlaneElement.monomial(0, 1, Fraction(3, 10))),
    ("-i*y", PlaneElement.monomial(1, 0, GaussianRational(0, -1))),
], ids=['xy', 'relation', 'u', 'binomial', 'negative_q_power', 'decimal', 'imaginary'])
def test_normalize(source, expected) -> None:
    assert normalize(source) == expected


@pytest.mark.parametrize('source, column', [
    ("x*(", 3),
    ("x + $", 5),
    ("x^-1", 3),
    ("(x", 2),
    ("x y", 3),
], ids=['open_paren', 'bad_character', 'negative_exponent', 'unclosed', 'missing_operator'])
def test_syntax_errors(source, column) -> None:
    with pytest.raises(ExpressionSyntaxError) as info:
        parse(source)
    assert info.value.column == column


@pytest.mark.parametrize('source', ["x*(y - 2/3*u)^2", "-q^-1*(x + i)", "y^3*x*q^2"])
def test_to_source_preserves_value(source) -> None:
    node = parse(source)
    assert evaluate(parse(to_source(node))) == evaluate(node)


def test_coefficient_and_scalar() -> None:
    assert evaluate_coefficient(parse("q^2 + 1")) == Q ** 2 + 1
    assert evaluate_scalar(parse("1/2 + 3*i")) == GaussianRational(Fraction(1, 2), 3)
    assert evaluate_coefficient(parse("x - x")) == 0


def test_generators_are_not_scalars() -> None:
    with pytest.raises(ModeError):
        evaluate_coefficient(parse("x"))
    with pytest.raises(ModeError):
        evaluate_scalar(parse("q"))
