"""
Exact and numeric scalars.

GaussianRational is the exact coefficient field Q(i); QScalar is a Laurent
polynomial in the formal parameter q over Q(i); NumericScalar is a finite
complex float used once q has been given a concrete value.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Union

from .errors import ModeError, ZeroQ

RationalLike = Union[int, Fraction]


def _as_fraction(value: RationalLike) -> Fraction:
    """Return value as a Fraction, rejecting floats and complex values."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)) and not isinstance(value, bool):
        return Fraction(value)
    raise ModeError(f"Expected an exact rational, got {value!r}.")


class GaussianRational:
    """
    An element re + im*i of Q(i).

    Attributes:
    - re: the real part
    - im: the imaginary part
    """
    __slots__ = ('re', 'im')
    re: Fraction
    im: Fraction

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0) -> None:
        """Initialize this GaussianRational as re + im*i."""
        object.__setattr__(self, 're', _as_fraction(re))
        object.__setattr__(self, 'im', _as_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def _of(cls, re: Fraction, im: Fraction) -> GaussianRational:
        """Return re + im*i from parts that are already Fractions."""
        result = object.__new__(cls)
        object.__setattr__(result, 're', re)
        object.__setattr__(result, 'im', im)
        return result

    @classmethod
    def coerce(cls, value) -> GaussianRational:
        """Return value as a GaussianRational.

        Accepts ints, Fractions and GaussianRationals.
        """
        if isinstance(value, GaussianRational):
            return value
        return cls(_as_fraction(value))

    def is_real(self) -> bool:
        """Return True iff the imaginary part is zero."""
        return self.im == 0

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Return |self|^2, which is always rational."""
        return self.re * self.re + self.im * self.im

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, (QScalar, float, complex)):
                return NotImplemented
            try:
                other = GaussianRational.coerce(other)
            except ModeError:
                return NotImplemented
        return GaussianRational._of(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self) -> GaussianRational:
        return GaussianRational._of(-self.re, -self.im)

    def __sub__(self, other):
        if isinstance(other, (QScalar, float, complex)):
            return NotImplemented
        try:
            other = GaussianRational.coerce(other)
        except ModeError:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, (QScalar, float, complex)):
                return NotImplemented
            try:
                other = GaussianRational.coerce(other)
            except ModeError:
                return NotImplemented
        if not other.im:
            return GaussianRational._of(self.re * other.re, self.im * other.re)
        if not self.im:
            return GaussianRational._of(self.re * other.re, self.re * other.im)
        return GaussianRational._of(self.re * other.re - self.im * other.im,
                                    self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def inverse(self) -> GaussianRational:
        """Return 1/self.

        Raises ZeroDivisionError on zero.
        """
        norm = self.abs2()
        if norm == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        return GaussianRational(self.re / norm, -self.im / norm)

    def __truediv__(self, other):
        if isinstance(other, (QScalar, float, complex)):
            return NotImplemented
        try:
            other = GaussianRational.coerce(other)
        except ModeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> GaussianRational:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = GaussianRational(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.im == 1:
            imag = "i"
        elif self.im == -1:
            imag = "-i"
        else:
            imag = f"{self.im}*i"
        if self.re == 0:
            return imag
        sign = "" if imag.startswith("-") else "+"
        return f"{self.re}{sign}{imag}"

    def __repr__(self) -> str:
        return f"GaussianRational({self})"


ONE = GaussianRational(1)


class QScalar:
    """
    A Laurent polynomial in q with GaussianRational coefficients.

    The empty polynomial is zero. Zero coefficients are never stored, so two
    equal scalars always have equal term maps.

    Attributes:
    - _terms: a dictionary mapping exponents of q to nonzero coefficients
    """
    __slots__ = ('_terms', '_hash')
    _terms: dict[int, GaussianRational]

    def __init__(self, terms: Mapping[int, object] | None = None) -> None:
        """Initialize this QScalar from a map exponent -> coefficient."""
        cleaned = {}
        for exponent, coeff in (terms or {}).items():
            coeff = GaussianRational.coerce(coeff)
            if coeff:
                cleaned[int(exponent)] = coeff
        self._terms = cleaned
        self._hash = None

    @classmethod
    def _from_terms(cls, terms: dict) -> QScalar:
        """Return the QScalar of GaussianRational <terms>, dropping zero coefficients."""
        result = object.__new__(cls)
        result._terms = {e: c for e, c in terms.items() if c}
        result._hash = None
        return result

    @classmethod
    def zero(cls) -> QScalar:
        return _ZERO

    @classmethod
    def one(cls) -> QScalar:
        return _ONE

    @classmethod
    def q_power(cls, exponent: int, coeff=1) -> QScalar:
        """Return coeff * q^exponent."""
        return cls({exponent: coeff})

    @classmethod
    def coerce(cls, value) -> QScalar:
        """Return value as a QScalar.

        Accepts QScalars, GaussianRationals, Fractions and ints.
        """
        if isinstance(value, QScalar):
            return value
        return cls({0: GaussianRational.coerce(value)})

    @property
    def terms(self) -> tuple[tuple[int, GaussianRational], ...]:
        """The (exponent, coefficient) pairs, sorted by exponent."""
        return tuple(sorted(self._terms.items()))

    def coefficient(self, exponent: int) -> GaussianRational:
        return self._terms.get(exponent, GaussianRational(0))

    def exponents(self) -> list[int]:
        return sorted(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        """Return True iff self is c*q^e for a single exponent e."""
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {0}

    def constant_value(self) -> GaussianRational:
        """Return the value of a constant scalar.

        Raises ModeError if self depends on q.
        """
        if not self.is_constant():
            raise ModeError(f"{self} depends on q.")
        return self.coefficient(0)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, QScalar):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self._terms == QScalar.coerce(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def _coerce_other(self, other):
        if isinstance(other, (float, complex)):
            return None
        try:
            return QScalar.coerce(other)
        except ModeError:
            return None

    def __add__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        result = dict(self._terms)
        for exponent, coeff in other._terms.items():
            result[exponent] = result[exponent] + coeff if exponent in result else coeff
        return QScalar._from_terms(result)

    __radd__ = __add__

    def __neg__(self) -> QScalar:
        return QScalar._from_terms({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        if not self._terms or not other._terms:
            return _ZERO
        if len(other._terms) == 1:
            (e2, c2), = other._terms.items()
            return QScalar._from_terms({e1 + e2: c1 * c2 for e1, c1 in self._terms.items()})
        result: dict[int, GaussianRational] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exponent = e1 + e2
                if exponent in result:
                    result[exponent] = result[exponent] + c1 * c2
                else:
                    result[exponent] = c1 * c2
        return QScalar._from_terms(result)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> QScalar:
        """Return self**exponent.

        Negative exponents are allowed only for monomials c*q^e.
        """
        if exponent < 0:
            if not self.is_monomial():
                raise ZeroDivisionError(f"{self} is not invertible in the Laurent ring.")
            (e, c), = self._terms.items()
            return QScalar({e * exponent: c ** exponent})
        result = _ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def invert_q(self) -> QScalar:
        """Return self with q replaced by 1/q."""
        return QScalar({-e: c for e, c in self._terms.items()})

    def substitute(self, q_value) -> GaussianRational:
        """Return the exact value of self at the rational point q = q_value.

        Raises ZeroQ if q_value is zero and self has a negative exponent.
        """
        q_value = GaussianRational.coerce(q_value)
        if not q_value and any(e < 0 for e in self._terms):
            raise ZeroQ(f"Cannot substitute q = 0 into {self}.")
        total = GaussianRational(0)
        for exponent, coeff in self._terms.items():
            total = total + coeff * (q_value ** exponent if exponent else ONE)
        return total

    def evaluate(self, q_value) -> complex:
        """Return the float value of self at q = q_value."""
        return complex(qscalar_eval(self, NumericScalar.coerce(q_value)))

    def to_json(self) -> list[list]:
        """Return [[exponent, re, im], ...] with rationals as text."""
        return [[e, str(c.re), str(c.im)] for e, c in self.terms]

    @classmethod
    def from_json(cls, data: list) -> QScalar:
        return cls({int(e): GaussianRational(Fraction(re), Fraction(im))
                    for e, re, im in data})

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for exponent, coeff in self.terms:
            pieces.append(_format_term(coeff, exponent))
        text = pieces[0]
        for piece in pieces[1:]:
            text += piece if piece.startswith("-") else "+" + piece
        return text

    def __repr__(self) -> str:
        return f"QScalar({self})"


def _format_q(exponent: int) -> str:
    return "q" if exponent == 1 else f"q^{exponent}"


def _format_term(coeff: GaussianRational, exponent: int) -> str:
    """Return the text form of coeff * q^exponent."""
    if exponent == 0:
        return str(coeff)
    if coeff == 1:
        return _format_q(exponent)
    if coeff == -1:
        return "-" + _format_q(exponent)
    text = str(coeff)
    if not coeff.is_real() and coeff.re != 0:
        text = f"({text})"
    return f"{text}*{_format_q(exponent)}"


def format_coefficient(coeff: QScalar) -> str:
    """Return the text of coeff as a factor in a product.

    Sums are parenthesised; a unit coefficient gives the empty string and
    -1 gives "-".
    """
    if coeff == 1:
        return ""
    if coeff == -1:
        return "-"
    text = str(coeff)
    if len(coeff.terms) > 1:
        return f"({text})"
    (exponent, c), = coeff.terms
    if not c.is_real() and c.re != 0 and exponent == 0:
        return f"({text})"
    return text


_ZERO = QScalar()
_ONE = QScalar({0: 1})


@dataclass(frozen=True)
class NumericScalar:
    """A finite complex number used as a concrete value of q, λ or μ."""
    re: float
    im: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise ValueError(f"NumericScalar must be finite, got {self.re}+{self.im}j.")

    @classmethod
    def coerce(cls, value) -> NumericScalar:
        """Return value as a NumericScalar."""
        if isinstance(value, NumericScalar):
            return value
        if isinstance(value, (GaussianRational, QScalar)):
            value = complex(value.constant_value() if isinstance(value, QScalar) else value)
        value = complex(value)
        return cls(value.real, value.imag)

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)

    def __complex__(self) -> complex:
        return self.value

    def __abs__(self) -> float:
        return abs(self.value)


def qscalar_mul(a: QScalar, b: QScalar) -> QScalar:
    """Return the exact product a*b."""
    return QScalar.coerce(a) * QScalar.coerce(b)


def qscalar_eval(a: QScalar, q_value: NumericScalar) -> NumericScalar:
    """Return sum(c * q_value**e) over the terms of a.

    Raises ZeroQ if q_value is 0 and a has a negative exponent.
    """
    a = QScalar.coerce(a)
    q = NumericScalar.coerce(q_value).value
    if q == 0 and any(e < 0 for e in a.exponents()):
        raise ZeroQ(f"Cannot evaluate {a} at q = 0.")
    total = 0j
    for exponent, coeff in a.terms:
        total += complex(coeff) * (q ** exponent)
    return NumericScalar.coerce(total)


def as_complex(value) -> complex:
    """Return a constant scalar of either mode as a complex float."""
    if isinstance(value, QScalar):
        return complex(value.constant_value())
    return complex(value)


def sum_scalars(values: Iterable, start=None):
    """Return the sum of values, starting from start (QScalar zero by default)."""
    total = QScalar.zero() if start is None else start
    for value in values:
        total = total + value
    return total
