"""
Normal-form arithmetic in the quantum plane R(C^2_q).

Elements are sparse maps from monomials y^k x^l to QScalar coefficients.
Moving x^l to the right past y^k' costs q^(l*k'), which is all the relation
xy = qyx says once words are sorted y-before-x.
"""
from __future__ import annotations

import logging
from fractions import Fraction
from typing import Iterator, Mapping

from .scalars import GaussianRational, QScalar, format_coefficient

logger = logging.getLogger(__name__)

Monomial = tuple[int, int]


def monomial_mul(m1: Monomial, m2: Monomial) -> tuple[QScalar, Monomial]:
    """Return (coefficient, monomial) with y^k x^l * y^k' x^l' = q^(l*k') y^(k+k') x^(l+l')."""
    (k1, l1), (k2, l2) = m1, m2
    return QScalar.q_power(l1 * k2), (k1 + k2, l1 + l2)


def format_monomial(k: int, l: int) -> str:
    """Return the text of y^k x^l, e.g. 'y^2*x'."""
    factors = []
    for letter, power in (('y', k), ('x', l)):
        if power == 1:
            factors.append(letter)
        elif power > 1:
            factors.append(f"{letter}^{power}")
    return "*".join(factors) or "1"


def format_term(coeff: QScalar, monomial_text: str) -> str:
    """Return the text of coeff * monomial, where '1' is the empty monomial."""
    if monomial_text == "1":
        return str(coeff)
    prefix = format_coefficient(coeff)
    if prefix in ("", "-"):
        return prefix + monomial_text
    return f"{prefix}*{monomial_text}"


def join_terms(pieces: list[str]) -> str:
    """Join signed term texts into a sum."""
    if not pieces:
        return "0"
    text = pieces[0]
    for piece in pieces[1:]:
        text += piece if piece.startswith("-") else "+" + piece
    return text


class PlaneElement:
    """
    An element sum(alpha_kl y^k x^l) of R(C^2_q) in normal form.

    Attributes:
    - _terms: a dictionary mapping (k, l) to a nonzero QScalar alpha_kl
    """
    __slots__ = ('_terms', '_hash')
    _terms: dict[Monomial, QScalar]

    def __init__(self, terms: Mapping[Monomial, object] | None = None) -> None:
        """Initialize this PlaneElement from a map (k, l) -> coefficient."""
        cleaned = {}
        for (k, l), coeff in (terms or {}).items():
            if k < 0 or l < 0:
                raise ValueError(f"Negative degree in monomial y^{k} x^{l}.")
            coeff = QScalar.coerce(coeff)
            if coeff:
                cleaned[(int(k), int(l))] = coeff
        self._terms = cleaned
        self._hash = None

    @classmethod
    def zero(cls) -> PlaneElement:
        return cls()

    @classmethod
    def one(cls) -> PlaneElement:
        return cls({(0, 0): 1})

    @classmethod
    def scalar(cls, coeff) -> PlaneElement:
        return cls({(0, 0): coeff})

    @classmethod
    def monomial(cls, k: int, l: int, coeff=1) -> PlaneElement:
        """Return coeff * y^k x^l."""
        return cls({(k, l): coeff})

    @classmethod
    def x(cls) -> PlaneElement:
        return cls.monomial(0, 1)

    @classmethod
    def y(cls) -> PlaneElement:
        return cls.monomial(1, 0)

    @classmethod
    def u(cls) -> PlaneElement:
        """Return u = xy = q*yx."""
        return cls.monomial(1, 1, QScalar.q_power(1))

    @property
    def terms(self) -> tuple[tuple[Monomial, QScalar], ...]:
        """The (monomial, coefficient) pairs sorted by (k, l)."""
        return tuple(sorted(self._terms.items()))

    def coefficient(self, k: int, l: int) -> QScalar:
        return self._terms.get((k, l), QScalar.zero())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self) -> Iterator[tuple[Monomial, QScalar]]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self._terms)

    def max_x_degree(self) -> int:
        return max((l for _, l in self._terms), default=0)

    def max_y_degree(self) -> int:
        return max((k for k, _ in self._terms), default=0)

    def total_degree(self) -> int:
        return max((k + l for k, l in self._terms), default=0)

    def __eq__(self, other) -> bool:
        if isinstance(other, PlaneElement):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction, GaussianRational, QScalar)):
            return self._terms == PlaneElement.scalar(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other) -> PlaneElement:
        if not isinstance(other, PlaneElement):
            other = PlaneElement.scalar(other)
        result = dict(self._terms)
        for monomial, coeff in other._terms.items():
            result[monomial] = result.get(monomial, QScalar.zero()) + coeff
        return PlaneElement(result)

    __radd__ = __add__

    def __neg__(self) -> PlaneElement:
        return PlaneElement({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> PlaneElement:
        if not isinstance(other, PlaneElement):
            other = PlaneElement.scalar(other)
        return self + (-other)

    def __rsub__(self, other) -> PlaneElement:
        return (-self) + other

    def scale(self, factor) -> PlaneElement:
        factor = QScalar.coerce(factor)
        return PlaneElement({m: factor * c for m, c in self._terms.items()})

    def __mul__(self, other) -> PlaneElement:
        if isinstance(other, PlaneElement):
            return plane_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other) -> PlaneElement:
        return self.scale(other)

    def __pow__(self, n: int) -> PlaneElement:
        return plane_pow(self, n)

    def transpose_q(self) -> PlaneElement:
        """Return the image under x <-> y, written in R(C^2_{1/q}).

        The symbol q of the result stands for the new parameter 1/q, so
        coefficients have q inverted and y^k x^l = x^k y^l picks up q^(kl).
        Applying it twice is the identity.
        """
        return PlaneElement({(l, k): c.invert_q() * QScalar.q_power(k * l)
                             for (k, l), c in self._terms.items()})

    def substitute_q(self, q_value) -> dict[Monomial, object]:
        """Return the map (k, l) -> exact coefficient at the rational point q = q_value."""
        return {m: c.substitute(q_value) for m, c in self.terms}

    def evaluate_q(self, q_value) -> dict[Monomial, complex]:
        """Return the map (k, l) -> float coefficient at q = q_value."""
        return {m: c.evaluate(q_value) for m, c in self.terms}

    def to_json(self) -> dict:
        return {"basis": "y^k*x^l",
                "terms": [{"k": k, "l": l, "coeff": c.to_json()} for (k, l), c in self.terms]}

    @classmethod
    def from_json(cls, data: dict) -> PlaneElement:
        return cls({(t["k"], t["l"]): QScalar.from_json(t["coeff"]) for t in data["terms"]})

    def __str__(self) -> str:
        return join_terms([format_term(c, format_monomial(k, l)) for (k, l), c in self.terms])

    def __repr__(self) -> str:
        return f"PlaneElement({self})"


def plane_mul(a: PlaneElement, b: PlaneElement) -> PlaneElement:
    """Return the normal form of a*b."""
    result: dict[Monomial, QScalar] = {}
    for m1, c1 in a.terms:
        for m2, c2 in b.terms:
            coeff, monomial = monomial_mul(m1, m2)
            term = c1 * c2 * coeff
            if monomial in result:
                result[monomial] = result[monomial] + term
            else:
                result[monomial] = term
    return PlaneElement(result)


def plane_pow(a: PlaneElement, n: int) -> PlaneElement:
    """Return a**n by repeated multiplication, with a**0 = 1."""
    if n < 0:
        raise ValueError(f"Negative power {n} of a plane element.")
    result = PlaneElement.one()
    for _ in range(n):
        result = plane_mul(result, a)
    return result


def normalize_word(word: str) -> PlaneElement:
    """Return the normal form of a word in the letters x and y.

    Sorts the word by adjacent swaps, multiplying by q for every xy -> yx
    exchange. It never uses monomial_mul, so it serves as an independent
    oracle for it.
    """
    letters = list(word)
    if any(letter not in "xy" for letter in letters):
        raise ValueError(f"Word {word!r} may only contain x and y.")
    swaps = 0
    changed = True
    while changed:
        changed = False
        for i in range(len(letters) - 1):
            if letters[i] == 'x' and letters[i + 1] == 'y':
                letters[i], letters[i + 1] = 'y', 'x'
                swaps += 1
                changed = True
    k = letters.count('y')
    return PlaneElement.monomial(k, len(letters) - k, QScalar.q_power(swaps))


def sile_identity_check(n: int) -> bool:
    """Return True iff (xy)^n == q^(n(n+1)/2) y^n x^n exactly."""
    if n < 1:
        raise ValueError(f"sile_identity_check needs n >= 1, got {n}.")
    xy = PlaneElement.x() * PlaneElement.y()
    expected = PlaneElement.monomial(n, n, QScalar.q_power(n * (n + 1) // 2))
    holds = plane_pow(xy, n) == expected
    logger.debug("(xy)^%d identity: %s", n, holds)
    return holds


def yx_power_identity_check(n: int) -> bool:
    """Return True iff (yx)^n == q^(n(n-1)/2) y^n x^n exactly."""
    yx = PlaneElement.y() * PlaneElement.x()
    expected = PlaneElement.monomial(n, n, QScalar.q_power(n * (n - 1) // 2))
    return plane_pow(yx, n) == expected


def commutator_identity_check() -> bool:
    """Return True iff xy - yx == (1 - q^-1) xy exactly."""
    x, y = PlaneElement.x(), PlaneElement.y()
    factor = QScalar.one() - QScalar.q_power(-1)
    return x * y - y * x == (x * y).scale(factor)
