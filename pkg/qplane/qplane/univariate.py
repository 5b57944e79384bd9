"""
One-variable polynomials over any scalar type.

UPoly stores a dense coefficient tuple (constant term first) and works for
int, Fraction, GaussianRational, QScalar and complex coefficients alike; it
only relies on +, * and comparison with 0. It carries the f_n, g_n of a pair
sequence, the h_n fed into W_n, and truncated u-series.
"""
from __future__ import annotations

from typing import Callable, Iterable


def _is_zero(value) -> bool:
    return value == 0


class UPoly:
    """
    A polynomial c_0 + c_1 t + ... + c_d t^d.

    Attributes:
    - coeffs: the coefficients, constant term first, with no trailing zeros
    """
    __slots__ = ('coeffs',)
    coeffs: tuple

    def __init__(self, coeffs: Iterable = ()) -> None:
        """Initialize this UPoly from its coefficient list."""
        coeffs = list(coeffs)
        while coeffs and _is_zero(coeffs[-1]):
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> UPoly:
        """Return coeff * t^degree."""
        return cls([0] * degree + [coeff])

    @classmethod
    def from_dict(cls, terms: dict[int, object]) -> UPoly:
        """Return the polynomial with the given degree -> coefficient map."""
        if not terms:
            return cls()
        coeffs = [0] * (max(terms) + 1)
        for degree, coeff in terms.items():
            coeffs[degree] = coeff
        return cls(coeffs)

    @property
    def degree(self) -> int:
        """The degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, k: int):
        """Return the coefficient of t^k, i.e. f^(k)(0)/k!."""
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def at_zero(self):
        return self.coefficient(0)

    def items(self) -> list[tuple[int, object]]:
        """Return the (degree, coefficient) pairs with nonzero coefficient."""
        return [(k, c) for k, c in enumerate(self.coeffs) if not _is_zero(c)]

    def __call__(self, z):
        """Evaluate at z with Horner's rule."""
        if not self.coeffs:
            return 0 * z
        result = self.coeffs[-1]
        for coeff in reversed(self.coeffs[:-1]):
            result = result * z + coeff
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, UPoly):
            return len(self.coeffs) == len(other.coeffs) and \
                all(a == b for a, b in zip(self.coeffs, other.coeffs))
        if _is_zero(other):
            return not self.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other) -> UPoly:
        if not isinstance(other, UPoly):
            other = UPoly([other])
        size = max(len(self.coeffs), len(other.coeffs))
        return UPoly(self.coefficient(k) + other.coefficient(k) for k in range(size))

    __radd__ = __add__

    def __neg__(self) -> UPoly:
        return UPoly(-c for c in self.coeffs)

    def __sub__(self, other) -> UPoly:
        if not isinstance(other, UPoly):
            other = UPoly([other])
        return self + (-other)

    def __rsub__(self, other) -> UPoly:
        return (-self) + other

    def __mul__(self, other) -> UPoly:
        if not isinstance(other, UPoly):
            return self.scale(other)
        if not self.coeffs or not other.coeffs:
            return UPoly()
        result = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if _is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                if not _is_zero(b):
                    result[i + j] = result[i + j] + a * b
        return UPoly(result)

    def __rmul__(self, other) -> UPoly:
        return self.scale(other)

    def scale(self, factor) -> UPoly:
        return UPoly(factor * c for c in self.coeffs)

    def shift(self, n: int) -> UPoly:
        """Return t^n * self."""
        if not self.coeffs:
            return self
        return UPoly([0] * n + list(self.coeffs))

    def truncate(self, length: int) -> UPoly:
        """Return the terms of degree < length."""
        return UPoly(self.coeffs[:length])

    def map(self, fn: Callable) -> UPoly:
        """Return the polynomial with fn applied to every coefficient."""
        return UPoly(fn(c) for c in self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        pieces = []
        for k, c in self.items():
            text = str(c)
            if k == 0:
                pieces.append(text)
            elif text == "1":
                pieces.append("t" if k == 1 else f"t^{k}")
            else:
                pieces.append(f"({text})*" + ("t" if k == 1 else f"t^{k}"))
        return " + ".join(pieces)

    def __repr__(self) -> str:
        return f"UPoly({list(self.coeffs)!r})"
