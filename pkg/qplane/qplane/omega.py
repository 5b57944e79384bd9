"""
The R(Omega) (x) C[u] picture of the quantum plane.

An OmegaUElement is written in the basis {u^j, x^i u^j, y^i u^j} (i >= 1),
with u = xy. This module converts between that basis and the y^k x^l normal
form, the pair sequences (f_n, g_n) used for seminorms and the eta maps, and
the beta/gamma coefficients of the u^j x^i ordering.
"""
from __future__ import annotations

import logging
from enum import Enum
from fractions import Fraction
from typing import Iterator, Mapping

from .plane import PlaneElement, format_term, join_terms
from .scalars import QScalar
from .univariate import UPoly

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)


def _clean(terms: Mapping | None) -> dict:
    cleaned = {}
    for key, coeff in (terms or {}).items():
        coeff = QScalar.coerce(coeff)
        if coeff:
            cleaned[key] = coeff
    return cleaned


def _format_level(letter: str, i: int, j: int) -> str:
    factors = []
    if i:
        factors.append(letter if i == 1 else f"{letter}^{i}")
    if j:
        factors.append("u" if j == 1 else f"u^{j}")
    return "*".join(factors) or "1"


class OmegaUElement:
    """
    An element of R(Omega) (x) C[u].

    Attributes:
    - pure_u: a dictionary mapping j to the coefficient of u^j
    - x_part: a dictionary mapping (i, j), i >= 1, to the coefficient of x^i u^j
    - y_part: a dictionary mapping (i, j), i >= 1, to the coefficient of y^i u^j
    """
    __slots__ = ('pure_u', 'x_part', 'y_part')
    pure_u: dict[int, QScalar]
    x_part: dict[tuple[int, int], QScalar]
    y_part: dict[tuple[int, int], QScalar]

    def __init__(self, pure_u: Mapping | None = None,
                 x_part: Mapping | None = None,
                 y_part: Mapping | None = None) -> None:
        """Initialize this OmegaUElement from its three coefficient maps."""
        self.pure_u = _clean(pure_u)
        self.x_part = _clean(x_part)
        self.y_part = _clean(y_part)
        for i, j in list(self.x_part) + list(self.y_part):
            if i < 1 or j < 0:
                raise ValueError(f"Bad index ({i}, {j}): x/y parts need i >= 1 and j >= 0.")

    @classmethod
    def unit(cls) -> OmegaUElement:
        return cls(pure_u={0: 1})

    @classmethod
    def u_power(cls, j: int, coeff=1) -> OmegaUElement:
        return cls(pure_u={j: coeff})

    @classmethod
    def x_u(cls, i: int, j: int, coeff=1) -> OmegaUElement:
        """Return coeff * x^i u^j (or coeff * u^j when i == 0)."""
        if i == 0:
            return cls.u_power(j, coeff)
        return cls(x_part={(i, j): coeff})

    @classmethod
    def y_u(cls, i: int, j: int, coeff=1) -> OmegaUElement:
        """Return coeff * y^i u^j (or coeff * u^j when i == 0)."""
        if i == 0:
            return cls.u_power(j, coeff)
        return cls(y_part={(i, j): coeff})

    def basis_terms(self) -> list[tuple[str, int, int, QScalar]]:
        """Return (letter, i, j, coeff) for every term, letter '' for pure u^j.

        Sorted by level j, then pure, x and y terms, then i.
        """
        terms = [('', 0, j, c) for j, c in self.pure_u.items()]
        terms += [('x', i, j, c) for (i, j), c in self.x_part.items()]
        terms += [('y', i, j, c) for (i, j), c in self.y_part.items()]
        order = {'': 0, 'x': 1, 'y': 2}
        return sorted(terms, key=lambda t: (t[2], order[t[0]], t[1]))

    def levels(self) -> list[int]:
        """Return the sorted u-levels carrying a nonzero term."""
        return sorted({t[2] for t in self.basis_terms()})

    def max_level(self) -> int:
        return max(self.levels(), default=0)

    def is_zero(self) -> bool:
        return not (self.pure_u or self.x_part or self.y_part)

    def __eq__(self, other) -> bool:
        if not isinstance(other, OmegaUElement):
            return NotImplemented
        return self.pure_u == other.pure_u and self.x_part == other.x_part \
            and self.y_part == other.y_part

    def __hash__(self) -> int:
        return hash((frozenset(self.pure_u.items()), frozenset(self.x_part.items()),
                     frozenset(self.y_part.items())))

    def __add__(self, other: OmegaUElement) -> OmegaUElement:
        def merge(first: dict, second: dict) -> dict:
            result = dict(first)
            for key, coeff in second.items():
                result[key] = result.get(key, QScalar.zero()) + coeff
            return result
        return OmegaUElement(merge(self.pure_u, other.pure_u),
                             merge(self.x_part, other.x_part),
                             merge(self.y_part, other.y_part))

    def scale(self, factor) -> OmegaUElement:
        factor = QScalar.coerce(factor)
        return OmegaUElement({k: factor * c for k, c in self.pure_u.items()},
                             {k: factor * c for k, c in self.x_part.items()},
                             {k: factor * c for k, c in self.y_part.items()})

    def __neg__(self) -> OmegaUElement:
        return self.scale(-1)

    def __sub__(self, other: OmegaUElement) -> OmegaUElement:
        return self + (-other)

    def __mul__(self, other: OmegaUElement) -> OmegaUElement:
        return omega_mul(self, other)

    def __iter__(self) -> Iterator[tuple[str, int, int, QScalar]]:
        return iter(self.basis_terms())

    def to_json(self) -> dict:
        return {"basis": "x^i*u^j|y^i*u^j|u^j",
                "terms": [{"letter": letter, "i": i, "j": j, "coeff": c.to_json()}
                          for letter, i, j, c in self.basis_terms()]}

    @classmethod
    def from_json(cls, data: dict) -> OmegaUElement:
        result = cls()
        for term in data["terms"]:
            coeff = QScalar.from_json(term["coeff"])
            if term["letter"] == 'y':
                result = result + cls.y_u(term["i"], term["j"], coeff)
            else:
                result = result + cls.x_u(term["i"], term["j"], coeff)
        return result

    def __str__(self) -> str:
        return join_terms([format_term(c, _format_level(letter or 'x', i, j))
                           for letter, i, j, c in self.basis_terms()])

    def __repr__(self) -> str:
        return f"OmegaUElement({self})"


def to_omega(a: PlaneElement) -> OmegaUElement:
    """Return a in the {u^j, x^i u^j, y^i u^j} basis.

    With m = min(k, l), y^k x^l = q^(-m(m+1)/2) y^(k-m) u^m x^(l-m), and
    u^j x^i = q^(-ij) x^i u^j.
    """
    pure, x_part, y_part = {}, {}, {}

    def accumulate(target: dict, key, coeff: QScalar) -> None:
        target[key] = target.get(key, QScalar.zero()) + coeff

    for (k, l), coeff in a.terms:
        m = min(k, l)
        scaled = coeff * QScalar.q_power(-(m * (m + 1) // 2))
        if l > k:
            i = l - m
            accumulate(x_part, (i, m), scaled * QScalar.q_power(-i * m))
        elif k > l:
            accumulate(y_part, (k - m, m), scaled)
        else:
            accumulate(pure, m, scaled)
    return OmegaUElement(pure, x_part, y_part)


def from_omega(b: OmegaUElement) -> PlaneElement:
    """Return b in the y^k x^l normal form.

    x^i u^j = q^(ij + j(j+1)/2) y^j x^(i+j) and y^i u^j = q^(j(j+1)/2) y^(i+j) x^j.
    """
    result: dict[tuple[int, int], QScalar] = {}

    def accumulate(key, coeff: QScalar) -> None:
        result[key] = result.get(key, QScalar.zero()) + coeff

    for letter, i, j, coeff in b.basis_terms():
        sile = QScalar.q_power(j * (j + 1) // 2)
        if letter == 'x':
            accumulate((j, i + j), coeff * sile * QScalar.q_power(i * j))
        elif letter == 'y':
            accumulate((i + j, j), coeff * sile)
        else:
            accumulate((j, j), coeff * sile)
    return PlaneElement(result)


def omega_mul(a: OmegaUElement, b: OmegaUElement) -> OmegaUElement:
    """Return a*b, computed through the plane normal form."""
    return to_omega(from_omega(a) * from_omega(b))


def _basis_product(left: tuple[str, int, int], right: tuple[str, int, int]) \
        -> tuple[QScalar, tuple[str, int, int]]:
    """Return the product of two basis elements from the level relations alone.

    Uses x u = q u x, u y = q y u, and for m = min(a, b):
    x^a y^b = q^(mb - m(m+1)/2) x^(a-m) y^(b-m) u^m,
    y^a x^b = q^-(mb - m(m-1)/2) y^(a-m) x^(b-m) u^m.
    """
    (l1, a, j), (l2, b, k) = left, right
    if b == 0:
        return QScalar.one(), (l1, a, j + k)
    # u^j L2^b = q^(-+jb) L2^b u^j
    exponent = -j * b if l2 == 'x' else j * b
    if a == 0 or l1 == l2:
        return QScalar.q_power(exponent), (l2 if a == 0 else l1, a + b, j + k)
    m = min(a, b)
    if l1 == 'x':
        exponent += m * b - m * (m + 1) // 2
    else:
        exponent -= m * b - m * (m - 1) // 2
    if a > m:
        letter, power = l1, a - m
    else:
        letter, power = l2, b - m
    return QScalar.q_power(exponent), (letter, power, j + k + m)


def omega_mul_direct(a: OmegaUElement, b: OmegaUElement) -> OmegaUElement:
    """Return a*b using only the level-wise relations, without the plane basis."""
    result = OmegaUElement()
    for l1, i1, j1, c1 in a.basis_terms():
        for l2, i2, j2, c2 in b.basis_terms():
            coeff, (letter, i, j) = _basis_product((l1 or 'x', i1, j1), (l2 or 'x', i2, j2))
            term = c1 * c2 * coeff
            if letter == 'y':
                result = result + OmegaUElement.y_u(i, j, term)
            else:
                result = result + OmegaUElement.x_u(i, j, term)
    return result


class PairConvention(Enum):
    """How a pair (f_n, g_n) at level n denotes an element.

    OMEGA_PAIR: f_n(X) + g_n(Y) - f_n(0), the point of O(Omega).
    RPHIXY: Phi_x(f_n) + Phi_y(g_n), the constant split in halves.
    """
    OMEGA_PAIR = "omega_pair"
    RPHIXY = "rphixy"


class PairSequence:
    """
    A finite sequence of polynomial pairs (f_n, g_n), n = 0, 1, ...

    Attributes:
    - entries: the pairs (f_n, g_n) indexed by the u-level n
    - convention: how each pair denotes an element
    """
    entries: tuple[tuple[UPoly, UPoly], ...]
    convention: PairConvention

    def __init__(self, entries, convention: PairConvention) -> None:
        """Initialize this PairSequence."""
        self.entries = tuple((f if isinstance(f, UPoly) else UPoly(f),
                              g if isinstance(g, UPoly) else UPoly(g))
                             for f, g in entries)
        self.convention = convention

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, n: int) -> tuple[UPoly, UPoly]:
        if n >= len(self.entries):
            return UPoly(), UPoly()
        return self.entries[n]

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PairSequence):
            return NotImplemented
        return self.convention == other.convention and self.entries == other.entries

    def f_bar(self) -> list[UPoly]:
        return [f for f, _ in self.entries]

    def g_bar(self) -> list[UPoly]:
        return [g for _, g in self.entries]

    def check_invariant(self) -> bool:
        """Return True iff f_n(0) == g_n(0) at every level."""
        return all(f.at_zero() == g.at_zero() for f, g in self.entries)

    def evaluate(self, q_value) -> PairSequence:
        """Return the sequence with every QScalar coefficient evaluated at q = q_value."""
        def at_q(c):
            return c.evaluate(q_value) if isinstance(c, QScalar) else complex(c)
        return PairSequence([(f.map(at_q), g.map(at_q)) for f, g in self.entries],
                            self.convention)

    def to_json(self) -> dict:
        def poly(p: UPoly) -> list:
            return [QScalar.coerce(c).to_json() if not isinstance(c, complex)
                    else [c.real, c.imag] for c in p.coeffs]
        return {"convention": self.convention.value,
                "entries": [{"n": n, "f": poly(f), "g": poly(g)}
                            for n, (f, g) in enumerate(self.entries)]}

    def __str__(self) -> str:
        return "; ".join(f"n={n}: f=({f}), g=({g})" for n, (f, g) in enumerate(self.entries))


def to_pairs(b: OmegaUElement, convention: PairConvention) -> PairSequence:
    """Return the pair sequence (f_n, g_n) of b.

    OMEGA_PAIR puts the u^n coefficient c_n into both constants, RPHIXY puts
    c_n/2 into each.
    """
    size = b.max_level() + 1 if not b.is_zero() else 0
    share = QScalar.one() if convention is PairConvention.OMEGA_PAIR else QScalar.coerce(HALF)
    entries = []
    for n in range(size):
        constant = b.pure_u.get(n, QScalar.zero()) * share
        f_terms = {i: c for (i, j), c in b.x_part.items() if j == n}
        g_terms = {i: c for (i, j), c in b.y_part.items() if j == n}
        f_terms[0] = constant
        g_terms[0] = constant
        entries.append((UPoly.from_dict(f_terms), UPoly.from_dict(g_terms)))
    pairs = PairSequence(entries, convention)
    logger.debug("to_pairs(%s, %s) -> %s", b, convention.value, pairs)
    return pairs


def from_pairs(pairs: PairSequence) -> OmegaUElement:
    """Return the element denoted by a pair sequence."""
    pure, x_part, y_part = {}, {}, {}
    for n, (f, g) in enumerate(pairs.entries):
        if pairs.convention is PairConvention.OMEGA_PAIR:
            pure[n] = QScalar.coerce(f.at_zero())
        else:
            pure[n] = QScalar.coerce(f.at_zero()) + QScalar.coerce(g.at_zero())
        for i, c in f.items():
            if i:
                x_part[(i, n)] = c
        for i, c in g.items():
            if i:
                y_part[(i, n)] = c
    return OmegaUElement(pure, x_part, y_part)


class BetaGammaForm:
    """
    Coefficients of a = sum_j (sum_{i>=0} beta_ij u^j x^i + sum_{i>0} gamma_ij y^i u^j).

    Attributes:
    - beta: a dictionary mapping (i, j), i >= 0, to beta_ij
    - gamma: a dictionary mapping (i, j), i >= 1, to gamma_ij
    """
    beta: dict[tuple[int, int], QScalar]
    gamma: dict[tuple[int, int], QScalar]

    def __init__(self, beta: Mapping | None = None, gamma: Mapping | None = None) -> None:
        """Initialize this BetaGammaForm."""
        self.beta = _clean(beta)
        self.gamma = _clean(gamma)
        if any(i < 1 for i, _ in self.gamma):
            raise ValueError("gamma_ij needs i >= 1; gamma_0j is beta_0j.")

    def beta_at(self, i: int, j: int) -> QScalar:
        return self.beta.get((i, j), QScalar.zero())

    def gamma_at(self, i: int, j: int) -> QScalar:
        """Return gamma_ij, with gamma_0j := beta_0j."""
        if i == 0:
            return self.beta_at(0, j)
        return self.gamma.get((i, j), QScalar.zero())

    def __eq__(self, other) -> bool:
        if not isinstance(other, BetaGammaForm):
            return NotImplemented
        return self.beta == other.beta and self.gamma == other.gamma

    def to_json(self) -> dict:
        return {"beta": [{"i": i, "j": j, "coeff": c.to_json()} for (i, j), c in sorted(self.beta.items())],
                "gamma": [{"i": i, "j": j, "coeff": c.to_json()} for (i, j), c in sorted(self.gamma.items())]}

    def __str__(self) -> str:
        pieces = [f"beta[{i},{j}]={c}" for (i, j), c in sorted(self.beta.items())]
        pieces += [f"gamma[{i},{j}]={c}" for (i, j), c in sorted(self.gamma.items())]
        return ", ".join(pieces) or "0"


def to_beta_gamma(b: OmegaUElement) -> BetaGammaForm:
    """Return the beta/gamma form of b, using x^i u^j = q^(ij) u^j x^i."""
    beta = {(0, j): c for j, c in b.pure_u.items()}
    for (i, j), c in b.x_part.items():
        beta[(i, j)] = c * QScalar.q_power(i * j)
    return BetaGammaForm(beta, dict(b.y_part))


def from_beta_gamma(c: BetaGammaForm) -> OmegaUElement:
    """Return the OmegaUElement with the given beta/gamma form."""
    pure = {j: v for (i, j), v in c.beta.items() if i == 0}
    x_part = {(i, j): v * QScalar.q_power(-i * j) for (i, j), v in c.beta.items() if i > 0}
    return OmegaUElement(pure, x_part, dict(c.gamma))


def beta_gamma_expand(c: BetaGammaForm) -> PlaneElement:
    """Return sum beta_ij q^(j(j+1)/2) y^j x^(i+j) + sum gamma_ij q^(j(j+1)/2) y^(i+j) x^j."""
    result = PlaneElement()
    for (i, j), coeff in c.beta.items():
        result = result + PlaneElement.monomial(j, i + j, coeff * QScalar.q_power(j * (j + 1) // 2))
    for (i, j), coeff in c.gamma.items():
        result = result + PlaneElement.monomial(i + j, j, coeff * QScalar.q_power(j * (j + 1) // 2))
    return result
