"""
Hypothesis strategies for the algebraic types.
"""
from hypothesis import strategies as st

from qplane.omega import OmegaUElement
from qplane.plane import PlaneElement
from qplane.scalars import GaussianRational, QScalar
from qplane.univariate import UPoly

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=4)

gaussians = st.builds(GaussianRational, rationals, rationals)

qscalars = st.dictionaries(st.integers(-3, 3), gaussians, max_size=3).map(QScalar)

monomials = st.tuples(st.integers(0, 3), st.integers(0, 3))

plane_elements = st.dictionaries(monomials, qscalars, max_size=4).map(PlaneElement)

omega_elements = st.builds(
    OmegaUElement,
    st.dictionaries(st.integers(0, 2), qscalars, max_size=2),
    st.dictionaries(st.tuples(st.integers(1, 3), st.integers(0, 2)), qscalars, max_size=2),
    st.dictionaries(st.tuples(st.integers(1, 3), st.integers(0, 2)), qscalars, max_size=2),
)

series = st.lists(gaussians, max_size=5).map(UPoly)

complex_polys = st.lists(
    st.builds(lambda re, im: complex(re, im) / 4, st.integers(-8, 8), st.integers(-8, 8)),
    min_size=1, max_size=6,
).map(UPoly)
