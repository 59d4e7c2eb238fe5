"""Hypothesis strategies shared by the property tests."""

from fractions import Fraction

from hypothesis import strategies as st

from polyrev.poly import BiPoly, UniPoly

small_int = st.integers(-4, 4)
rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
nonzero_rationals = rationals.filter(bool)


@st.composite
def unipolys(draw, min_deg=0, max_deg=5):
    deg = draw(st.integers(min_deg, max_deg))
    lower = draw(st.lists(small_int, min_size=deg, max_size=deg))
    lead = draw(small_int.filter(bool))
    return UniPoly(lower + [lead])


@st.composite
def bipolys(draw, max_deg=3):
    terms = draw(st.dictionaries(
        st.tuples(st.integers(0, max_deg), st.integers(0, max_deg)).filter(lambda k: sum(k) <= max_deg),
        rationals, max_size=6))
    return BiPoly(terms)
