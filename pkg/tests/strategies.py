"""Hypothesis strategies shared by the test modules."""
from fractions import Fraction

from hypothesis import strategies as st

from sosreduce import Polynomial

rationals = st.builds(
    Fraction,
    st.integers(-9, 9),
    st.integers(1, 4),
)
nonzero_rationals = rationals.filter(bool)


@st.composite
def polynomials(draw, nvars=None, max_degree=4, max_terms=6):
    n = draw(st.integers(1, 3)) if nvars is None else nvars
    exps = st.lists(st.integers(0, max_degree), min_size=n, max_size=n).filter(
        lambda a: sum(a) <= max_degree
    )
    terms = draw(st.dictionaries(exps.map(tuple), nonzero_rationals, max_size=max_terms))
    return Polynomial(n, terms)


@st.composite
def polynomial_pairs(draw, k=2, **kw):
    n = draw(st.integers(1, 3))
    return tuple(draw(polynomials(nvars=n, **kw)) for _ in range(k))
