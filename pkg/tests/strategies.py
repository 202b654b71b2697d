"""Hypothesis strategies shared by the property suites."""

from fractions import Fraction

from hypothesis import strategies as st

from chentype.algebra import Expr, MultiPoly, chart, param, sym

U, V, A = chart("u"), chart("v"), param("a")
GENS = (U, V, A)

rationals = st.fractions(min_value=-6, max_value=6, max_denominator=5)
nonzero_rationals = rationals.filter(bool)
exponents = st.tuples(*(st.integers(0, 3) for _ in GENS))


@st.composite
def polys(draw, max_terms=4):
    """Small sparse polynomial in ``u, v, a`` as a MultiPoly."""
    terms = draw(st.dictionaries(exponents, rationals, max_size=max_terms))
    return MultiPoly.from_dict(GENS, terms)


def poly_expr(p):
    return Expr.from_poly(p)


@st.composite
def poly_exprs(draw, max_terms=4):
    return poly_expr(draw(polys(max_terms)))


@st.composite
def nonzero_poly_exprs(draw, max_terms=3):
    e = draw(poly_exprs(max_terms))
    return e if not e.is_zero() else Expr.const(draw(nonzero_rationals))


@st.composite
def rational_exprs(draw):
    return draw(poly_exprs(3)) / draw(nonzero_poly_exprs(2))


@st.composite
def chart_polys(draw, max_terms=4):
    """Polynomial in the chart variables only."""
    terms = draw(st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), rationals,
                                 max_size=max_terms))
    return Expr.from_poly(MultiPoly.from_dict((U, V), terms))


def as_fraction(x):
    return Fraction(x)


__all__ = ["A", "GENS", "U", "V", "chart_polys", "nonzero_poly_exprs", "nonzero_rationals",
           "poly_exprs", "polys", "rational_exprs", "rationals", "sym"]
