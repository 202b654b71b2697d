"""Randomized algebraic properties of the kernel and the catalog operators."""

from collections import Counter
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from chentype.algebra import (DerivationEnv, Expr, SqrtExtension, SymbolTable, degree_in,
                              differentiate, ext_mul, normalize, parse)
from chentype.geometry import (beltrami_operator, helicoid, quadric1, quadric2, sphere,
                               third_form)
from chentype.geometry.operator import apply, is_w_free
from strategies import (A, U, V, chart_polys, nonzero_poly_exprs, nonzero_rationals,
                        poly_exprs, polys, rational_exprs, rationals)

# examples run per property, read by the acceptance suite
CASES = Counter()
ENV = DerivationEnv((U, V), params=[A])


def _tick(name):
    CASES[name] += 1


# -- ring axioms -------------------------------------------------------------------

@settings(max_examples=300)
@given(polys(), polys(), polys())
def test_poly_associativity(p, q, r):
    _tick("ring")
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)


@settings(max_examples=300)
@given(polys(), polys(), polys())
def test_poly_distributivity(p, q, r):
    _tick("ring")
    assert p * (q + r) == p * q + p * r


@settings(max_examples=200)
@given(polys(), polys())
def test_poly_commutativity_and_identities(p, q):
    _tick("ring")
    assert p + q == q + p
    assert p * q == q * p
    assert (p - p).is_zero()
    assert p * type(p).const(1) == p


@settings(max_examples=200)
@given(rational_exprs(), rational_exprs(), rational_exprs())
def test_expr_field_axioms(x, y, z):
    _tick("ring")
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    if not y.is_zero():
        assert (x / y) * y == x


# -- normalization -----------------------------------------------------------------

@settings(max_examples=300)
@given(rational_exprs())
def test_normalize_idempotent(e):
    _tick("normalize")
    n1 = normalize(e)
    n2 = normalize(n1)
    assert n1 == e
    assert n2.num == n1.num and n2.den == n1.den


@settings(max_examples=300)
@given(rational_exprs(), rational_exprs())
def test_normalize_preserves_eq_class(x, y):
    _tick("normalize")
    assert ((x + y) - y) == x
    assert (normalize(x) == normalize(y)) == (x == y)
    assert (x - y).is_zero() == (x == y)


@settings(max_examples=200)
@given(rational_exprs())
def test_text_roundtrip(e):
    _tick("normalize")
    assert parse(e.to_text(), SymbolTable([U, V, A])) == e


# -- derivations -------------------------------------------------------------------

@settings(max_examples=200)
@given(rational_exprs())
def test_schwarz_symmetry(e):
    _tick("derivative")
    d = lambda f, x: differentiate(f, x, ENV)
    assert d(d(e, U), V) == d(d(e, V), U)


@settings(max_examples=200)
@given(rational_exprs(), rational_exprs())
def test_leibniz_rule(x, y):
    _tick("derivative")
    d = lambda f: differentiate(f, U, ENV)
    assert d(x * y) == d(x) * y + x * d(y)


@settings(max_examples=200)
@given(poly_exprs(), poly_exprs())
def test_degree_law(x, y):
    _tick("degree")
    for g in (U, V, A):
        if x.is_zero() or y.is_zero():
            assert degree_in(x * y, g) == float("-inf")
        else:
            assert degree_in(x * y, g) == degree_in(x, g) + degree_in(y, g)


@settings(max_examples=200)
@given(nonzero_poly_exprs(), poly_exprs(), poly_exprs())
def test_conjugate_product_is_rational(g, p, q):
    _tick("extension")
    ext = SqrtExtension(g, "R")
    z = ext.element(p, q)
    prod = ext_mul(z, z.conjugate())
    assert prod.q.is_zero()
    assert prod.p == p * p - q * q * g


# -- operators ---------------------------------------------------------------------

def _operator(chart):
    return beltrami_operator(third_form(chart), chart.env)


OPERATORS = {
    "sphere": _operator(sphere()),
    "quadric2": _operator(quadric2(1, 2)),
    "quadric1": _operator(quadric1(1, 2, 1)),
}


@settings(max_examples=150)
@given(st.sampled_from(sorted(OPERATORS)), chart_polys(), chart_polys(), rationals, rationals)
def test_operator_linearity(name, f, h, alpha, beta):
    _tick("operator")
    op = OPERATORS[name]
    al, be = Expr.const(alpha), Expr.const(beta)
    assert apply(op, al * f + be * h) == al * apply(op, f) + be * apply(op, h)


@settings(max_examples=150)
@given(st.sampled_from(sorted(OPERATORS)), rationals)
def test_constant_annihilation(name, c):
    _tick("operator")
    assert apply(OPERATORS[name], Expr.const(c)).is_zero()


positive = st.fractions(min_value=Fraction(1, 5), max_value=5, max_denominator=7)


@st.composite
def catalog_charts(draw):
    kind = draw(st.sampled_from(["helicoid", "sphere", "quadric1", "quadric2"]))
    if kind == "helicoid":
        return helicoid(draw(nonzero_rationals))
    if kind == "sphere":
        return sphere(draw(positive))
    if kind == "quadric2":
        return quadric2(draw(positive), draw(positive))
    return quadric1(draw(nonzero_rationals), draw(nonzero_rationals), draw(positive))


@settings(max_examples=60)
@given(catalog_charts())
def test_catalog_operators_w_free(chart):
    _tick("w-free")
    op = _operator(chart)
    assert is_w_free(op)
    assert all(c.is_rational() if hasattr(c, "is_rational") else True
               for c in op.coefficients().values())


PROPERTY_TESTS = [
    test_poly_associativity, test_poly_distributivity, test_poly_commutativity_and_identities,
    test_expr_field_axioms, test_normalize_idempotent, test_normalize_preserves_eq_class,
    test_text_roundtrip, test_schwarz_symmetry, test_leibniz_rule, test_degree_law,
    test_conjugate_product_is_rational, test_operator_linearity, test_constant_annihilation,
    test_catalog_operators_w_free,
]
