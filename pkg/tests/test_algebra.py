from math import inf

import pytest
from gmpy2 import mpq

from chentype.algebra import (DerivationEnv, Expr, MultiPoly, SqrtExtension, SymbolTable, chart,
                              degree_in, diff, differentiate, ext_mul, linear_dependence,
                              normalize, param, parse, rational_roots, root, scalar,
                              solve_monic, substitute, sym)
from chentype.algebra.scalars import format_scalar
from chentype.errors import (EvaluationPoleError, ExtensionMismatchError,
                             MalformedExpressionError, UnboundSymbolError, UsageError)

u, v, s, t = (sym(chart(n)) for n in "uvst")
a, b, c = (sym(param(n)) for n in "abc")
zeta, eta = sym(diff("zeta")), sym(diff("eta"))
ENV = DerivationEnv((chart("u"), chart("v")), params=[param(n) for n in "abc"])
RULED = DerivationEnv((chart("s"), chart("t")), diff_bases=("zeta", "eta"), diff_var=chart("s"))


class TestScalars:
    def test_canonical_fraction(self):
        x = scalar("-6/4")
        assert (x.numerator, x.denominator) == (-3, 2)
        assert scalar(0).denominator == 1

    def test_format(self):
        assert format_scalar(mpq(-3, 2)) == "-3/2"
        assert format_scalar(4) == "4"

    def test_zero_denominator(self):
        with pytest.raises(ZeroDivisionError):
            scalar("1/0")

    def test_rejects_float(self):
        with pytest.raises(TypeError):
            scalar(0.5)


class TestNormalize:
    def test_cancels_common_factor(self):
        e = (u * u - v * v) / (u - v)
        assert e == u + v
        assert e.den.is_constant()

    def test_definitional_identity(self):
        n = t * t + 2 * eta * t + zeta
        assert ((t * t + 2 * eta * t + zeta) - n).is_zero()

    def test_commutative_forms_agree(self):
        assert (a + 1) ** 2 * u ** 5 * (1 / c ** 2) == u ** 5 * (a + 1) ** 2 / c ** 2

    def test_idempotent(self):
        e = (a * u + a) / (c * u + c)
        once = normalize(e)
        assert normalize(once).num == once.num
        assert once == a / c

    def test_zero_denominator(self):
        with pytest.raises(MalformedExpressionError):
            u / Expr()

    def test_monic_denominator_sign(self):
        e = Expr.const(1) / (-u - 1)
        assert e == -1 / (u + 1)


class TestDifferentiate:
    def test_n_t(self):
        assert differentiate(t * t + 2 * eta * t + zeta, chart("t"), RULED) == 2 * t + 2 * eta

    def test_prime_raises_order(self):
        assert differentiate(zeta, chart("s"), RULED) == sym(diff("zeta", 1))
        assert differentiate(zeta, chart("t"), RULED).is_zero()

    def test_polynomial_rule(self):
        assert differentiate(c + a * u * u + b * v * v, chart("u"), ENV) == 2 * a * u

    def test_quotient_rule(self):
        e = u / (1 + v * u)
        du = differentiate(e, chart("u"), ENV)
        assert du == 1 / (1 + u * v) ** 2

    def test_unknown_symbol(self):
        with pytest.raises(UnboundSymbolError):
            differentiate(sym(param("h")) * u, chart("u"), ENV)

    def test_root_symbol(self):
        W = root("W", (1 - MultiPoly.var(chart("u")) ** 2))
        w = sym(W)
        assert differentiate(w, chart("u"), ENV) == -u * w / (1 - u * u)
        assert w * w == 1 - u * u


class TestDegree:
    def test_degree_in(self):
        n = t * t + 2 * eta * t + zeta
        assert degree_in(n, chart("t")) == 2
        assert degree_in(Expr(), chart("u")) == -inf

    def test_nonpolynomial_sentinel(self):
        assert degree_in(1 / (u + 1), chart("u")) == inf


class TestSubstitute:
    def test_slice(self):
        n = t * t + 2 * eta * t + zeta
        assert substitute(n, {chart("t"): 0}) == zeta

    def test_homomorphic(self):
        x, y = u * u + a, v / (u + 2)
        b_ = {chart("u"): Expr.const(3)}
        assert substitute(x * y + x, b_) == substitute(x, b_) * substitute(y, b_) + substitute(x, b_)

    def test_pole(self):
        with pytest.raises(EvaluationPoleError):
            substitute(1 / (u - 1), {chart("u"): 1})


class TestExtension:
    def test_root_squared(self):
        ext = SqrtExtension(u * u + 1)
        W = ext.root()
        sq = ext_mul(W, W)
        assert sq.q.is_zero() and sq.p == u * u + 1

    def test_conjugate_product(self):
        ext = SqrtExtension(a)
        z = ext_mul(ext.element(1, 1), ext.element(1, -1))
        assert z.q.is_zero() and z.p == 1 - a

    def test_rationalization(self):
        m = sym(param("m"))
        ext = SqrtExtension(a)
        W = ext.root()
        assert (W.inverse() * m * W.inverse()).rational() == m / a

    def test_mismatch(self):
        with pytest.raises(ExtensionMismatchError):
            SqrtExtension(a).root() * SqrtExtension(b).root()


class TestText:
    def test_roundtrip_with_primes(self):
        e = (sym(diff("zeta", 2)) * t - 3 * eta / 7) / (t * t + zeta)
        table = SymbolTable([chart("t"), diff("zeta"), diff("eta")])
        assert parse(e.to_text(), table) == e

    def test_deterministic_text(self):
        e = v + u * u + a
        assert e.to_text() == (a + v + u * u).to_text()

    def test_latex(self):
        assert "\\frac" in (u / (a + 1)).latex()


class TestLinearAlgebra:
    def test_dependence(self):
        assert linear_dependence([[u], [2 * u]]) == [1, mpq(-1, 2)]

    def test_independent(self):
        assert linear_dependence([[u ** 5], [u ** 3]]) is None

    def test_empty(self):
        with pytest.raises(UsageError):
            linear_dependence([])

    def test_monic(self):
        x = (u, v, Expr())
        assert solve_monic([[4 * e for e in x], [2 * e for e in x]]) == [-2]


class TestRationalRoots:
    def test_split(self):
        roots, complete = rational_roots([-6, 1, 1])  # t^2 + t - 6
        assert roots == [(-3, 1), (2, 1)] and complete

    def test_irrational(self):
        roots, complete = rational_roots([-2, 0, 1])
        assert roots == [] and not complete

    def test_multiplicity(self):
        roots, _ = rational_roots([0, 0, 1, -1])  # t^2 (1 - t)
        assert roots == [(0, 2), (1, 1)]
