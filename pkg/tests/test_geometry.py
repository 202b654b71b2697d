import pytest

from chentype.algebra import Expr, chart, param, substitute, sym
from chentype.errors import DegenerateChartError, FlatChartError, UsageError
from chentype.geometry import (apply, beltrami_operator, first_beltrami, first_form,
                               gauss_curvature, helicoid, iterate, make_chart,
                               mean_curvature, plane, position_identity_check, quadric1,
                               quadric2, ruled_generic, second_form, sphere, third_form,
                               third_form_identity_holds, unit_normal, dot)
from chentype.geometry.forms import FundamentalForm
from chentype.geometry.operator import is_w_free
from chentype.errors import ParameterConstraintError

u, v, t = sym(chart("u")), sym(chart("v")), sym(chart("t"))
a, b = sym(param("a")), sym(param("b"))


def op3(ch):
    return beltrami_operator(third_form(ch), ch.env)


class TestForms:
    def test_helicoid_first_form(self):
        one = first_form(helicoid(3))
        assert one.entries() == (t * t + 9, Expr(), Expr.const(1))

    def test_quadric2_first_form(self):
        one = first_form(quadric2())
        assert one.entries() == (1 + a * a * u * u, a * b * u * v, 1 + b * b * v * v)

    def test_plane(self):
        ch = plane()
        assert first_form(ch).entries() == (Expr.const(1), Expr(), Expr.const(1))
        assert all(h.is_zero() for h in second_form(ch).entries())
        with pytest.raises(FlatChartError):
            third_form(ch)

    def test_sphere_umbilic(self):
        ch = sphere()
        one, two = first_form(ch), second_form(ch)
        ratio = (two.e11 * one.e11.inverse())
        for g, h in zip(one.entries(), two.entries()):
            assert (h - ratio * g).is_zero()

    def test_sphere_third_form_equals_first(self):
        ch = sphere()
        three = third_form(ch)
        assert three == first_form(ch)
        # the mixed entry carries a plus sign: -uv/(u^2+v^2-1) = uv/(1-u^2-v^2)
        assert three.e12 == u * v / (1 - u * u - v * v)

    def test_quadric2_third_form(self):
        g = 1 + a * a * u * u + b * b * v * v
        three = third_form(quadric2())
        assert three.entries() == (a * a / g ** 2 * (1 + b * b * v * v), -a * a * b * b / g ** 2 * u * v,
                                   b * b / g ** 2 * (1 + a * a * u * u))

    @pytest.mark.parametrize("build", [lambda: helicoid(2), sphere, lambda: quadric2(1, 3),
                                       lambda: quadric1(1, 2, 1), lambda: quadric1(), ruled_generic])
    def test_third_form_identity(self, build):
        assert third_form_identity_holds(build())

    def test_unit_normal(self):
        ch = quadric2(1, 2)
        n = unit_normal(ch)
        nn = sum((x * x for x in n[1:]), n[0] * n[0])
        assert nn.rational() == 1
        x1, x2, *_ = ch.partials()
        for xi in (x1, x2):
            assert dot(n, xi).is_zero()

    def test_degenerate_form(self):
        form = FundamentalForm("J", u, u, u)
        with pytest.raises(DegenerateChartError):
            beltrami_operator(form, plane().env)


class TestCurvature:
    def test_helicoid(self):
        h = sym(param("h"))
        ch = helicoid()
        assert gauss_curvature(ch) == -h * h / (t * t + h * h) ** 2
        assert mean_curvature(ch).is_zero()

    def test_ruled_generic(self):
        ch = ruled_generic()
        z = ch.metadata["invariants"]
        n = ch.metadata["n"]
        assert gauss_curvature(ch) == -z["A"] ** 2 / (n * n)

    def test_sphere_radius(self):
        assert gauss_curvature(sphere(4)) == Expr.const(1) / 4


class TestOperator:
    def test_flat_laplacian(self):
        ch = plane()
        op = beltrami_operator(first_form(ch), ch.env)
        assert (op.c11, op.c12, op.c22, op.c1, op.c2) == (-1, 0, -1, 0, 0)

    def test_sphere_coefficients(self):
        op = op3(sphere())
        assert op.c11 == u * u - 1 and op.c12 == 2 * u * v and op.c22 == v * v - 1
        assert op.c1 == 2 * u and op.c2 == 2 * v

    def test_sphere_eigen(self):
        ch = sphere()
        op = op3(ch)
        assert all(apply(op, x) == 2 * x for x in ch.components)
        assert iterate(op, u, 0) == u
        assert iterate(op, u, 2) == 4 * u

    def test_kind2_on_u(self):
        op = op3(quadric2())
        assert apply(op, u) == -2 * a * a * u ** 3 - 2 * u * (1 + b * b * v * v)

    def test_kind2_symmetric_when_equal(self):
        op = op3(quadric2(1, 1))
        swap = {chart("u"): v, chart("v"): u}
        assert substitute(op.c11, swap) == op.c22
        assert substitute(op.c1, swap) == op.c2

    def test_w_free(self):
        for ch in (sphere(), quadric1(), helicoid(1), quadric2()):
            assert is_w_free(op3(ch))

    def test_text_and_latex(self):
        op = op3(sphere())
        assert op.to_text().splitlines()[0] == "[duu] u^2 - 1"
        assert "\\partial" in op.latex()


class TestFirstBeltrami:
    def test_plane(self):
        ch = plane()
        one = first_form(ch)
        assert first_beltrami(one, u, v, ch.env).is_zero()
        assert first_beltrami(one, u, u, ch.env) == 1


class TestPositionIdentity:
    @pytest.mark.parametrize("build", [lambda: helicoid(1), sphere, lambda: quadric2(1, 1),
                                       lambda: quadric2(), lambda: quadric1(1, 2, 1),
                                       lambda: make_chart("oblique-ruled")])
    def test_holds(self, build):
        holds, lhs, rhs = position_identity_check(build())
        assert holds

    def test_helicoid_sides_vanish(self):
        _, lhs, rhs = position_identity_check(helicoid(1))
        assert all(x.is_zero() for x in lhs + rhs)


class TestCatalog:
    def test_unknown(self):
        with pytest.raises(UsageError):
            make_chart("torus")

    @pytest.mark.parametrize("args", [dict(a=0, b=1, c=1), dict(a=1, b=1, c=0), dict(a=1, b=1, c=-1)])
    def test_kind1_constraints(self, args):
        with pytest.raises(ParameterConstraintError):
            quadric1(**args)

    def test_kind2_constraints(self):
        with pytest.raises(ParameterConstraintError, match="a, b > 0"):
            quadric2(-1, 2)

    def test_helicoid_needs_pitch(self):
        with pytest.raises(ParameterConstraintError):
            helicoid(0)
