from fractions import Fraction

import pytest

from chentype.errors import ParameterConstraintError
from chentype.geometry import plane, sphere, third_form
from chentype.quadric import (f_degrees, for_chart, iterate_ledger, kind1, kind1_classify,
                              kind1_f, kind1_f_closed, kind1_identities, kind1_prereduction,
                              kind1_third_form, kind2, kind2_classify, kind2_f, kind2_f_closed,
                              kind2_prereduction, kind2_third_form, predicted_leading, monomial_law,
                              operator, recurrence_residual)

K1 = kind1()
K2 = kind2()


def _coeffs(q):
    op = operator(q)
    return {"uu": op.c11, "uv": op.c12, "vv": op.c22, "u": op.c1, "v": op.c2}


@pytest.mark.parametrize("q, closed", [(K1, kind1_third_form), (K2, kind2_third_form)],
                         ids=["kind1", "kind2"])
def test_third_form(q, closed):
    three = third_form(q.chart)
    assert three.entries() == closed(q)


@pytest.mark.parametrize("q, pre", [(K1, kind1_prereduction), (K2, kind2_prereduction)],
                         ids=["kind1", "kind2"])
def test_prereduction(q, pre):
    got, want = _coeffs(q), pre(q)
    for key in got:
        assert got[key] == want[key], key


def test_kind1_identities():
    for lhs, rhs in kind1_identities(K1):
        assert lhs == rhs


class TestReducedCoefficients:
    def test_kind1(self):
        got, want = kind1_f(K1), kind1_f_closed(K1)
        for key in want:
            assert got[key] == want[key], key
        assert f_degrees(got) == {"f1": 6, "f2": 6, "f3": 6, "f4": 5, "f5": 5}

    def test_kind2(self):
        got, want = kind2_f(K2), kind2_f_closed(K2)
        for key in want:
            assert got[key] == want[key], key
        assert f_degrees(got) == {"f1": 4, "f2": 4, "f3": 4, "f4": 3, "f5": 3}


@pytest.mark.parametrize("q", [K1, K2], ids=["kind1", "kind2"])
@pytest.mark.parametrize("direction", ["u", "v"])
def test_ledger(q, direction):
    for entry in iterate_ledger(q, 3, direction):
        assert entry.matches, entry.k
        assert entry.leading_degree == predicted_leading(q, entry.k, direction)[1]


def test_kind1_leading_values():
    a, c = K1.a, K1.c
    assert predicted_leading(K1, 1)[0] == -3 * a * (a + 1) ** 2 / c ** 2
    assert predicted_leading(K1, 2)[0] == 105 * a ** 2 * (a + 1) ** 4 / c ** 4
    assert predicted_leading(K2, 2) == (24 * K2.a ** 4, 5)


@pytest.mark.parametrize("q", [K1, K2], ids=["kind1", "kind2"])
@pytest.mark.parametrize("d", range(1, 7))
def test_monomial_law(q, d):
    deg, got, want, top = monomial_law(q, d)
    assert got == want and top == deg


@pytest.mark.parametrize("direction", ["u", "v"])
def test_recurrence_needs_cross_term(direction):
    rows = recurrence_residual(K1, iterate_ledger(K1, 3, direction), direction)
    assert [k for k, _, _ in rows] == [2, 3]
    for k, residual, explained in rows:
        assert explained
        assert not residual.is_zero()


class TestConstraints:
    def test_kind1(self):
        rep = kind1_classify(K1, 3)
        assert rep.verdict == "constraints"
        assert rep.constraints == {"a": [-1], "b": [-1]}

    def test_kind2(self):
        rep = kind2_classify(K2, 3)
        assert rep.constraints == {"a": [0], "b": [0]}
        assert all(c.passed for c in rep.cross_checks)


class TestConcrete:
    def test_sphere_case(self):
        rep = kind1_classify(kind1(-1, -1, 4), 3)
        assert rep.verdict == "finite-type"
        assert rep.qualifier == "(sphere)"
        assert all(c.passed for c in rep.cross_checks)

    def test_kind1_generic(self):
        rep = kind1_classify(kind1(1, 2, 1), 3)
        assert rep.verdict == "infinite-type-certificate"
        assert rep.certificate.degrees == (5, 9, 13)

    @pytest.mark.parametrize("a, b", [(1, 3), (2, 5), (Fraction(1, 3), Fraction(7, 2))])
    def test_kind2_scales(self, a, b):
        rep = kind2_classify(kind2(a, b), 4)
        assert rep.verdict == "infinite-type-certificate"
        assert rep.certificate.degrees == (3, 5, 7, 9)
        assert all(c.passed for c in rep.cross_checks)
        q = kind2(a, b)
        for direction in "uv":
            assert all(e.matches for e in iterate_ledger(q, 3, direction))

    def test_kind2_rejects_negative(self):
        with pytest.raises(ParameterConstraintError):
            kind2(-1, 2)

    def test_for_chart(self):
        assert isinstance(for_chart(kind2(1, 1).chart), type(K2))
        assert for_chart(sphere(2)).values == {"a": -1, "b": -1, "c": 2}
        with pytest.raises(ParameterConstraintError):
            for_chart(plane())
