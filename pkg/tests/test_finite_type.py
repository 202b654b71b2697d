import json

import pytest
from gmpy2 import mpq

from chentype.algebra import Expr, chart, sym
from chentype.errors import FlatChartError, UsageError
from chentype.finite_type import (Certificate, TypeRelation, classify, compute_iterates,
                                  detect_relation)
from chentype.geometry import SurfaceChart, helicoid, plane, ruled_generic, sphere

u, v, w = sym(chart("u")), sym(chart("v")), sym(chart("w"))
O = Expr()


def shifted_sphere(offset):
    base = sphere()
    comps = tuple(c + o for c, o in zip(base.components, offset))
    return SurfaceChart("shifted sphere", comps, base.env)


class TestDetectRelation:
    def test_eigenvector(self):
        x = (u, v, O)
        rel = detect_relation([x, tuple(2 * c for c in x), tuple(4 * c for c in x)])
        assert rel.order == 1 and rel.constants == (-2,)
        assert rel.k == 1 and not rel.null and rel.eigenvalues == (2,)
        assert rel.text() == "Delta^2 x - 2 Delta x = 0"

    def test_null_order_zero(self):
        rel = detect_relation([(u, v, O), (O, O, O), (O, O, O)])
        assert rel.order == 0 and rel.k == 1 and rel.null
        assert rel.eigenvalues == (0,)
        assert rel.text() == "Delta x = 0"

    def test_repeated_zero_root(self):
        rel = detect_relation([(u * u, O, O), (Expr.const(1), O, O), (O, O, O)])
        assert rel.order == 1 and rel.constants == (0,)
        assert rel.k is None and rel.null

    def test_irrational_roots(self):
        x = (v / 2 + 1, O, O)
        its = [x, (u, O, O), (v, O, O), (2 * u, O, O)]
        rel = detect_relation(its)
        assert rel.order == 2 and rel.constants == (0, -2)
        assert rel.k == 2 and rel.eigenvalues is None and rel.decomposition is None
        assert rel.holds(its)

    def test_none_when_independent(self):
        assert detect_relation([(u, O, O), (u ** 3, O, O), (u ** 5, O, O)]) is None

    def test_needs_iterates(self):
        with pytest.raises(UsageError):
            detect_relation([(u, v, O)])

    def test_polynomial_order(self):
        rel = TypeRelation(2, (mpq(-3), mpq(2)), 2, False, (1, 2))
        assert rel.polynomial() == [2, -3, 1]


class TestCertificate:
    def test_valid(self):
        assert Certificate("t", (5, 9), (Expr.const(1), u), "").valid()

    def test_flat_degrees(self):
        assert not Certificate("t", (5, 5), (Expr.const(1), u), "").valid()

    def test_zero_leading(self):
        assert not Certificate("t", (5, 9), (Expr.const(1), O), "").valid()


class TestClassify:
    def test_sphere(self):
        rep = classify(sphere(4), 3)
        assert rep.verdict == "finite-type" and rep.relation.k == 1
        assert rep.relation.eigenvalues == (2,)
        assert rep.summary() == "finite III-type 1 (sphere)"
        assert all(c.passed for c in rep.cross_checks)

    def test_shifted_sphere_constant_part(self):
        rep = classify(shifted_sphere((1, 2, Expr.const(3) / 4)), 3)
        assert rep.verdict == "finite-type" and rep.relation.k == 1
        dec = rep.relation.decomposition
        assert dec.x0 == (Expr.const(1), Expr.const(2), Expr.const(3) / 4)
        assert [lam for lam, _ in dec.parts] == [2]
        assert "x0: (1, 2, 3/4)" in rep.to_text()

    def test_helicoid(self):
        rep = classify(helicoid(1), 2)
        assert rep.verdict == "null-type"
        assert rep.summary() == "finite null III-type 1 (minimal); helicoid"

    def test_minimal_order(self):
        rep = classify(sphere(), 4)
        assert rep.relation.order == 1
        names = {c.name: c.passed for c in rep.cross_checks}
        assert names["minimal order"] and names["relation re-verifies"]

    def test_plane_is_flat(self):
        with pytest.raises(FlatChartError):
            classify(plane(), 2)

    def test_kmax(self):
        with pytest.raises(UsageError):
            compute_iterates(sphere(), None, 0)

    def test_abstract_without_family(self):
        ch = ruled_generic()
        ch.metadata["family"] = "other"
        with pytest.raises(UsageError):
            classify(ch, 2)


class TestReportSerialization:
    def test_json_schema(self):
        body = json.loads(json.dumps(classify(sphere(), 3).to_json()))
        assert set(body) >= {"surface", "k_max", "verdict", "summary", "relation",
                             "degree_table", "cross_checks"}
        assert body["relation"]["eigenvalues"] == ["2"]
        assert body["relation"]["text"] == "Delta^2 x - 2 Delta x = 0"
        assert body["degree_table"][0] == {"k": 0, "degrees": [1, 0, 0]}

    def test_certificate_json(self):
        body = classify(ruled_generic(), 3).to_json()
        assert body["verdict"] == "infinite-type-certificate"
        assert body["certificate"]["degrees"] == [5, 9, 13]
        assert body["certificate"]["variable"] == "t"

    def test_text_is_deterministic(self):
        assert classify(sphere(), 3).to_text() == classify(sphere(), 3).to_text()
