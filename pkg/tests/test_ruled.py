import pytest

from chentype.algebra import Expr, diff, sym
from chentype.errors import InvalidRuledParametrization, UsageError
from chentype.finite_type import classify
from chentype.geometry import helicoid, make_chart
from chentype.geometry.catalog import trig_pair
from chentype.ruled import (S, T, abstract_spec, closed_forms, curvature_matches, degree_growth,
                            expansion_block, first_form_matches, from_curves, leading_law,
                            p4_comparison, p4_structure, q1_assembled, q1_top_ok, q1_vector,
                            ruled_third_beltrami, spec_for_chart)

SPEC = abstract_spec()
ROP = ruled_third_beltrami(SPEC)
Z = {k: v for k, v in SPEC.invariants.items()}
t = sym(T)


def prime(name, k=1):
    return sym(diff(name, k))


class TestOperator:
    def test_expansion_block(self):
        block = expansion_block(SPEC)
        for key, value in ROP.coefficients().items():
            assert value == block[key], key

    @pytest.mark.parametrize("key", ["P1", "P2", "P3", "P5"])
    def test_closed_forms(self, key):
        assert closed_forms(SPEC)[key] == ROP.coefficients()[key]

    def test_degrees(self):
        assert ROP.degrees() == {"P1": 2, "P2": 4, "P3": 3, "P4": 5, "P5": 6}

    def test_first_form_and_curvature(self):
        assert first_form_matches(SPEC)
        assert curvature_matches(SPEC)


class TestP4:
    def test_structure(self):
        s = p4_structure(SPEC, ROP)
        assert s["degree"] == 5 and s["degree_ok"] and s["top_ok"]

    def test_clean_lines_match(self):
        lines = {lc.power: lc for lc in p4_comparison(SPEC, ROP)}
        assert all(lines[p].matches for p in (5, 3, 0))

    def test_garbled_line_differences(self):
        lines = {lc.power: lc for lc in p4_comparison(SPEC, ROP)}
        mu, nu, eta, A = Z["mu"], Z["nu"], Z["eta"], Z["A"]
        A1, xi1 = prime("A"), prime("xi")
        half = Expr.const(1) / 2
        assert lines[4].difference == A1 * A1 * mu - 7 * eta * mu * mu - A1 * mu - 4 * mu * nu
        assert lines[2].difference == -3 * A * A * eta + A * xi1 - xi1 * xi1
        assert lines[1].difference == (2 * A * eta * xi1 - half * A * nu * prime("zeta")
                                       + half * A * prime("zeta", 2))


class TestQ1:
    def test_top_term(self):
        assert q1_top_ok(SPEC, q1_vector(SPEC, ROP))

    def test_assembled_on_formal_position(self):
        assert q1_vector(SPEC, ROP) == q1_assembled(SPEC, ROP)

    @pytest.mark.parametrize("d", range(9))
    def test_degree_growth(self, d):
        w = degree_growth(SPEC, d, ROP)
        assert w.holds and w.bound == d + 4

    def test_negative_degree(self):
        with pytest.raises(UsageError):
            degree_growth(SPEC, -1, ROP)

    def test_leading_law_first_steps(self):
        base = -Z["mu"] ** 2 / Z["A"] ** 4
        assert leading_law(SPEC, 1) == 3 * base
        assert leading_law(SPEC, 2) == 3 * 35 * base ** 2


class TestCurves:
    def test_helicoid_invariants(self):
        spec = spec_for_chart(helicoid(2))
        z = spec.invariants
        assert z["zeta"] == 4 and z["A"] == 2
        assert all(z[k].is_zero() for k in ("eta", "mu", "nu", "xi"))
        assert first_form_matches(spec) and curvature_matches(spec)

    def test_oblique_concrete(self):
        spec = spec_for_chart(make_chart("oblique-ruled"))
        assert spec.concrete and not spec.invariants["mu"].is_zero()
        assert q1_vector(spec) == q1_assembled(spec)

    def test_rejects_non_unit_ruling(self):
        C, Sn, rules = trig_pair()
        env = helicoid(1).env
        with pytest.raises(InvalidRuledParametrization, match="<rho, rho> = 1"):
            from_curves((Expr(), Expr(), sym(S)), (2 * sym(C), 2 * sym(Sn), Expr()), env)

    def test_rejects_flat(self):
        C, Sn, _ = trig_pair()
        env = helicoid(1).env
        with pytest.raises(InvalidRuledParametrization, match="A = "):
            from_curves((Expr(), Expr(), Expr()), (sym(C), sym(Sn), Expr()), env)

    def test_not_ruled(self):
        with pytest.raises(UsageError):
            spec_for_chart(make_chart("sphere"))


class TestClassification:
    def test_helicoid_null_type(self):
        r = classify(helicoid(2), 3)
        assert r.verdict == "null-type"
        assert r.qualifier == "(minimal); helicoid"
        assert all(c.passed for c in r.cross_checks)

    def test_oblique_infinite(self):
        r = classify(make_chart("oblique-ruled"), 3)
        assert r.verdict == "infinite-type-certificate"
        assert r.certificate.degrees == (5, 9, 13)
        assert all(c.passed for c in r.cross_checks)

    def test_generic_infinite(self):
        r = classify(SPEC.chart, 4)
        assert r.verdict == "infinite-type-certificate"
        assert r.certificate.degrees == (5, 9, 13, 17)
        assert [c.name for c in r.cross_checks if c.name == "leading law"] == ["leading law"]
        assert all(c.passed for c in r.cross_checks)

    def test_generic_mu_zero_inconclusive(self):
        r = classify(abstract_spec(mu=0).chart, 2)
        assert r.verdict == "inconclusive"

    def test_generic_minimal(self):
        r = classify(abstract_spec(mu=0, nu=0, xi=0).chart, 2)
        assert r.verdict == "null-type"
        assert all(c.passed for c in r.cross_checks)

    def test_unknown_override(self):
        with pytest.raises(UsageError):
            abstract_spec(kappa=1)
