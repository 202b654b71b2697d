"""Verification suite: each closed form checked exactly against the engine.

A case compares an engine-derived value with an independently written
closed form and renders the engine value as canonical text.  That text is
also compared against a stored golden file, so any drift in a formula shows
up even when both sides change together.
"""

import fnmatch
import time
from dataclasses import dataclass
from functools import cached_property
from importlib import resources
from pathlib import Path

from .algebra import Expr, param, substitute, sym
from .algebra.scalars import format_scalar
from .finite_type import classify
from .geometry import (first_form, gauss_curvature, helicoid, mean_curvature, plane,
                       position_identity_check, quadric2, sphere, third_form)
from .geometry.catalog import U, V
from .geometry.operator import beltrami_operator
from . import quadric as qd
from . import ruled as rl

MATCH, MISMATCH, STRUCTURAL = "match", "mismatch", "structural-only"
GOLDEN_DIR = "golden"


@dataclass(frozen=True)
class Outcome:
    status: str
    value: str
    detail: str = ""


@dataclass(frozen=True)
class CaseResult:
    id: str
    target: str
    status: str
    detail: str
    golden: str
    runtime: float

    @property
    def failed(self):
        return self.status == MISMATCH

    def to_json(self, timing=False):
        out = {"id": self.id, "target": self.target, "status": self.status,
               "detail": self.detail, "golden": self.golden}
        if timing:
            out["runtime"] = round(self.runtime, 4)
        return out


@dataclass(frozen=True)
class Case:
    id: str
    target: str
    run: object


def _text(x):
    if isinstance(x, (tuple, list)):
        return "\n".join(_text(e) for e in x)
    if isinstance(x, dict):
        return "\n".join(f"{k}: {_text(v)}" for k, v in x.items())
    return x.to_text() if hasattr(x, "to_text") else str(x)


def compare(engine, expected):
    """Exact comparison of an Expr (or a tuple/dict of them) with its closed form."""
    if isinstance(engine, dict):
        pairs = [(k, engine[k], expected[k]) for k in expected]
    elif isinstance(engine, (tuple, list)):
        pairs = [(str(i), a, b) for i, (a, b) in enumerate(zip(engine, expected))]
    else:
        pairs = [("", engine, expected)]
    bad = [f"{k + ': ' if k else ''}engine - expected = {(a - b).to_text()}"
           for k, a, b in pairs if a != b]
    return Outcome(MISMATCH if bad else MATCH, _text(engine), "; ".join(bad))


def check(ok, value, detail=""):
    return Outcome(MATCH if ok else MISMATCH, value, detail)


class Context:
    """Lazily built shared objects; each is computed at most once per run."""

    def __init__(self, k_max):
        self.k_max = k_max

    @cached_property
    def ruled(self):
        return rl.abstract_spec()

    @cached_property
    def ruled_op(self):
        return rl.ruled_third_beltrami(self.ruled)

    @cached_property
    def ruled_mu0(self):
        return rl.abstract_spec(mu=0)

    @cached_property
    def helicoid(self):
        return rl.spec_for_chart(helicoid())

    @cached_property
    def k1(self):
        return qd.kind1()

    @cached_property
    def k2(self):
        return qd.kind2()

    def ledger(self, q, direction):
        key = f"_ledger_{id(q)}_{direction}"
        if key not in self.__dict__:
            self.__dict__[key] = qd.iterate_ledger(q, self.k_max, direction)
        return self.__dict__[key]

    @cached_property
    def k1_constraints(self):
        return qd._constraints(self.k1, self.k_max)

    @cached_property
    def k2_constraints(self):
        return qd._constraints(self.k2, self.k_max)


# -- ruled ----------------------------------------------------------------------

def _ruled_P(name):
    def run(ctx):
        return compare(ctx.ruled_op.coefficients()[name], rl.closed_forms(ctx.ruled)[name])
    return run


def _ruled_P4(ctx):
    s = rl.p4_structure(ctx.ruled, ctx.ruled_op)
    lines = rl.p4_comparison(ctx.ruled, ctx.ruled_op)
    clean_ok = all(c.matches for c in lines if c.clean)
    if not (s["degree_ok"] and s["top_ok"] and clean_ok):
        return Outcome(MISMATCH, ctx.ruled_op.P4.to_text(),
                       f"degree {s['degree']}, top ok {s['top_ok']}, clean lines ok {clean_ok}")
    garbled = "; ".join(f"t^{c.power}: engine - reference = {c.difference.to_text()}"
                        for c in lines if not c.clean)
    return Outcome(STRUCTURAL, ctx.ruled_op.P4.to_text(),
                   "degree <= 5, t^5 coefficient -3 mu^2/A^4 and lines t^5, t^3, t^0 match; "
                   f"reference lines t^4, t^2, t^1 are corrupted ({garbled})")


def _ruled_block(ctx):
    return compare(ctx.ruled_op.coefficients(), rl.expansion_block(ctx.ruled))


def _ruled_degrees(ctx):
    degs = ctx.ruled_op.degrees()
    z = ctx.ruled.invariants
    top5 = ctx.ruled_op.P5.coeff_in(rl.T, 6) == -z["mu"] ** 2 / z["A"] ** 4
    ok = all(d <= 6 for d in degs.values()) and top5
    return check(ok, ", ".join(f"{k}: {int(d)}" for k, d in degs.items()),
                 "" if ok else f"degrees {degs}, P5 top ok {top5}")


def _ruled_I(ctx):
    return check(rl.first_form_matches(ctx.ruled), first_form(ctx.ruled.chart).to_text(("s", "t")))


def _ruled_K(ctx):
    z = ctx.ruled.invariants
    n = ctx.ruled.n
    return compare(gauss_curvature(ctx.ruled.chart), -z["A"] ** 2 / (n * n))


def _ruled_Q1(ctx):
    q1 = rl.q1_vector(ctx.ruled, ctx.ruled_op)
    deg = rl.vector_degree(q1)
    ok = deg == 5 and rl.q1_top_ok(ctx.ruled, q1)
    value = "\n".join(f"t^5 coefficient of component {i + 1}: {c.coeff_in(rl.T, 5).to_text()}"
                      for i, c in enumerate(q1))
    if not ok:
        return Outcome(MISMATCH, value, f"degree {deg}")
    return Outcome(STRUCTURAL, value, "degree 5 with t^5 coefficient -3 mu^2 rho/A^4; "
                   "the full reference form is corrupted, compared structurally only")


def _ruled_Q1_mu0(ctx):
    q1 = rl.q1_vector(ctx.ruled_mu0)
    deg = rl.vector_degree(q1)
    return check(deg <= 3, f"degree {int(deg)}")


def _degree_bound(d):
    def run(ctx):
        w = rl.degree_growth(ctx.ruled, d, ctx.ruled_op)
        return check(w.holds, f"degree {int(w.degree)} <= {w.bound}")
    return run


def _helicoid_curves(ctx):
    inv = ctx.helicoid.invariants
    return Outcome(MATCH, _text(inv), "<sigma', rho> = 0, <rho, rho> = <rho', rho'> = 1")


def _helicoid_I(ctx):
    h, t = sym(param("h")), sym(rl.T)
    one = first_form(ctx.helicoid.chart)
    return compare(one.entries(), (t * t + h * h, Expr(), Expr.const(1)))


def _helicoid_K(ctx):
    h, t = sym(param("h")), sym(rl.T)
    return compare(gauss_curvature(ctx.helicoid.chart), -h * h / (t * t + h * h) ** 2)


def _helicoid_H(ctx):
    H = mean_curvature(ctx.helicoid.chart)
    return check(H.is_zero(), f"H = {H.p.to_text()} + ({H.q.to_text()}) R")


def _helicoid_Q1(ctx):
    q1 = rl.q1_vector(ctx.helicoid)
    return compare(q1, (Expr(), Expr(), Expr()))


def _helicoid_type(ctx):
    rep = classify(ctx.helicoid.chart, 2)
    return check(rep.summary() == "finite null III-type 1 (minimal); helicoid", rep.summary())


# -- kind I ---------------------------------------------------------------------

def _k1_III(ctx):
    return compare(third_form(ctx.k1.chart).entries(), qd.kind1_third_form(ctx.k1))


def _k1_pre(key):
    def run(ctx):
        op = qd.operator(ctx.k1)
        engine = {"uu": op.c11, "uv": op.c12, "vv": op.c22, "u": op.c1, "v": op.c2}[key]
        return compare(engine, qd.kind1_prereduction(ctx.k1)[key])
    return run


def _f_case(kind, name, bound):
    def run(ctx):
        q = ctx.k1 if kind == 1 else ctx.k2
        engine = (qd.kind1_f if kind == 1 else qd.kind2_f)(q)[name]
        closed = (qd.kind1_f_closed if kind == 1 else qd.kind2_f_closed)(q)[name]
        out = compare(engine, closed)
        deg = engine.total_degree((U, V))
        if deg > bound:
            return Outcome(MISMATCH, out.value, f"degree {deg} > {bound}")
        return out
    return run


def _k1_note(i):
    def run(ctx):
        lhs, rhs = qd.kind1_identities(ctx.k1)[i]
        return compare(lhs, rhs)
    return run


def _ledger_case(kind, direction, k):
    def run(ctx):
        q = ctx.k1 if kind == 1 else ctx.k2
        e = ctx.ledger(q, direction)[k - 1]
        row = e.to_json()
        value = (f"leading {row['leading_coefficient']} * {direction}^{row['leading_degree']}, "
                 f"remainder degree {row['remainder_degree']}")
        if e.matches:
            return Outcome(MATCH, value)
        return Outcome(MISMATCH, value,
                       f"engine - expected = {(e.leading_coefficient - e.expected_coefficient).to_text()}; "
                       f"remainder degree {row['remainder_degree']} vs bound {e.bound}")
    return run


def _recurrence_case(direction, k):
    def run(ctx):
        rows = qd.recurrence_residual(ctx.k1, ctx.ledger(ctx.k1, direction), direction)
        _, residual, explained = next(r for r in rows if r[0] == k)
        cross = "f3 d_vv" if direction == "u" else "f2 d_uu"
        return check(explained, residual.to_text(),
                     f"step holds once the {cross} term of the previous remainder is kept"
                     if explained else "residual not explained by the cross term")
    return run


def _law(kind, d):
    def run(ctx):
        q = ctx.k1 if kind == 1 else ctx.k2
        deg, got, want, sdeg = qd.monomial_law(q, d)
        ok = got == want and sdeg == deg
        return check(ok, f"{got.to_text()} * u^{deg}",
                     "" if ok else f"engine - expected = {(got - want).to_text()}, degree {sdeg}")
    return run


def _constraint_case(which, name, want):
    def run(ctx):
        cons = getattr(ctx, which)
        got = cons.get(name, [])
        got = [r for r in got if not (which == "k1_constraints" and r == 0)]
        text = f"{name} in {{{', '.join(format_scalar(r) for r in got)}}}"
        return check(got == want, text)
    return run


def _sphere_III(ctx):
    ch = sphere()
    return compare(third_form(ch).entries(), first_form(ch).entries())


def _sphere_op(ctx):
    f2 = qd.kind1_f(qd.for_chart(sphere()))["f2"]
    u = sym(U)
    return compare(substitute(f2, {V: Expr()}), u * u - 1)


def _sphere_type(ctx):
    rep = classify(sphere(), 4)
    rel = rep.relation
    ok = rel is not None and rel.k == 1 and rel.text() == "Delta^2 x - 2 Delta x = 0"
    ok = ok and all(c.passed for c in rep.cross_checks)
    return check(ok, f"{rep.summary()}; {rel.text() if rel else 'no relation'}")


# -- kind II --------------------------------------------------------------------

def _k2_I(ctx):
    a, b, u, v = ctx.k2.a, ctx.k2.b, sym(U), sym(V)
    return compare(first_form(ctx.k2.chart).entries(),
                   (1 + a * a * u * u, a * b * u * v, 1 + b * b * v * v))


def _k2_III(ctx):
    return compare(third_form(ctx.k2.chart).entries(), qd.kind2_third_form(ctx.k2))


def _k2_pre(ctx):
    op = qd.operator(ctx.k2)
    return compare({"uu": op.c11, "uv": op.c12, "vv": op.c22, "u": op.c1, "v": op.c2},
                   qd.kind2_prereduction(ctx.k2))


def _k2_type(ctx):
    rep = qd.kind2_classify(qd.kind2(1, 3), 4)
    ok = rep.certificate is not None and rep.certificate.degrees == (3, 5, 7, 9)
    return check(ok, rep.summary())


# -- cross-validation -----------------------------------------------------------

def _identity(build):
    def run(ctx):
        holds, lhs, _ = position_identity_check(build())
        return check(holds, _text(lhs))
    return run


def _plane_operator(ctx):
    ch = plane()
    op = beltrami_operator(first_form(ch), ch.env)
    return compare(tuple(op.coefficients().values()),
                   (Expr.const(-1), Expr(), Expr.const(-1), Expr(), Expr()))


def build_cases(k_max=3):
    ks = range(1, k_max + 1)
    cases = [
        Case("ruled.I", "ruled first form n ds^2 + dt^2", _ruled_I),
        Case("ruled.K", "ruled Gauss curvature -A^2/n^2", _ruled_K),
        Case("ruled.Q1", "ruled Q1 = Delta x, top t-term", _ruled_Q1),
        Case("ruled.Q1.mu0", "ruled Q1 degree with mu = 0", _ruled_Q1_mu0),
        Case("ruled.degrees", "ruled coefficient degrees in t", _ruled_degrees),
        Case("e4.block", "ruled operator through n, m, A", _ruled_block),
        Case("e4.P4", "ruled operator coefficient P4", _ruled_P4),
        *(Case(f"e4.{p}", f"ruled operator coefficient {p}", _ruled_P(p))
          for p in ("P1", "P2", "P3", "P5")),
        *(Case(f"L2.1.d{d}", f"degree bound for a degree-{d} polynomial in t", _degree_bound(d))
          for d in range(9)),
        Case("helicoid.curves", "helicoid directrix and ruling constraints", _helicoid_curves),
        Case("helicoid.I", "helicoid first form", _helicoid_I),
        Case("helicoid.K", "helicoid Gauss curvature", _helicoid_K),
        Case("helicoid.H", "helicoid is minimal", _helicoid_H),
        Case("helicoid.Q1", "helicoid Delta x = 0", _helicoid_Q1),
        Case("helicoid.type", "helicoid verdict", _helicoid_type),
        Case("quadric1.III", "kind-I third form", _k1_III),
        *(Case(f"e6.{k}", f"kind-I operator coefficient {k} before reduction", _k1_pre(k))
          for k in ("uu", "uv", "vv", "u", "v")),
        *(Case(f"e7.f{i}", f"kind-I f{i}", _f_case(1, f"f{i}", 6)) for i in range(1, 6)),
        *(Case(f"e7.note{i + 1}", f"kind-I auxiliary identity {i + 1}", _k1_note(i))
          for i in range(6)),
        *(Case(f"L1.k{k}", f"kind-I u-ledger step {k}", _ledger_case(1, "u", k)) for k in ks),
        *(Case(f"L2.k{k}", f"kind-I v-ledger step {k}", _ledger_case(1, "v", k)) for k in ks),
        *(Case(f"e9.{d}.k{k}", f"kind-I {d}-recurrence step {k}", _recurrence_case(d, k))
          for d in "uv" for k in ks if k >= 2),
        *(Case(f"law1.d{d}", f"kind-I monomial law d={d}", _law(1, d)) for d in range(1, 13)),
        Case("e14", "kind-I u-constraint", _constraint_case("k1_constraints", "a", [-1])),
        Case("e15", "kind-I v-constraint", _constraint_case("k1_constraints", "b", [-1])),
        Case("sphere.III", "unit sphere III = I", _sphere_III),
        Case("sphere.f2", "unit sphere f2 on v = 0", _sphere_op),
        Case("sphere.type", "unit sphere verdict", _sphere_type),
        Case("quadric2.I", "kind-II first form", _k2_I),
        Case("quadric2.III", "kind-II third form", _k2_III),
        Case("e16.pre", "kind-II operator before expansion", _k2_pre),
        *(Case(f"e16.f{i}", f"kind-II f{i}", _f_case(2, f"f{i}", 4)) for i in range(1, 6)),
        *(Case(f"L3.k{k}", f"kind-II u-ledger step {k}", _ledger_case(2, "u", k)) for k in ks),
        *(Case(f"L4.k{k}", f"kind-II v-ledger step {k}", _ledger_case(2, "v", k)) for k in ks),
        *(Case(f"law2.d{d}", f"kind-II monomial law d={d}", _law(2, d)) for d in range(1, 13)),
        Case("e22", "kind-II u-constraint", _constraint_case("k2_constraints", "a", [0])),
        Case("e23", "kind-II v-constraint", _constraint_case("k2_constraints", "b", [0])),
        Case("quadric2.type", "kind-II (1, 3) verdict", _k2_type),
        Case("identity.helicoid", "position identity on the helicoid", _identity(lambda: helicoid(1))),
        Case("identity.sphere", "position identity on the unit sphere", _identity(sphere)),
        Case("identity.quadric2", "position identity on quadric2(1, 1)",
             _identity(lambda: quadric2(1, 1))),
        Case("plane.operator", "flat Laplacian with leading minus", _plane_operator),
    ]
    return sorted(cases, key=lambda c: c.id)


# Alternative names accepted on the command line.
ALIASES = {"ruled.P4": "e4.P4", "ruled.P1": "e4.P1", "ruled.P2": "e4.P2", "ruled.P3": "e4.P3",
           "ruled.P5": "e4.P5"}


def select(cases, pattern=None):
    if not pattern:
        return list(cases)
    pattern = ALIASES.get(pattern, pattern)
    return [c for c in cases if fnmatch.fnmatchcase(c.id, pattern)]


def golden_path(case_id, root=None):
    base = Path(root) if root else Path(str(resources.files("chentype") / GOLDEN_DIR))
    return base / f"{case_id}.txt"


def run_cases(cases, k_max=3, bless=False, golden_root=None):
    ctx = Context(k_max)
    results = []
    for case in cases:
        start = time.perf_counter()
        out = case.run(ctx)
        elapsed = time.perf_counter() - start
        path = golden_path(case.id, golden_root)
        text = out.value.rstrip("\n") + "\n"
        status, detail = out.status, out.detail
        if bless:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text)
            golden = "blessed"
        elif not path.exists():
            golden = "missing"
            status, detail = MISMATCH, "no golden file; rerun with --bless"
        elif path.read_text() != text:
            golden = "changed"
            status = MISMATCH
            detail = (detail + "; " if detail else "") + "canonical text differs from golden file"
        else:
            golden = "ok"
        results.append(CaseResult(case.id, case.target, status, detail, golden, elapsed))
    return results


__all__ = ["Case", "CaseResult", "Context", "Outcome", "build_cases", "compare", "golden_path",
           "run_cases", "select"]
