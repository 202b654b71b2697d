"""Ruled surfaces ``x(s, t) = sigma(s) + t rho(s)`` and their III-operator."""

from dataclasses import dataclass
from math import inf, prod

from gmpy2 import mpq

from .algebra import Expr, differentiate, diff, sym
from .errors import InvalidRuledParametrization, UsageError
from .finite_type import Certificate, CrossCheck, TypeRelation, classify
from .geometry import (SurfaceChart, apply_vector, beltrami_operator, cross, dot, first_form,
                       gauss_curvature, helicoid, mean_curvature, position_identity_check, ruled_generic,
                       third_form)
from .geometry.catalog import S_, T_
from .geometry.operator import apply

S, T = S_, T_
INVARIANTS = ("zeta", "eta", "mu", "nu", "xi", "A")


def _triple(a, b, c):
    return dot(a, cross(b, c))


@dataclass(eq=False)
class RuledSpec:
    """A ruled chart together with its invariants ``zeta, eta, mu, nu, xi, A``.

    In the abstract mode the invariants are free differential symbols and
    ``sigma``, ``rho`` are formal component symbols.
    """

    chart: SurfaceChart
    invariants: dict
    sigma: tuple
    rho: tuple
    concrete: bool

    @property
    def env(self):
        return self.chart.env

    @property
    def name(self):
        return self.chart.name

    def prime(self, e, k=1):
        for _ in range(k):
            e = differentiate(e, S, self.env)
        return e

    @property
    def n(self):
        z, t = self.invariants, sym(T)
        return t * t + 2 * z["eta"] * t + z["zeta"]

    @property
    def m(self):
        z, t = self.invariants, sym(T)
        return z["mu"] * t * t + z["nu"] * t + z["xi"]


def invariants_from_curves(sigma, rho, env):
    """``zeta, eta, mu, nu, xi, A`` from a directrix and a unit ruling direction.

    The orthogonality and unit-speed conditions are checked exactly first.
    """
    d = lambda v: tuple(differentiate(c, S, env) for c in v)
    s1, r1 = d(sigma), d(rho)
    s2, r2 = d(s1), d(r1)
    for label, value, want in (("<sigma', rho> = 0", dot(s1, rho), 0),
                               ("<rho, rho> = 1", dot(rho, rho), 1),
                               ("<rho', rho'> = 1", dot(r1, r1), 1)):
        if value != want:
            raise InvalidRuledParametrization(f"violated {label}: got {value}")
    inv = {
        "zeta": dot(s1, s1),
        "eta": dot(s1, r1),
        "mu": _triple(r1, rho, r2),
        "nu": _triple(s1, rho, r2) + _triple(r1, rho, s2),
        "xi": _triple(s1, rho, s2),
        "A": _triple(s1, rho, r1),
    }
    if inv["A"].is_zero():
        raise InvalidRuledParametrization("A = (sigma', rho, rho') vanishes, so K = 0")
    return inv


def from_curves(sigma, rho, env, name="ruled", metadata=None):
    sigma = tuple(Expr._coerce(c) for c in sigma)
    rho = tuple(Expr._coerce(c) for c in rho)
    inv = invariants_from_curves(sigma, rho, env)
    t = sym(T)
    meta = {"family": "ruled", "sigma": sigma, "rho": rho}
    meta.update(metadata or {})
    chart = SurfaceChart(name, tuple(x + t * y for x, y in zip(sigma, rho)), env, meta)
    return RuledSpec(chart, inv, sigma, rho, True)


def abstract_spec(**overrides):
    """The generic ruled surface; ``overrides`` pin invariants (e.g. ``mu=0``)."""
    chart = ruled_generic(**overrides)
    meta = chart.metadata
    return RuledSpec(chart, meta["invariants"], meta["sigma"], meta["rho"], False)


def spec_for_chart(chart):
    if chart.abstract:
        meta = chart.metadata
        return RuledSpec(chart, meta["invariants"], meta["sigma"], meta["rho"], False)
    if "sigma" not in chart.metadata:
        raise UsageError(f"{chart.name} is not a ruled chart")
    sigma, rho = chart.metadata["sigma"], chart.metadata["rho"]
    return RuledSpec(chart, invariants_from_curves(sigma, rho, chart.env), sigma, rho, True)


# -- the operator ----------------------------------------------------------------

@dataclass(frozen=True)
class RuledOperator:
    """``P1 d_ss + P2 d_st + P3 d_s + P4 d_t + P5 d_tt``."""

    P1: Expr
    P2: Expr
    P3: Expr
    P4: Expr
    P5: Expr
    operator: object

    def coefficients(self):
        return {"P1": self.P1, "P2": self.P2, "P3": self.P3, "P4": self.P4, "P5": self.P5}

    def degrees(self):
        return {k: v.degree_in(T) for k, v in self.coefficients().items()}


def ruled_third_beltrami(spec: RuledSpec) -> RuledOperator:
    op = beltrami_operator(third_form(spec.chart), spec.env)
    return RuledOperator(op.c11, op.c12, op.c1, op.c2, op.c22, op)


def expansion_block(spec):
    """The five coefficients written through ``n``, ``m``, ``A`` and their partials."""
    n, m, A = spec.n, spec.m, spec.invariants["A"]
    nt, mt = differentiate(n, T, spec.env), differentiate(m, T, spec.env)
    ns, ms, A1 = spec.prime(n), spec.prime(m), spec.prime(A)
    A2, A3, A4 = A ** 2, A ** 3, A ** 4
    return {
        "P1": -n / A2,
        "P2": 2 * n * m / A3,
        "P5": -(n * n / A2 + n * m * m / A4),
        "P3": ns / (2 * A2) + n * mt / A3 - m * nt / (2 * A3),
        "P4": (n * ms / A3 - m * ns / (2 * A3) - m * n * A1 / A4 - n * nt / (2 * A2)
               + m * m * nt / (2 * A4) - 2 * n * m * mt / A4),
    }


def _poly_t(coeffs):
    """``sum coeffs[i] t^i``."""
    t = sym(T)
    out = Expr()
    for i, c in enumerate(coeffs):
        if c:
            out = out + c * t ** i
    return out


def closed_forms(spec):
    """P1, P2, P3, P5 as polynomials in ``t`` over the invariants."""
    z = spec.invariants
    Z, E, M, N, X, A = (z[k] for k in INVARIANTS)
    Z1, E1 = spec.prime(Z), spec.prime(E)
    A2 = A * A
    half = Expr.const(1) / 2
    return {
        "P1": -_poly_t([Z, 2 * E, 1]) / A2,
        "P2": 2 * _poly_t([Z * X, 2 * E * X + Z * N, 2 * E * N + X + Z * M, 2 * E * M + N, M])
        / A ** 3,
        "P3": _poly_t([half * Z1 * A - E * X + Z * N, E * N - X + 2 * Z * M + E1 * A,
                       3 * E * M, M]) / A ** 3,
        "P5": -_poly_t([Z * X * X + Z * Z * A2,
                        2 * E * X * X + 2 * Z * N * X + 4 * E * Z * A2,
                        X * X + 4 * E * N * X + 2 * Z * M * X + Z * N * N + 4 * E * E * A2
                        + 2 * Z * A2,
                        2 * N * X + 4 * E * M * X + 2 * E * N * N + 2 * Z * M * N + 4 * E * A2,
                        2 * M * X + N * N + 4 * E * M * N + Z * M * M + A2,
                        2 * M * N + 2 * E * M * M,
                        M * M]) / A ** 4,
    }


CLEAN_P4_POWERS = (5, 3, 0)


def p4_reference_lines(spec):
    """Reference lines of ``A^4 P4`` by power of ``t``.

    Lines 5, 3 and 0 are clean.  Lines 4, 2 and 1 are transcribed literally,
    garbled tokens included (``mu A'^2``, ``xi'^2``, ``zeta''``), so that the
    difference against the derived expansion can be reported term by term.
    """
    z = spec.invariants
    Z, E, M, N, X, A = (z[k] for k in INVARIANTS)
    p = spec.prime
    Z1, Z2, E1, M1, N1, X1, A1 = p(Z), p(Z, 2), p(E), p(M), p(N), p(X), p(A)
    half = Expr.const(1) / 2
    A2 = A * A
    return {
        5: -3 * M * M,
        4: M1 * A - M * A1 * A1,
        3: (N1 * A - N * A1 + 2 * E * M1 * A - 2 * E * M * A1 - E1 * M * A - A2
            - 10 * E * M * N - 2 * M * X - N * N - 4 * Z * M * M),
        2: (Z * M1 * A - Z * M * A1 - half * Z1 * M * A + 2 * E * N1 * A - 2 * E * N * A1
            - E1 * N * A - X * A1 + X1 * X1 - 3 * E * N * N - 6 * E * M * X - 6 * Z * M * N),
        1: (Z * N1 * A - Z * N * A1 - half * Z2 * A - 2 * E * X * A1 - E1 * X * A - Z * A2
            - 2 * E * E * A2 - 2 * Z * N * N + X * X - 2 * E * N * X - 4 * Z * M * X),
        0: (Z * X1 * A - Z * X * A1 - half * Z1 * X * A + E * X * X - Z * E * A2
            - 2 * Z * N * X),
    }


@dataclass(frozen=True)
class LineComparison:
    power: int
    clean: bool
    matches: bool
    derived: Expr
    reference: Expr

    @property
    def difference(self):
        return self.derived - self.reference


def p4_comparison(spec, rop=None):
    rop = rop or ruled_third_beltrami(spec)
    A4 = spec.invariants["A"] ** 4
    scaled = rop.P4 * A4
    out = []
    for power, ref in sorted(p4_reference_lines(spec).items(), reverse=True):
        got = scaled.coeff_in(T, power)
        out.append(LineComparison(power, power in CLEAN_P4_POWERS, got == ref, got, ref))
    return out


def p4_structure(spec, rop=None):
    """Structural facts about P4: degree at most 5 and top coefficient ``-3 mu^2/A^4``."""
    rop = rop or ruled_third_beltrami(spec)
    z = spec.invariants
    deg = rop.P4.degree_in(T)
    top = rop.P4.coeff_in(T, 5)
    return {"degree": deg, "degree_ok": deg <= 5,
            "top_ok": top == -3 * z["mu"] ** 2 / z["A"] ** 4}


# -- Q1 --------------------------------------------------------------------------

def q1_vector(spec, rop=None):
    """``Delta x`` on the position, componentwise."""
    rop = rop or ruled_third_beltrami(spec)
    return apply_vector(rop.operator, spec.chart)


def q1_assembled(spec, rop=None):
    """``P1 sigma'' + P2 rho' + P3 sigma' + P4 rho + (P1 rho'' + P3 rho') t``."""
    rop = rop or ruled_third_beltrami(spec)
    t = sym(T)
    out = []
    for s0, r0 in zip(spec.sigma, spec.rho):
        s1, r1 = spec.prime(s0), spec.prime(r0)
        s2, r2 = spec.prime(s1), spec.prime(r1)
        out.append(rop.P1 * s2 + rop.P2 * r1 + rop.P3 * s1 + rop.P4 * r0
                   + (rop.P1 * r2 + rop.P3 * r1) * t)
    return tuple(out)


def vector_degree(vec, var=T):
    return max(c.degree_in(var) for c in vec)


def q1_top_ok(spec, q1):
    """Is the ``t^5`` part of Q1 equal to ``-3 mu^2 rho / A^4``?"""
    z = spec.invariants
    lead = -3 * z["mu"] ** 2 / z["A"] ** 4
    return all(c.coeff_in(T, 5) == lead * r for c, r in zip(q1, spec.rho))


# -- degree law ------------------------------------------------------------------

@dataclass(frozen=True)
class DegreeWitness:
    d: int
    degree: float
    bound: int

    @property
    def holds(self):
        return self.degree <= self.bound


def degree_growth(spec, d, rop=None):
    """Apply the operator to ``g = g0 + g1 t + ... + gd t^d`` with fresh symbols."""
    if d < 0:
        raise UsageError("d must be non-negative")
    rop = rop or ruled_third_beltrami(spec)
    names = [f"g{i}" for i in range(d + 1)]
    env = spec.env.extend(diff_bases=names)
    op = rop.operator
    op = type(op)(op.c11, op.c12, op.c22, op.c1, op.c2, env, op.label)
    g = _poly_t([sym(diff(n)) for n in names])
    image = apply(op, g)
    w = DegreeWitness(d, image.degree_in(T), d + 4)
    assert w.holds, f"degree {w.degree} exceeds {w.bound}"
    return w


def leading_law(spec, k):
    """Closed form of the ``t^(4k+1)`` part of ``Delta^k x`` (per ``rho``)."""
    z = spec.invariants
    base = -z["mu"] ** 2 / z["A"] ** 4
    return base ** k * prod((4 * i + 1) * (4 * i + 3) for i in range(k))


# -- classification --------------------------------------------------------------

def growth_certificate(chart, iterates):
    degs, leads = [], []
    for vec in iterates[1:]:
        d = vector_degree(vec)
        if d in (inf, -inf):
            return None
        degs.append(int(d))
        leads.append(next(c.coeff_in(T, d) for c in vec if c.degree_in(T) == d))
    return Certificate("t", tuple(degs), tuple(leads),
                       "top t-degree of the iterates grows, so no constant-coefficient "
                       "combination of them can vanish")


def family_checks(chart, iterates, report):
    spec = spec_for_chart(chart)
    if not spec.concrete:
        return _abstract_checks(spec, iterates, report)
    q1 = iterates[1]
    minimal = mean_curvature(chart).is_zero()
    q1_zero = all(c.is_zero() for c in q1)
    holds, *_ = position_identity_check(chart)
    out = [CrossCheck("Q1 = 0 iff H = 0", minimal == q1_zero,
                      f"H = 0: {minimal}, Q1 = 0: {q1_zero}"),
           CrossCheck("position identity", holds),
           CrossCheck("Q1 assembled from P1..P5", all(
               a == b for a, b in zip(q1, q1_assembled(spec))))]
    if q1_zero:
        report.qualifier = "(minimal); helicoid"
    elif report.verdict in ("finite-type", "null-type"):
        out.append(CrossCheck("only helicoids are of finite type", False,
                              "non-minimal ruled chart produced a relation"))
    return out


def _abstract_checks(spec, iterates, report):
    # The formal position ignores the identities tying sigma and rho together,
    # so only the top t-terms carry meaning, and only when mu != 0.
    mu = spec.invariants["mu"]
    if spec.m.is_zero():
        report.certificate = None
        report.relation = TypeRelation(0, (), 1, True, (mpq(0),))
        report.verdict = "null-type"
        report.qualifier = "(minimal); helicoid"
        report.notes.append("m = 0 forces H = 0; a minimal ruled surface is a helicoid, "
                            "on which Delta x = 0")
        witness = helicoid(1)
        return [CrossCheck("helicoid witness has Q1 = 0", all(
            c.is_zero() for c in apply_vector(beltrami_operator(third_form(witness),
                                                                 witness.env), witness)))]
    if mu.is_zero():
        report.certificate = None
        report.verdict = "inconclusive"
        report.notes.append("mu = 0: the formal top terms need a concrete parametrization")
        return []
    tops = [tuple(c.coeff_in(T, 4 * k + 1) for c in vec)
            for k, vec in enumerate(iterates[1:], start=1)]
    law = all(top == tuple(leading_law(spec, k) * r for r in spec.rho)
              for k, top in enumerate(tops, start=1))
    return [CrossCheck("leading law", law, "t^(4k+1) part equals (-mu^2/A^4)^k prod (4i+1)(4i+3) rho")]


def ruled_classification(spec, k_max=4):
    return classify(spec.chart, k_max)


def first_form_matches(spec):
    """``I = n ds^2 + dt^2``."""
    one = first_form(spec.chart)
    return one.e11 == spec.n and one.e12.is_zero() and one.e22 == Expr.const(1)


def curvature_matches(spec):
    """``K = -A^2/n^2``."""
    A = spec.invariants["A"]
    return gauss_curvature(spec.chart) == -A * A / (spec.n * spec.n)


__all__ = [
    "DegreeWitness", "INVARIANTS", "LineComparison", "RuledOperator", "RuledSpec", "S", "T",
    "abstract_spec", "closed_forms", "curvature_matches", "degree_growth", "expansion_block",
    "first_form_matches", "from_curves", "invariants_from_curves", "leading_law",
    "p4_comparison", "p4_reference_lines", "p4_structure", "q1_assembled", "q1_top_ok",
    "q1_vector", "ruled_classification", "ruled_third_beltrami", "spec_for_chart",
    "vector_degree",
]
