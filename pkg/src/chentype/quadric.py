"""Quadrics ``z^2 - a x^2 - b y^2 = c`` (kind I) and ``z = (a x^2 + b y^2)/2`` (kind II)."""

from dataclasses import dataclass
from math import factorial, prod

from .algebra import Expr, differentiate, param, rational_roots, scalar, substitute, sym
from .algebra.scalars import format_scalar
from .errors import ParameterConstraintError
from .finite_type import Certificate, ClassificationReport, CrossCheck, classify
from .geometry import (SurfaceChart, beltrami_operator, first_form, position_identity_check,
                       quadric1, quadric2, third_form)
from .geometry.catalog import U, V
from .geometry.operator import apply

KMAX_LEDGER = 3


@dataclass(eq=False)
class QuadricKindI:
    """Kind-I quadric on the graph chart ``(u, v, W)``, ``W^2 = omega``.

    Parameters left as ``None`` are symbolic.
    """

    chart: SurfaceChart
    a: Expr
    b: Expr
    c: Expr
    values: dict

    @property
    def symbolic(self):
        return any(v is None for v in self.values.values())

    @property
    def env(self):
        return self.chart.env

    @property
    def omega(self):
        u, v = sym(U), sym(V)
        return self.c + self.a * u * u + self.b * v * v

    @property
    def T(self):
        a, b, c = self.a, self.b, self.c
        u, v = sym(U), sym(V)
        return c + a * (a + 1) * u * u + b * (b + 1) * v * v

    def ABC(self):
        a, b, c, om = self.a, self.b, self.c, self.omega
        u, v = sym(U), sym(V)
        A = a * a * u * u * v * v + (a * u * u + c) ** 2 + a * a * u * u * om
        B = u * v * (c * (a + b) + a * b * (u * u + v * v + om))
        C = b * b * u * u * v * v + (b * v * v + c) ** 2 + b * b * v * v * om
        return A, B, C


def _param_expr(name, value):
    return sym(param(name)) if value is None else Expr.const(scalar(value))


def kind1(a=None, b=None, c=None):
    chart = quadric1(a, b, c)
    return QuadricKindI(chart, _param_expr("a", a), _param_expr("b", b), _param_expr("c", c),
                        {"a": a, "b": b, "c": c})


@dataclass(eq=False)
class QuadricKindII:
    chart: SurfaceChart
    a: Expr
    b: Expr
    values: dict

    @property
    def symbolic(self):
        return any(v is None for v in self.values.values())

    @property
    def env(self):
        return self.chart.env

    @property
    def g(self):
        u, v = sym(U), sym(V)
        return 1 + self.a ** 2 * u * u + self.b ** 2 * v * v


def kind2(a=None, b=None):
    chart = quadric2(a, b)
    return QuadricKindII(chart, _param_expr("a", a), _param_expr("b", b), {"a": a, "b": b})


def for_chart(chart):
    family = chart.metadata.get("family")
    if family == "quadric1":
        m = chart.metadata
        return QuadricKindI(chart, _param_expr("a", m["a"]), _param_expr("b", m["b"]),
                            _param_expr("c", m["c"]), {k: m[k] for k in "abc"})
    if family == "quadric2":
        m = chart.metadata
        return QuadricKindII(chart, _param_expr("a", m["a"]), _param_expr("b", m["b"]),
                             {k: m[k] for k in "ab"})
    raise ParameterConstraintError(f"{chart.name} is not a quadric chart")


def operator(q):
    return q.chart.cached("op3", lambda: beltrami_operator(third_form(q.chart), q.env))


# -- kind I closed forms ---------------------------------------------------------

def kind1_third_form(q):
    """III entries ``a^2 C, -ab B, b^2 A`` over ``omega T^2``."""
    A, B, C = q.ABC()
    w = q.omega * q.T ** 2
    return (q.a ** 2 * C / w, -q.a * q.b * B / w, q.b ** 2 * A / w)


def _d(q, e, x):
    return differentiate(e, x, q.env)


def kind1_prereduction(q):
    """The five coefficients before the bracketed groups are simplified."""
    a, b, c, om, T = q.a, q.b, q.c, q.omega, q.T
    A, B, C = q.ABC()
    u, v = sym(U), sym(V)
    k = -T / (a * a * b * b * c * c)
    k2 = 1 / (a * a * b * b * c * c)
    return {
        "uu": k * b * b * A,
        "uv": k * 2 * a * b * B,
        "vv": k * a * a * C,
        "u": (k * b * (b * _d(q, A, U) + a * _d(q, B, V)) - k * a * b * b / om * (u * A + v * B)
              + k2 * a * b * b * ((a + 1) * u * A + (b + 1) * v * B)),
        "v": (k * a * (a * _d(q, C, V) + b * _d(q, B, U)) - k * a * a * b / om * (u * B + v * C)
              + k2 * a * a * b * ((b + 1) * v * C + (a + 1) * u * B)),
    }


def kind1_identities(q):
    """Six polynomial identities among ``A, B, C`` used to simplify the operator.

    Returns ``(lhs, rhs)`` pairs.
    """
    a, b, c, om, T = q.a, q.b, q.c, q.omega, q.T
    A, B, C = q.ABC()
    u, v = sym(U), sym(V)
    return [
        (b * _d(q, A, U) + a * _d(q, B, V),
         a * u * (5 * a * b * (a + 1) * u * u + 5 * a * b * (b + 1) * v * v
                  + c * (3 * a * b + 5 * b + a))),
        (a * _d(q, C, V) + b * _d(q, B, U),
         b * v * (5 * a * b * (a + 1) * u * u + 5 * a * b * (b + 1) * v * v
                  + c * (3 * a * b + 5 * a + b))),
        (u * A + v * B, (c + a * (a + 1) * u * u + a * (b + 1) * v * v) * u * om),
        (u * B + v * C, (c + b * (a + 1) * u * u + b * (b + 1) * v * v) * v * om),
        ((a + 1) * u * A + (b + 1) * v * B,
         (c * (a + 1) + a * (a + 1) * u * u + a * (b + 1) * v * v) * u * T),
        ((b + 1) * v * C + (a + 1) * u * B,
         (c * (b + 1) + b * (a + 1) * u * u + b * (b + 1) * v * v) * v * T),
    ]


def kind1_leading_parts(q):
    u, v = sym(U), sym(V)
    lu = -q.a * (q.a + 1) ** 2 * u ** 5 / q.c ** 2
    lv = -q.b * (q.b + 1) ** 2 * v ** 5 / q.c ** 2
    return lu, lv


def kind1_f(q):
    """``f1..f5`` read off the derived operator after removing the leading parts."""
    op = operator(q)
    lu, lv = kind1_leading_parts(q)
    u, v = sym(U), sym(V)
    return {"f1": op.c12, "f2": op.c11 - lu * u, "f3": op.c22 - lv * v,
            "f4": op.c1 - 3 * lu, "f5": op.c2 - 3 * lv}


def kind1_f_closed(q):
    """``f1..f5`` as explicit polynomials in ``u, v``."""
    a, b, c = q.a, q.b, q.c
    u, v = sym(U), sym(V)
    P = (a + 1) * (b + 1) * (a + b)
    f1 = (-2 * u * v * (a * (a + 1) ** 2 / c ** 2 * u ** 4
                        + (a + 1) * (a + a * b + 2 * b) / (b * c) * u ** 2 + (a + b + a * b) / (a * b))
          - 2 * u * v * (b * (b + 1) ** 2 / c ** 2 * v ** 4
                         + (b + 1) * (b + a * b + 2 * a) / (a * c) * v ** 2)
          - 2 * u * v * (P / c ** 2 * u ** 2 * v ** 2))
    f2 = (-(a + 1) * (a + 3) / c * u ** 4 - (2 * a + 3) / a * u ** 2 - c / a ** 2
          - P / c ** 2 * u ** 4 * v ** 2 - b * (b + 1) ** 2 / c ** 2 * u ** 2 * v ** 4
          - (b + 1) * (a + a * b + 2 * b) / (a * c) * u ** 2 * v ** 2 - b * (b + 1) / a ** 2 * v ** 2)
    f3 = (-(b + 1) * (b + 3) / c * v ** 4 - (2 * b + 3) / b * v ** 2 - c / b ** 2
          - P / c ** 2 * u ** 2 * v ** 4 - a * (a + 1) ** 2 / c ** 2 * u ** 4 * v ** 2
          - (a + 1) * (2 * a + a * b + b) / (b * c) * u ** 2 * v ** 2 - a * (a + 1) / b ** 2 * u ** 2)
    f4 = (-(a + 1) * (a + 6 * b + 2 * a * b) / (b * c) * u ** 3 - (2 * a * b + a + 3 * b) / (a * b) * u
          - 3 * P / c ** 2 * u ** 3 * v ** 2 - 3 * b * (b + 1) ** 2 / c ** 2 * u * v ** 4
          - (b + 1) * (4 * a + 2 * a * b + 3 * b) / (a * c) * u * v ** 2)
    f5 = (-(b + 1) * (6 * a + b + 2 * a * b) / (a * c) * v ** 3 - (2 * a * b + 3 * a + b) / (a * b) * v
          - 3 * P / c ** 2 * u ** 2 * v ** 3 - 3 * a * (a + 1) ** 2 / c ** 2 * u ** 4 * v
          - (a + 1) * (3 * a + 2 * a * b + 4 * b) / (b * c) * u ** 2 * v)
    return {"f1": f1, "f2": f2, "f3": f3, "f4": f4, "f5": f5}


def kind1_operator(q):
    """The derived operator; raises unless it reproduces the reduced layout."""
    if not q.symbolic and (q.a * q.b).is_zero():
        raise ParameterConstraintError("kind-I quadric needs a*b != 0")
    return operator(q)


# -- kind II closed forms --------------------------------------------------------

def kind2_third_form(q):
    a, b, g = q.a, q.b, q.g
    u, v = sym(U), sym(V)
    return (a * a / g ** 2 * (1 + b * b * v * v), -a * a * b * b / g ** 2 * u * v,
            b * b / g ** 2 * (1 + a * a * u * u))


def kind2_prereduction(q):
    a, b, g = q.a, q.b, q.g
    u, v = sym(U), sym(V)
    return {"uu": -g * (1 + a * a * u * u) / (a * a), "uv": -2 * u * v * g,
            "vv": -g * (1 + b * b * v * v) / (b * b), "u": -2 * u * g, "v": -2 * v * g}


def kind2_leading_parts(q):
    u, v = sym(U), sym(V)
    return -q.a ** 2 * u ** 3, -q.b ** 2 * v ** 3


def kind2_f(q):
    """``f1..f5`` with the sign convention ``Delta = ... - f1 d_uv - ...``."""
    op = operator(q)
    lu, lv = kind2_leading_parts(q)
    u, v = sym(U), sym(V)
    return {"f1": -op.c12, "f2": -(op.c11 - lu * u), "f3": -(op.c22 - lv * v),
            "f4": -(op.c1 - 2 * lu), "f5": -(op.c2 - 2 * lv)}


def kind2_f_closed(q):
    a, b, g = q.a, q.b, q.g
    u, v = sym(U), sym(V)
    return {
        "f1": 2 * u * v * g,
        "f2": 2 * u * u + b * b * u * u * v * v + (1 + b * b * v * v) / (a * a),
        "f3": 2 * v * v + a * a * u * u * v * v + (1 + a * a * u * u) / (b * b),
        "f4": 2 * u * (1 + b * b * v * v),
        "f5": 2 * v * (1 + a * a * u * u),
    }


def kind2_operator(q):
    for name, val in q.values.items():
        if val is not None and scalar(val) <= 0:
            raise ParameterConstraintError(f"kind-II quadric needs a, b > 0 (got {name}={val})")
    return operator(q)


def f_degrees(fs):
    """Degrees in ``u, v``; parameters count as coefficients."""
    return {k: v.total_degree((U, V)) for k, v in fs.items()}


# -- ledgers ---------------------------------------------------------------------

def _vars(direction):
    return (U, V) if direction == "u" else (V, U)


def predicted_leading(q, k, direction="u"):
    """Closed-form top coefficient and degree of ``Delta^k`` applied to ``u`` (or ``v``)."""
    p = q.a if direction == "u" else q.b
    if isinstance(q, QuadricKindI):
        odd = prod(2 * i - 1 for i in range(1, 2 * k + 1))
        return (-1) ** k * odd * p ** k * (p + 1) ** (2 * k) / q.c ** (2 * k), 4 * k + 1
    return (-1) ** k * factorial(2 * k) * p ** (2 * k), 2 * k + 1


def remainder_bound(q, k):
    return 4 * k if isinstance(q, QuadricKindI) else 2 * k


@dataclass(frozen=True)
class LedgerEntry:
    k: int
    direction: str
    iterate: Expr
    slice: Expr
    leading_coefficient: Expr
    leading_degree: int
    remainder_degree: float
    expected_coefficient: Expr
    expected_degree: int
    bound: int

    @property
    def matches(self):
        return (self.leading_coefficient == self.expected_coefficient
                and self.remainder_degree <= self.bound)

    def to_json(self):
        rem = self.remainder_degree
        return {"k": self.k, "leading_coefficient": self.leading_coefficient.to_text(),
                "leading_degree": self.leading_degree,
                "remainder_degree": None if rem == float("-inf") else int(rem)}


def _slice(q, f, direction):
    main, other = _vars(direction)
    return substitute(f, {other: Expr()})


def ledger_entry(q, k, f, direction="u"):
    main, _ = _vars(direction)
    sl = _slice(q, f, direction)
    coeff, deg = predicted_leading(q, k, direction)
    lead = sl.coeff_in(main, deg)
    rest = sl - lead * sym(main) ** deg
    return LedgerEntry(k, direction, f, sl, lead, deg, rest.degree_in(main), coeff, deg,
                       remainder_bound(q, k))


def iterate_ledger(q, k_max=KMAX_LEDGER, direction="u"):
    """Ledger of ``Delta^k u`` (or ``v``) for ``k = 1..k_max``."""
    op = operator(q)
    main, _ = _vars(direction)
    f = sym(main)
    out = []
    for k in range(1, k_max + 1):
        f = apply(op, f)
        out.append(ledger_entry(q, k, f, direction))
    return out


def kind1_iterate_u(q, k):
    return iterate_ledger(q, k, "u")[-1]


def kind1_iterate_v(q, k):
    return iterate_ledger(q, k, "v")[-1]


kind2_iterate_u = kind1_iterate_u
kind2_iterate_v = kind1_iterate_v


def recurrence_residual(q, ledger, direction="u"):
    """Check the inductive step of the kind-I leading-term law on consecutive ledger entries.

    For ``g`` a function of one variable the operator reduces to three terms.
    The remainder ``P`` depends on both variables, so the step also picks up
    ``c_vv d_vv P`` (and terms that vanish on the slice).  Returns, for each
    ``k >= 2``, the slice of ``actual - one_variable_step`` and whether it equals
    the sliced ``c_vv d_vv P`` contribution.
    """
    op = operator(q)
    main, other = _vars(direction)
    x = sym(main)
    lu, lv = kind1_leading_parts(q)
    lead_part = lu if direction == "u" else lv
    second = op.c11 if direction == "u" else op.c22
    first = op.c1 if direction == "u" else op.c2
    cross = op.c22 if direction == "u" else op.c11
    f2 = second - lead_part * x
    f4 = first - 3 * lead_part
    d = lambda e, y: differentiate(e, y, q.env)
    rows = []
    for prev, cur in zip(ledger, ledger[1:]):
        k = cur.k
        P_prev = prev.iterate - prev.expected_coefficient * x ** prev.expected_degree
        P_cur = cur.iterate - cur.expected_coefficient * x ** cur.expected_degree
        m = prev.expected_coefficient
        g = x ** (4 * k - 3)
        step = (lead_part * (x * d(d(P_prev, main), main) + 3 * d(P_prev, main))
                + m * f2 * d(d(g, main), main) + m * f4 * d(g, main)
                + f2 * d(d(P_prev, main), main) + f4 * d(P_prev, main))
        residual = substitute(P_cur - step, {other: Expr()})
        missing = substitute(cross * d(d(P_prev, other), other), {other: Expr()})
        rows.append((k, residual, residual == missing))
    return rows


def monomial_law(q, d, direction="u"):
    """Top term of the operator applied to ``u^d`` on the slice ``v = 0``.

    Kind I: ``-a (a+1)^2 d (d+2) u^(d+4) / c^2``; kind II: ``-a^2 d (d+1) u^(d+2)``.
    Returns ``(degree, coefficient, expected_coefficient)``.
    """
    main, _ = _vars(direction)
    p = q.a if direction == "u" else q.b
    if isinstance(q, QuadricKindI):
        want, deg = -p * (p + 1) ** 2 * d * (d + 2) / q.c ** 2, d + 4
    else:
        want, deg = -p ** 2 * d * (d + 1), d + 2
    sl = _slice(q, apply(operator(q), sym(main) ** d), direction)
    return deg, sl.coeff_in(main, deg), want, sl.degree_in(main)


# -- classification --------------------------------------------------------------

def _parameter_roots(coeff, name):
    """Rational roots of ``coeff``'s numerator as a polynomial in parameter ``name``."""
    p = param(name)
    num = coeff.num
    if not set(num.free_gens()) <= {p}:
        return None
    coeffs = num.coefficients_in(p)
    top = max(coeffs)
    asc = [coeffs[i].constant_value() if i in coeffs else 0 for i in range(top + 1)]
    roots, _ = rational_roots(asc)
    return [r for r, _ in roots]


def _constraints(q, k_max):
    """Parameter values that make every ledger top coefficient vanish, zero excluded."""
    out = {}
    for direction, name in (("u", "a"), ("v", "b")):
        common = None
        for entry in iterate_ledger(q, k_max, direction):
            roots = _parameter_roots(entry.leading_coefficient, name)
            if roots is None:
                continue
            common = set(roots) if common is None else common & set(roots)
        out[name] = sorted(common or ())
    return out


def kind1_classify(q, k_max=4):
    if q.symbolic:
        cons = _constraints(q, min(k_max, KMAX_LEDGER))
        allowed = {k: [r for r in v if r != 0] for k, v in cons.items()}
        rep = ClassificationReport("quadric1 (symbolic)", k_max, "constraints",
                                   constraints=allowed)
        rep.notes.append("finite III-type forces " + " and ".join(
            f"{k} = {format_scalar(r)}" for k, v in allowed.items() for r in v)
            + " (the sphere); the value 0 is excluded by a*b != 0")
        rep.cross_checks.append(CrossCheck("constraint is a = b = -1",
                                           allowed == {"a": [-1], "b": [-1]}))
        return rep
    return classify(q.chart, k_max)


def kind2_classify(q, k_max=4):
    cons = _constraints(kind2() if not q.symbolic else q, min(k_max, KMAX_LEDGER))
    note = ("no finite III-type: forces " + " and ".join(
        f"{k} = {', '.join(format_scalar(r) for r in v)}" for k, v in cons.items())
        + ", contradiction with a, b > 0")
    if q.symbolic:
        rep = ClassificationReport("quadric2 (symbolic)", k_max, "constraints", constraints=cons)
        rep.notes.append(note)
        rep.cross_checks.append(CrossCheck("constraint is a = b = 0",
                                           cons == {"a": [0], "b": [0]}))
        return rep
    rep = classify(q.chart, k_max)
    rep.notes.append(note)
    return rep


def _ledger_certificate(q, iterates, direction):
    main, _ = _vars(direction)
    idx = 0 if direction == "u" else 1
    degs, leads = [], []
    for vec in iterates[1:]:
        sl = _slice(q, vec[idx], direction)
        d = sl.degree_in(main)
        if d in (float("inf"), float("-inf")):
            return None
        degs.append(int(d))
        leads.append(sl.coeff_in(main, d))
    var = "u" if direction == "u" else "v"
    other = "v" if direction == "u" else "u"
    return Certificate(var, tuple(degs), tuple(leads),
                       f"on {other} = 0 the top {var}-degree of the iterates grows with a "
                       "nonzero coefficient, so no constant-coefficient relation exists")


def kind1_certificate(chart, iterates):
    q = for_chart(chart)
    if q.symbolic:
        return None
    if q.a != -1:
        return _ledger_certificate(q, iterates, "u")
    if q.b != -1:
        return _ledger_certificate(q, iterates, "v")
    return None


def kind2_certificate(chart, iterates):
    return _ledger_certificate(for_chart(chart), iterates, "u")


def kind1_checks(chart, iterates, report):
    q = for_chart(chart)
    sphere = not q.symbolic and q.a == -1 and q.b == -1
    out = [CrossCheck("relation iff a = b = -1", sphere == (report.relation is not None))]
    if sphere:
        one, three = first_form(chart), third_form(chart)
        out.append(CrossCheck("III = I / c", three == one.scaled(1 / q.c, "III")))
        report.qualifier = "(sphere)"
    holds, *_ = position_identity_check(chart)
    out.append(CrossCheck("position identity", holds))
    return out


def kind2_checks(chart, iterates, report):
    holds, *_ = position_identity_check(chart)
    return [CrossCheck("no relation", report.relation is None),
            CrossCheck("position identity", holds)]


__all__ = [
    "KMAX_LEDGER", "LedgerEntry", "QuadricKindI", "QuadricKindII", "U", "V", "f_degrees",
    "for_chart", "iterate_ledger", "kind1", "kind1_certificate", "kind1_checks",
    "kind1_classify", "kind1_f", "kind1_f_closed", "kind1_identities", "kind1_iterate_u",
    "kind1_iterate_v", "kind1_leading_parts", "kind1_operator", "kind1_prereduction",
    "kind1_third_form", "kind2", "kind2_certificate", "kind2_checks", "kind2_classify",
    "kind2_f", "kind2_f_closed", "kind2_iterate_u", "kind2_iterate_v", "kind2_leading_parts",
    "kind2_operator", "kind2_prereduction", "kind2_third_form", "predicted_leading",
    "ledger_entry", "monomial_law", "operator", "recurrence_residual",
]
