"""Second-order operators of Beltrami type and their application."""

from dataclasses import dataclass

from ..algebra import DerivationEnv, Expr, SqrtExtension, differentiate, ext_differentiate
from ..algebra.sqrtext import ExtElement
from ..errors import DegenerateChartError, WResidueError
from .forms import FundamentalForm, dot


@dataclass(frozen=True, eq=False)
class BeltramiOperator:
    """``c11 d11 + c12 d12 + c22 d22 + c1 d1 + c2 d2`` in the chart variables."""

    c11: Expr
    c12: Expr
    c22: Expr
    c1: Expr
    c2: Expr
    env: DerivationEnv
    label: str = "Delta"

    @property
    def vars(self):
        return self.env.chart_vars

    def coefficients(self):
        return {"11": self.c11, "12": self.c12, "22": self.c22, "1": self.c1, "2": self.c2}

    def __eq__(self, other):
        if not isinstance(other, BeltramiOperator):
            return NotImplemented
        return all(a == b for a, b in zip(self.coefficients().values(),
                                          other.coefficients().values()))

    __hash__ = object.__hash__

    def __call__(self, f):
        return apply(self, f)

    def to_text(self):
        u, v = (x.text for x in self.vars)
        names = {"11": f"d{u}{u}", "12": f"d{u}{v}", "22": f"d{v}{v}", "1": f"d{u}", "2": f"d{v}"}
        return "\n".join(f"[{names[k]}] {c}" for k, c in self.coefficients().items())

    def latex(self):
        u, v = (x.latex() for x in self.vars)
        ops = {
            "11": f"\\frac{{\\partial^2}}{{\\partial {u}^2}}",
            "12": f"\\frac{{\\partial^2}}{{\\partial {u}\\partial {v}}}",
            "22": f"\\frac{{\\partial^2}}{{\\partial {v}^2}}",
            "1": f"\\frac{{\\partial}}{{\\partial {u}}}",
            "2": f"\\frac{{\\partial}}{{\\partial {v}}}",
        }
        return " + ".join(f"\\left({c.latex()}\\right){ops[k]}"
                          for k, c in self.coefficients().items() if c)


def beltrami_operator(form: FundamentalForm, env: DerivationEnv, label=None) -> BeltramiOperator:
    """Expand ``-(1/sqrt e) d_j(sqrt e e^{ij} d_i f)`` into five coefficients.

    ``sqrt e`` is adjoined as a square root; the first-order coefficients
    must come out free of it, and this is checked.
    """
    e = form.det()
    if e.is_zero():
        raise DegenerateChartError(f"form {form.label} is degenerate")
    inv = form.inverse()
    up = ((inv[0], inv[1]), (inv[1], inv[2]))
    ext = SqrtExtension(e, "sqrt_e")
    root = ext.root()
    x = env.chart_vars
    firsts = []
    for i in range(2):
        total = ext.element()
        for j in range(2):
            total = total + ext_differentiate(root * up[i][j], x[j], env)
        coef = -(total / root)
        if not coef.is_rational():
            raise WResidueError(f"first-order coefficient {i + 1} kept a square root")
        firsts.append(coef.p)
    return BeltramiOperator(-up[0][0], -2 * up[0][1], -up[1][1], firsts[0], firsts[1], env,
                            label or f"Delta^{form.label}")


def apply(op: BeltramiOperator, f):
    """Apply the operator to an Expr (or an extension element)."""
    u, v = op.vars
    env = op.env
    diff = ext_differentiate if isinstance(f, ExtElement) else differentiate
    fu = diff(f, u, env)
    fv = diff(f, v, env)
    out = None
    for c, g in ((op.c1, fu), (op.c2, fv)):
        if c and not g.is_zero():
            out = g * c if out is None else out + g * c
    for c, g, d in ((op.c11, fu, u), (op.c12, fu, v), (op.c22, fv, v)):
        if c and not g.is_zero():
            h = diff(g, d, env)
            if not h.is_zero():
                out = h * c if out is None else out + h * c
    if out is None:
        return f * 0
    return out


def apply_vector(op, chart):
    return tuple(apply(op, c) for c in chart.components)


def iterate(op, f, k):
    """``op`` applied ``k`` times; ``iterate(op, f, 0) == f``."""
    for _ in range(k):
        f = apply(op, f)
    return f


def iterates(op, f, k):
    """``[f, op f, ..., op^k f]``."""
    out = [f]
    for _ in range(k):
        out.append(apply(op, out[-1]))
    return out


def first_beltrami(form: FundamentalForm, f, h, env):
    """``e^{ij} d_i f d_j h`` for Exprs or extension elements."""
    i11, i12, i22 = form.inverse()
    u, v = env.chart_vars
    fu, fv = ext_differentiate(f, u, env), ext_differentiate(f, v, env)
    hu, hv = ext_differentiate(h, u, env), ext_differentiate(h, v, env)
    return fu * hu * i11 + (fu * hv + fv * hu) * i12 + fv * hv * i22


def position_identity_check(chart):
    """Compare ``Delta x`` with ``grad(2H/K, n) - (2H/K) n`` componentwise.

    Both sides are built from III.  Flipping the normal flips ``H`` and ``n``
    together, so the right side does not depend on the orientation.
    Returns ``(holds, lhs, rhs)``.
    """
    from .forms import gauss_curvature, mean_curvature, third_form, unit_normal
    three = third_form(chart)
    op = beltrami_operator(three, chart.env)
    lhs = apply_vector(op, chart)
    f = mean_curvature(chart) * 2 / gauss_curvature(chart)
    rhs = []
    for nk in unit_normal(chart):
        z = first_beltrami(three, f, nk, chart.env) - f * nk
        rhs.append(z.rational())
    return all((a - b).is_zero() for a, b in zip(lhs, rhs)), lhs, tuple(rhs)


def is_w_free(op: BeltramiOperator):
    """True when no coefficient carries a chart root symbol either."""
    return all(not c.roots() for c in op.coefficients().values())


__all__ = [
    "BeltramiOperator", "apply", "apply_vector", "beltrami_operator", "dot", "first_beltrami",
    "is_w_free", "iterate", "iterates", "position_identity_check",
]
