"""Derivation rules for the differential ring of a chart."""

from ..errors import UnboundSymbolError
from .expr import Expr
from .poly import MultiPoly
from .symbols import Indeterminate, Kind


class DerivationEnv:
    """Which symbols exist and how each one differentiates.

    ``chart_vars`` are the two coordinates.  Differential symbols (any order)
    depend on ``diff_var`` only: d/d(diff_var) raises the order by one.
    ``rules`` gives explicit derivatives of ``FUNC`` symbols as
    ``{symbol: {direction: Expr}}``; a missing direction means 0.  Root
    symbols differentiate through their radicand, d W = W dR / (2R).
    """

    def __init__(self, chart_vars, params=(), diff_bases=(), diff_var=None, rules=None,
                 roots=()):
        self.chart_vars = tuple(chart_vars)
        self.params = frozenset(params)
        self.diff_bases = frozenset(diff_bases)
        self.diff_var = diff_var
        self.rules = dict(rules or {})
        self.roots = frozenset(roots)
        if self.diff_bases and diff_var is None:
            raise ValueError("differential symbols need a diff_var")
        self._cache = {}

    def extend(self, params=(), diff_bases=(), rules=None, roots=()):
        merged = dict(self.rules)
        merged.update(rules or {})
        return DerivationEnv(self.chart_vars, self.params | set(params),
                             self.diff_bases | set(diff_bases), self.diff_var
                             or (self.chart_vars[0] if diff_bases else None),
                             merged, self.roots | set(roots))

    def knows(self, g: Indeterminate):
        if g.kind is Kind.CHART:
            return g in self.chart_vars
        if g.kind is Kind.PARAM:
            return g in self.params
        if g.kind is Kind.DIFF:
            return g.name in self.diff_bases
        if g.kind is Kind.FUNC:
            return g in self.rules
        return all(self.knows(x) for x in g.radicand.free_gens())

    def derivative_of(self, g: Indeterminate, d: Indeterminate):
        """``d g / d d`` as an Expr, or ``None`` when it is zero."""
        key = (g, d)
        if key in self._cache:
            return self._cache[key]
        if d not in self.chart_vars:
            raise UnboundSymbolError(f"{d} is not a chart variable")
        if not self.knows(g):
            raise UnboundSymbolError(f"no derivation rule for {g}")
        if g.kind is Kind.CHART:
            out = Expr.const(1) if g == d else None
        elif g.kind is Kind.PARAM:
            out = None
        elif g.kind is Kind.DIFF:
            out = Expr.symbol(g.derivative()) if d == self.diff_var else None
        elif g.kind is Kind.FUNC:
            out = self.rules[g].get(d)
            if out is not None and out.is_zero():
                out = None
        else:
            r = Expr(g.radicand)
            dr = differentiate(r, d, self)
            out = None if dr.is_zero() else Expr.symbol(g) * dr / (2 * r)
        self._cache[key] = out
        return out


def _diff_poly(p: MultiPoly, d, env):
    poly_part = MultiPoly()
    rational = []
    for g in p.free_gens():
        dg = env.derivative_of(g, d)
        if dg is None:
            continue
        dp = p.partial(g)
        if dg.den.is_constant() and not g.kind is Kind.ROOT:
            poly_part = poly_part + dp * dg.num
        else:
            rational.append(Expr(dp, normalized=not dp.root_gens()) * dg)
    out = Expr(poly_part)
    for r in rational:
        out = out + r
    return out


def differentiate(e: Expr, d: Indeterminate, env: DerivationEnv) -> Expr:
    """Partial derivative of ``e`` in the chart direction ``d``."""
    if e.den.is_constant():
        return _diff_poly(e.num, d, env)
    dn = _diff_poly(e.num, d, env)
    dd = _diff_poly(e.den, d, env)
    if dd.is_zero():
        return dn / Expr(e.den, normalized=True)
    den = Expr(e.den, normalized=True)
    return (dn * den - Expr(e.num) * dd) / (den * den)
