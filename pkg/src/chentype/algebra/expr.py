"""Normalized rational functions.

An :class:`Expr` is ``num/den`` with both parts :class:`MultiPoly`.  The
canonical form has

* root symbols reduced below exponent 2 in both parts,
* a denominator free of root symbols (rationalized by conjugates),
* numerator and denominator cancelled by their GCD,
* a monic denominator (leading coefficient 1 in graded lex order).
"""

from math import inf

from gmpy2 import is_square, isqrt, mpq

from ..errors import EvaluationPoleError, MalformedExpressionError
from .gcd import poly_divexact, poly_gcd
from .poly import MultiPoly, _unify
from .scalars import scalar
from .symbols import Indeterminate, Kind

_ONE_POLY = MultiPoly.const(1)


def _normalize(num, den):
    num = num.reduce_roots()
    den = den.reduce_roots()
    if den.is_zero():
        raise MalformedExpressionError("zero denominator")
    if num.is_zero():
        return MultiPoly(), _ONE_POLY
    # rationalize: den becomes root-free
    roots = [w for w in den.free_gens() if w.kind is Kind.ROOT]
    for w in roots:
        if not den.involves(w):
            continue
        conj = den.conjugate(w)
        num = (num * conj).reduce_roots()
        den = (den * conj).reduce_roots()
        if den.is_zero():
            raise MalformedExpressionError(f"denominator vanishes after rationalizing {w}")
    if den.is_constant():
        c = den.constant_value()
        return (num if c == 1 else num.scale(1 / c)), _ONE_POLY
    if den.is_monomial():
        gens, a, b = _unify(num, den)
        (dm, dc), = b.items()
        nm = MultiPoly(gens, a).monomial_content()
        m = tuple(min(x, y) for x, y in zip(nm, dm))
        inv = 1 / dc
        if any(m):
            a = {tuple(x - y for x, y in zip(e, m)): c * inv for e, c in a.items()}
            dm = tuple(x - y for x, y in zip(dm, m))
        else:
            a = {e: c * inv for e, c in a.items()}
        num = MultiPoly(gens, a)
        den = MultiPoly(gens, {dm: mpq(1)})
        if not any(dm):
            den = _ONE_POLY
        return num, den
    if num.is_constant():
        g = None
    else:
        g = poly_gcd(num, den)
    if g is not None and not g.is_constant():
        num = poly_divexact(num, g)
        den = poly_divexact(den, g)
    lc = den.leading_coefficient()
    if lc != 1:
        inv = 1 / lc
        num = num.scale(inv)
        den = den.scale(inv)
    if den.is_constant():
        den = _ONE_POLY
    return num, den


class Expr:
    __slots__ = ("num", "den")

    def __init__(self, num=None, den=None, *, normalized=False):
        if num is None:
            num = MultiPoly()
        elif not isinstance(num, MultiPoly):
            num = MultiPoly.const(num)
        if den is None:
            den = _ONE_POLY
        elif not isinstance(den, MultiPoly):
            den = MultiPoly.const(den)
        if not normalized:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den

    # -- constructors -----------------------------------------------------------
    @classmethod
    def const(cls, c):
        return cls(MultiPoly.const(c), normalized=True)

    @classmethod
    def symbol(cls, x: Indeterminate):
        return cls(MultiPoly.var(x), normalized=x.kind is not Kind.ROOT)

    @classmethod
    def from_poly(cls, p: MultiPoly):
        return cls(p)

    # -- predicates -------------------------------------------------------------
    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_polynomial(self):
        return self.den.is_constant()

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num.constant_value() / self.den.constant_value()

    def free_symbols(self):
        """All indeterminates occurring, including those inside root radicands."""
        out = set()
        todo = list(self.num.free_gens()) + list(self.den.free_gens())
        while todo:
            g = todo.pop()
            if g in out:
                continue
            out.add(g)
            if g.kind is Kind.ROOT:
                todo.extend(g.radicand.free_gens())
        return out

    def roots(self):
        return {g for g in self.num.free_gens() if g.kind is Kind.ROOT}

    # -- arithmetic -------------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, Expr):
            return other
        if isinstance(other, MultiPoly):
            return Expr(other)
        return Expr.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        d1, d2 = self.den, other.den
        if d1 == d2:
            if d1.is_constant():
                return Expr(self.num + other.num, normalized=True)
            return Expr(self.num + other.num, d1)
        if d1.is_monomial() and d2.is_monomial():
            gens, a, b = _unify(d1, d2)
            (e1, _), = a.items()
            (e2, _), = b.items()
            lcm = tuple(max(x, y) for x, y in zip(e1, e2))
            f1 = MultiPoly(gens, {tuple(x - y for x, y in zip(lcm, e1)): mpq(1)})
            f2 = MultiPoly(gens, {tuple(x - y for x, y in zip(lcm, e2)): mpq(1)})
            return Expr(self.num * f1 + other.num * f2, MultiPoly(gens, {lcm: mpq(1)}))
        g = poly_gcd(d1, d2)
        if g.is_constant():
            return Expr(self.num * d2 + other.num * d1, d1 * d2)
        c1 = poly_divexact(d1, g)
        c2 = poly_divexact(d2, g)
        return Expr(self.num * c2 + other.num * c1, d1 * c2)

    __radd__ = __add__

    def __neg__(self):
        return Expr(-self.num, self.den, normalized=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, (Expr, MultiPoly)):
            c = scalar(other)
            if not c:
                return Expr()
            return Expr(self.num.scale(c), self.den, normalized=True)
        other = self._coerce(other)
        if self.num.is_zero() or other.num.is_zero():
            return Expr()
        if self.den.is_constant() and other.den.is_constant():
            p = self.num * other.num
            if not p.root_gens():
                return Expr(p, normalized=True)
        return Expr(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise MalformedExpressionError("division by zero expression")
        return Expr(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.num.is_zero():
            raise MalformedExpressionError("division by zero expression")
        return Expr(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k):
        if not isinstance(k, int):
            raise TypeError("integer exponents only")
        if k < 0:
            return self.inverse() ** (-k)
        if self.den.is_constant() and not self.num.root_gens():
            return Expr(self.num ** k, normalized=True)
        return Expr(self.num ** k, self.den ** k)

    # -- equality ---------------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Expr):
            try:
                other = self._coerce(other)
            except TypeError:
                return NotImplemented
        if self.num == other.num and self.den == other.den:
            return True
        # cross-multiplication decides equality even without full cancellation
        return (self.num * other.den - other.num * self.den).reduce_roots().is_zero()

    def __hash__(self):
        return hash((self.num, self.den))

    # -- structure --------------------------------------------------------------
    def degree_in(self, x):
        """Degree in ``x``; ``inf`` if ``x`` occurs in the denominator, ``-inf`` for 0."""
        if self.den.involves(x):
            return inf
        return self.num.degree_in(x)

    def total_degree(self, vars=None):
        """Polynomial total degree (in ``vars`` if given); ``inf`` if they reach the denominator."""
        if vars is None:
            if not self.den.is_constant():
                return inf
        elif any(self.den.involves(x) for x in vars):
            return inf
        return self.num.total_degree(vars)

    def coeff_in(self, x, k):
        """Coefficient of ``x**k`` (requires ``x`` free of the denominator)."""
        if self.den.involves(x):
            raise ValueError(f"{x} occurs in the denominator")
        return Expr(self.num.coeff_in(x, k), self.den)

    def coefficients_in(self, x):
        if self.den.involves(x):
            raise ValueError(f"{x} occurs in the denominator")
        return {k: Expr(p, self.den) for k, p in self.num.coefficients_in(x).items()}

    def leading_in(self, x):
        """``(degree, coefficient)`` of the top power of ``x``."""
        d = self.degree_in(x)
        if d in (inf, -inf):
            raise ValueError("no polynomial leading term")
        return d, self.coeff_in(x, d)

    def numerator(self):
        return Expr(self.num)

    def denominator(self):
        return Expr(self.den, normalized=True)

    def to_text(self):
        from .textio import to_text
        return to_text(self)

    def latex(self):
        from .textio import to_latex
        return to_latex(self)

    def __repr__(self):
        return f"Expr({self.to_text()})"

    def __str__(self):
        return self.to_text()


def sym(x):
    return Expr.symbol(x)


def const(c):
    return Expr.const(c)


def normalize(e: Expr) -> Expr:
    """Canonical form of ``e`` (idempotent; Exprs are always stored normalized)."""
    return Expr(e.num, e.den)


def degree_in(e: Expr, x: Indeterminate):
    return e.degree_in(x)


# -- substitution ---------------------------------------------------------------

def _sqrt_rational(q):
    q = mpq(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    if is_square(n) and is_square(d):
        return mpq(isqrt(n), isqrt(d))
    return None


def _root_value(w, bindings):
    """Value of root ``w`` after its radicand is specialized by ``bindings``."""
    rad = _eval_poly(w.radicand, bindings)
    if rad.is_zero():
        return Expr()
    if rad.is_constant():
        r = _sqrt_rational(rad.constant_value())
        if r is not None:
            return Expr.const(r)
    # sqrt(p/q) = sqrt(p*q)/q
    new_rad = rad.num * rad.den
    w2 = w.with_radicand(new_rad)
    return Expr(MultiPoly.var(w2), rad.den)


def _eval_poly(p, bindings):
    bindings = dict(bindings)
    for w in p.root_gens():
        if w in bindings:
            continue
        if any(g in bindings for g in w.radicand.free_gens()):
            bindings[w] = _root_value(w, bindings)
    active = {g: v for g, v in bindings.items() if g in p.gens}
    if not active:
        return Expr(p)
    if all(v.den.is_constant() for v in active.values()):
        polys = {g: v.num.scale(1 / v.den.constant_value()) for g, v in active.items()}
        return Expr(p.substitute_poly(polys))
    # homogenize rational values: x = a/b  ->  sum c * a^k b^(D-k) / b^D
    out = MultiPoly()
    degs = {g: p.degree_in(g) for g in active}
    groups = {}
    idx = [(p.gens.index(g), g) for g in active]
    for e, c in p.terms.items():
        key = tuple(e[i] for i, _ in idx)
        rest = tuple(0 if any(i == j for j, _ in idx) else k for i, k in enumerate(e))
        groups.setdefault(key, {})[rest] = c
    cache = {}

    def pw(poly, k, tag):
        if (tag, k) not in cache:
            cache[(tag, k)] = poly ** k
        return cache[(tag, k)]

    for key, t in groups.items():
        term = MultiPoly(p.gens, t)
        for (i, g), k in zip(idx, key):
            v = active[g]
            D = degs[g]
            term = term * pw(v.num, k, (g, "n")) * pw(v.den, D - k, (g, "d"))
        out = out + term
    den = MultiPoly.const(1)
    for g in active:
        den = den * pw(active[g].den, degs[g], (g, "d"))
    return Expr(out, den)


def substitute(e: Expr, bindings) -> Expr:
    """Replace indeterminates by Exprs (or scalars); raises on a new pole."""
    b = {}
    for k, v in bindings.items():
        b[k] = v if isinstance(v, Expr) else Expr._coerce(v)
    num = _eval_poly(e.num, b)
    den = _eval_poly(e.den, b)
    if den.is_zero():
        raise EvaluationPoleError(f"denominator of {e} vanishes under substitution")
    return num / den


def vanishing(e: Expr, base: str):
    """Bindings sending the differential symbol ``base`` and all its derivatives to 0."""
    return {g: Expr() for g in e.free_symbols() if g.kind is Kind.DIFF and g.name == base}
