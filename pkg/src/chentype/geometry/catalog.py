"""Named surface charts."""

from ..algebra import DerivationEnv, Expr, MultiPoly, chart, diff, func, param, root, scalar, sym
from ..errors import ParameterConstraintError, UsageError
from .forms import AbstractChart, FundamentalForm, SurfaceChart

U, V = chart("u"), chart("v")
S_, T_ = chart("s"), chart("t")


def _value(name, given):
    """Rational value, or the symbolic parameter when ``given`` is None."""
    if given is None:
        return sym(param(name)), param(name)
    return Expr.const(scalar(given)), None


def trig_pair(scale=1):
    """Symbols ``C = cos(s/scale)``, ``S = sin(s/scale)`` with ``C^2 = 1 - S^2``."""
    S = func("S")
    Cr = root("C", (1 - MultiPoly.var(S) * MultiPoly.var(S)))
    rules = {S: {S_: Expr.symbol(Cr) / scalar(scale)}}
    return Cr, S, rules


def plane():
    env = DerivationEnv((U, V))
    return SurfaceChart("plane", (sym(U), sym(V), Expr()), env)


def helicoid(h=None):
    """``x(s, t) = (t cos s, t sin s, h s)``."""
    hv, hp = _value("h", h)
    if hp is None and hv.is_zero():
        raise ParameterConstraintError("helicoid needs h != 0")
    C, S, rules = trig_pair()
    env = DerivationEnv((S_, T_), params=[hp] if hp else [], rules=rules)
    t, s = sym(T_), sym(S_)
    comps = (t * sym(C), t * sym(S), hv * s)
    return SurfaceChart("helicoid", comps, env, {"h": h, "family": "ruled", "sigma": (Expr(), Expr(), hv * s),
                                                   "rho": (sym(C), sym(S), Expr())})


def quadric1(a=None, b=None, c=None):
    """``z^2 - a x^2 - b y^2 = c`` as the graph ``(u, v, sqrt(omega))``."""
    av, ap = _value("a", a)
    bv, bp = _value("b", b)
    cv, cp = _value("c", c)
    if ap is None and bp is None and (av * bv).is_zero():
        raise ParameterConstraintError("kind-I quadric needs a*b != 0")
    if a is not None and scalar(a) == 0 or b is not None and scalar(b) == 0:
        raise ParameterConstraintError("kind-I quadric needs a*b != 0")
    if c is not None and scalar(c) <= 0:
        raise ParameterConstraintError("kind-I quadric needs c > 0")
    u, v = sym(U), sym(V)
    omega = cv + av * u * u + bv * v * v
    W = root("W", omega.num)
    env = DerivationEnv((U, V), params=[p for p in (ap, bp, cp) if p])
    comps = (u, v, Expr.symbol(W))
    return SurfaceChart("quadric1", comps, env,
                        {"a": a, "b": b, "c": c, "family": "quadric1", "omega": omega, "W": W,
                         "assumptions": ["a*b != 0", "c > 0", "omega > 0"]})


def sphere(c=1):
    """Kind-I quadric with ``a = b = -1``: the sphere of radius sqrt(c)."""
    ch = quadric1(-1, -1, c)
    ch.name = "sphere"
    return ch


def quadric2(a=None, b=None):
    """``z = (a/2) x^2 + (b/2) y^2``."""
    av, ap = _value("a", a)
    bv, bp = _value("b", b)
    for name, val in (("a", a), ("b", b)):
        if val is not None and scalar(val) <= 0:
            raise ParameterConstraintError(f"kind-II quadric needs a, b > 0 (got {name}={val})")
    u, v = sym(U), sym(V)
    env = DerivationEnv((U, V), params=[p for p in (ap, bp) if p])
    comps = (u, v, av * u * u / 2 + bv * v * v / 2)
    return SurfaceChart("quadric2", comps, env,
                        {"a": a, "b": b, "family": "quadric2", "assumptions": ["a > 0", "b > 0"]})


RULED_SYMBOLS = ("zeta", "eta", "mu", "nu", "xi", "A")


def ruled_symbols():
    return {n: sym(diff(n)) for n in RULED_SYMBOLS}


VECTOR_SYMBOLS = tuple(f"{v}{i}" for v in ("sigma", "rho") for i in (1, 2, 3))


def ruled_env(extra_bases=()):
    return DerivationEnv((S_, T_), diff_bases=RULED_SYMBOLS + tuple(extra_bases), diff_var=S_)


def formal_curves():
    """Component symbols of the directrix and the ruling direction."""
    sigma = tuple(sym(diff(f"sigma{i}")) for i in (1, 2, 3))
    rho = tuple(sym(diff(f"rho{i}")) for i in (1, 2, 3))
    return sigma, rho


def ruled_generic(**overrides):
    """Ruled surface known through its invariants: I = n ds^2 + dt^2,
    II = (m ds^2 + 2A ds dt)/sqrt(n).

    The position ``sigma + t rho`` is formal: its components are free
    differential symbols.  Keyword overrides replace invariants, e.g.
    ``mu=0``.
    """
    z = ruled_symbols()
    for name, value in overrides.items():
        if name not in z:
            raise UsageError(f"unknown ruled invariant {name!r}")
        z[name] = Expr._coerce(value)
    t = sym(T_)
    n = t * t + 2 * z["eta"] * t + z["zeta"]
    m = z["mu"] * t * t + z["nu"] * t + z["xi"]
    env = ruled_env(VECTOR_SYMBOLS)
    sigma, rho = formal_curves()
    first = FundamentalForm("I", n, Expr(), Expr.const(1))
    position = tuple(x + t * y for x, y in zip(sigma, rho))
    return AbstractChart("ruled-generic", env, first, (m, z["A"], Expr()), position,
                         {"n": n, "m": m, "family": "ruled", "sigma": sigma, "rho": rho,
                          "invariants": z})


def conoid_oblique(r="3/5"):
    """A non-minimal concrete ruled surface with a non-planar ruling direction.

    ``rho`` runs along a small circle of radius ``r`` on the unit sphere at
    unit speed and ``sigma' = rho x rho'``.
    """
    r = scalar(r)
    z0sq = 1 - r * r
    from gmpy2 import is_square, isqrt
    if not (is_square(z0sq.numerator) and is_square(z0sq.denominator)):
        raise UsageError("need 1 - r^2 to be a rational square")
    z0 = Expr.const(isqrt(z0sq.numerator)) / isqrt(z0sq.denominator)
    C, S, rules = trig_pair(r)
    env = DerivationEnv((S_, T_), rules=rules)
    c, s_, t = sym(C), sym(S), sym(T_)
    rv = Expr.const(r)
    rho = (rv * c, rv * s_, z0)
    sigma = (-z0 * rv * s_, z0 * rv * c, rv * sym(S_))
    comps = tuple(x + t * y for x, y in zip(sigma, rho))
    return SurfaceChart("oblique-ruled", comps, env, {"r": r, "family": "ruled", "sigma": sigma, "rho": rho})


CATALOG = {
    "plane": plane,
    "helicoid": helicoid,
    "sphere": sphere,
    "quadric1": quadric1,
    "quadric2": quadric2,
    "ruled-generic": ruled_generic,
    "oblique-ruled": conoid_oblique,
}


def make_chart(name, **params):
    try:
        factory = CATALOG[name]
    except KeyError:
        raise UsageError(f"unknown surface {name!r}; known: {', '.join(CATALOG)}") from None
    return factory(**params)


__all__ = [
    "CATALOG", "VECTOR_SYMBOLS", "S_", "T_", "U", "V", "conoid_oblique", "formal_curves", "helicoid", "make_chart", "plane",
    "quadric1", "quadric2", "ruled_env", "ruled_generic", "ruled_symbols", "sphere", "trig_pair",
]
