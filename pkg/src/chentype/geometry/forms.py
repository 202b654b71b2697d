"""Charts, fundamental forms and curvatures."""

from dataclasses import dataclass, field

from ..algebra import DerivationEnv, Expr, SqrtExtension, differentiate, ext_differentiate
from ..algebra.sqrtext import ExtElement
from ..errors import DegenerateChartError, FlatChartError

HALF = Expr.const(1) / 2


def dot(x, y):
    return x[0] * y[0] + x[1] * y[1] + x[2] * y[2]


def cross(x, y):
    return (
        x[1] * y[2] - x[2] * y[1],
        x[2] * y[0] - x[0] * y[2],
        x[0] * y[1] - x[1] * y[0],
    )


@dataclass(frozen=True)
class FundamentalForm:
    """Symmetric form ``e11 du1^2 + 2 e12 du1 du2 + e22 du2^2``.

    Entries are Exprs, or extension elements for the second form.
    """

    label: str
    e11: object
    e12: object
    e22: object

    def det(self):
        return self.e11 * self.e22 - self.e12 * self.e12

    def entries(self):
        return self.e11, self.e12, self.e22

    def matrix(self):
        return ((self.e11, self.e12), (self.e12, self.e22))

    def inverse(self):
        """Entries ``(e^11, e^12, e^22)`` of the inverse tensor."""
        d = self.det()
        if isinstance(d, ExtElement):
            raise TypeError("inverse of an extension-valued form")
        if d.is_zero():
            raise DegenerateChartError(f"form {self.label} has zero determinant")
        inv = 1 / d
        return self.e22 * inv, -self.e12 * inv, self.e11 * inv

    def __eq__(self, other):
        if not isinstance(other, FundamentalForm):
            return NotImplemented
        return all(x == y for x, y in zip(self.entries(), other.entries()))

    def __hash__(self):
        return hash((self.label,))

    def scaled(self, f, label=None):
        return FundamentalForm(label or self.label, self.e11 * f, self.e12 * f, self.e22 * f)

    def to_text(self, vars=("u1", "u2")):
        a, b = (str(v) for v in vars)
        return (f"{self.label} = [{_txt(self.e11)}] d{a}^2 + 2*[{_txt(self.e12)}] d{a} d{b}"
                f" + [{_txt(self.e22)}] d{b}^2")

    def latex(self, vars=("u^1", "u^2")):
        a, b = (v.latex() if hasattr(v, "latex") else str(v) for v in vars)
        return (f"{self.label} = \\left({_tex(self.e11)}\\right) d{a}^2 + 2\\left({_tex(self.e12)}"
                f"\\right) d{a}\\, d{b} + \\left({_tex(self.e22)}\\right) d{b}^2")


def _txt(x):
    if isinstance(x, ExtElement):
        if x.q.is_zero():
            return str(x.p)
        tail = f"({x.q})*sqrt({x.ext.radicand})"
        return tail if x.p.is_zero() else f"{x.p} + {tail}"
    return str(x)


def _tex(x):
    if isinstance(x, ExtElement):
        if x.q.is_zero():
            return x.p.latex()
        tail = f"\\left({x.q.latex()}\\right)\\sqrt{{{x.ext.radicand.latex()}}}"
        return tail if x.p.is_zero() else f"{x.p.latex()} + {tail}"
    return x.latex()


@dataclass(eq=False)
class SurfaceChart:
    """Parametric surface ``x(u1, u2)`` given by three Exprs.

    ``metadata`` records domain restrictions (e.g. ``omega > 0``) that are
    carried along, not enforced pointwise.
    """

    name: str
    components: tuple
    env: DerivationEnv
    metadata: dict = field(default_factory=dict)
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def vars(self):
        return self.env.chart_vars

    abstract = False

    def d(self, e, i):
        return differentiate(e, self.vars[i], self.env)

    def cached(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def partials(self):
        def build():
            x = self.components
            x1 = tuple(self.d(c, 0) for c in x)
            x2 = tuple(self.d(c, 1) for c in x)
            x11 = tuple(self.d(c, 0) for c in x1)
            x12 = tuple(self.d(c, 1) for c in x1)
            x22 = tuple(self.d(c, 1) for c in x2)
            return x1, x2, x11, x12, x22
        return self.cached("partials", build)

    def translated(self, offset, name=None):
        comps = tuple(c + Expr._coerce(o) for c, o in zip(self.components, offset))
        return SurfaceChart(name or f"{self.name}+offset", comps, self.env, dict(self.metadata))


class AbstractChart(SurfaceChart):
    """A chart known through its first and second forms.

    ``second_numerators`` are ``<x_ij, N>`` for the unnormalized normal ``N``,
    whose squared length is ``det I``; II is ``second_numerators / sqrt(det I)``.
    ``components`` may hold a formal position vector whose entries are
    differential symbols; it is only ever fed to operators.
    """

    abstract = True

    def __init__(self, name, env, first, second_numerators, position=None, metadata=None):
        super().__init__(name, position, env, metadata or {})
        self.first = first
        self.second_numerators = second_numerators

    def partials(self):
        raise TypeError(f"{self.name} has no concrete parametrization")


# -- forms -----------------------------------------------------------------------

def first_form(chart: SurfaceChart) -> FundamentalForm:
    if chart.abstract:
        return chart.first

    def build():
        x1, x2, *_ = chart.partials()
        return FundamentalForm("I", dot(x1, x1), dot(x1, x2), dot(x2, x2))
    return chart.cached("I", build)


def normal_extension(chart) -> SqrtExtension:
    """``F(R)`` with ``R^2 = det I``; ``R`` is the length of ``x_1 x x_2``."""
    def build():
        g = first_form(chart).det()
        if g.is_zero():
            raise DegenerateChartError(f"{chart.name}: first fundamental form is degenerate")
        return SqrtExtension(g, "R")
    return chart.cached("ext", build)


def normal_vector(chart):
    """Unnormalized normal ``N = x_1 x x_2`` (concrete charts)."""
    def build():
        x1, x2, *_ = chart.partials()
        return cross(x1, x2)
    return chart.cached("N", build)


def unit_normal(chart):
    """``n = N / R`` as three extension elements (``1/R = R/g``)."""
    def build():
        ext = normal_extension(chart)
        g = ext.radicand
        return tuple(ext.element(0, c / g) for c in normal_vector(chart))
    return chart.cached("n", build)


def second_form(chart: SurfaceChart) -> FundamentalForm:
    """``h_ij = <x_ij, n>``, extension-valued."""
    def build():
        ext = normal_extension(chart)
        g = ext.radicand
        if chart.abstract:
            nums = chart.second_numerators
        else:
            _, _, x11, x12, x22 = chart.partials()
            N = normal_vector(chart)
            nums = (dot(x11, N), dot(x12, N), dot(x22, N))
        return FundamentalForm("II", *(ext.element(0, h / g) for h in nums))
    return chart.cached("II", build)


def gauss_curvature(chart) -> Expr:
    """``K = det(h) / det(g)``; the square root cancels."""
    def build():
        h = second_form(chart)
        return h.det().rational() / first_form(chart).det()
    return chart.cached("K", build)


def mean_curvature(chart):
    """``H = g^{ij} h_ij / 2`` as an extension element."""
    def build():
        g11, g12, g22 = first_form(chart).inverse()
        h = second_form(chart)
        return (h.e11 * g11 + h.e12 * g12 * 2 + h.e22 * g22) * HALF
    return chart.cached("H", build)


def third_form(chart: SurfaceChart) -> FundamentalForm:
    """``e_ij = <n_i, n_j>``; via ``II g^-1 II`` for abstract charts."""
    def build():
        if gauss_curvature(chart).is_zero():
            raise FlatChartError(f"{chart.name}: Gauss curvature vanishes identically")
        if chart.abstract:
            return weingarten_third_form(chart)
        n = unit_normal(chart)
        n1 = [ext_differentiate(c, chart.vars[0], chart.env) for c in n]
        n2 = [ext_differentiate(c, chart.vars[1], chart.env) for c in n]
        e11 = dot(n1, n1).rational()
        e12 = dot(n1, n2).rational()
        e22 = dot(n2, n2).rational()
        return FundamentalForm("III", e11, e12, e22)
    return chart.cached("III", build)


def weingarten_third_form(chart) -> FundamentalForm:
    """``III = II . I^{-1} . II`` (matrix product), square roots cancelled."""
    g11, g12, g22 = first_form(chart).inverse()
    h = second_form(chart)
    # (h g^-1)_ik
    a11 = h.e11 * g11 + h.e12 * g12
    a12 = h.e11 * g12 + h.e12 * g22
    a21 = h.e12 * g11 + h.e22 * g12
    a22 = h.e12 * g12 + h.e22 * g22
    e11 = (a11 * h.e11 + a12 * h.e12).rational()
    e12 = (a11 * h.e12 + a12 * h.e22).rational()
    e22 = (a21 * h.e12 + a22 * h.e22).rational()
    return FundamentalForm("III", e11, e12, e22)


@dataclass(frozen=True)
class CurvatureData:
    K: Expr
    H: object
    normal: tuple


def curvature(chart) -> CurvatureData:
    n = unit_normal(chart) if not chart.abstract else None
    return CurvatureData(gauss_curvature(chart), mean_curvature(chart), n)


def third_form_identity_holds(chart) -> bool:
    """``III = 2H II - K I`` entrywise."""
    one = first_form(chart)
    two = second_form(chart)
    three = third_form(chart)
    H = mean_curvature(chart)
    K = gauss_curvature(chart)
    for e1, e2, e3 in zip(one.entries(), two.entries(), three.entries()):
        rhs = H * 2 * e2 - e1 * K
        if not (rhs - e3).is_zero():
            return False
    return True
