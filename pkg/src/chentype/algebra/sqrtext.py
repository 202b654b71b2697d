"""Quadratic extension ``F(R)`` with ``R**2 = radicand`` over rational functions."""

from ..errors import ExtensionMismatchError, MalformedExpressionError, WResidueError
from .derivation import differentiate
from .expr import Expr


class SqrtExtension:
    """The field obtained by adjoining one square root ``R`` of ``radicand``."""

    def __init__(self, radicand: Expr, name="R"):
        if radicand.is_zero():
            raise MalformedExpressionError("radicand must be nonzero")
        self.radicand = radicand
        self.name = name

    def __eq__(self, other):
        return isinstance(other, SqrtExtension) and self.radicand == other.radicand

    def __hash__(self):
        return hash(self.radicand)

    def element(self, p=0, q=0):
        return ExtElement(self, Expr._coerce(p), Expr._coerce(q))

    def root(self):
        return self.element(0, 1)

    def __repr__(self):
        return f"SqrtExtension({self.name}^2 = {self.radicand})"


class ExtElement:
    """``p + q*R`` with ``p``, ``q`` Exprs."""

    __slots__ = ("ext", "p", "q")

    def __init__(self, ext, p, q):
        self.ext = ext
        self.p = p
        self.q = q

    def _check(self, other):
        if isinstance(other, ExtElement):
            if other.ext is not self.ext and other.ext != self.ext:
                raise ExtensionMismatchError("elements of different square-root extensions")
            return other
        return ExtElement(self.ext, Expr._coerce(other), Expr())

    def __add__(self, other):
        other = self._check(other)
        return ExtElement(self.ext, self.p + other.p, self.q + other.q)

    __radd__ = __add__

    def __neg__(self):
        return ExtElement(self.ext, -self.p, -self.q)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        g = self.ext.radicand
        p = self.p * other.p
        if self.q and other.q:
            p = p + self.q * other.q * g
        q = self.p * other.q + self.q * other.p
        return ExtElement(self.ext, p, q)

    __rmul__ = __mul__

    def conjugate(self):
        return ExtElement(self.ext, self.p, -self.q)

    def norm(self):
        """``p**2 - q**2 * radicand`` (the product with the conjugate)."""
        return self.p * self.p - self.q * self.q * self.ext.radicand

    def inverse(self):
        n = self.norm()
        if n.is_zero():
            raise MalformedExpressionError("element has zero norm")
        return ExtElement(self.ext, self.p / n, -self.q / n)

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def __rtruediv__(self, other):
        return self._check(other) * self.inverse()

    def is_rational(self):
        return self.q.is_zero()

    def is_zero(self):
        return self.p.is_zero() and self.q.is_zero()

    def rational(self):
        """The ``p`` part, asserting the ``R`` part vanished."""
        if not self.q.is_zero():
            raise WResidueError(f"square-root part {self.q} did not cancel")
        return self.p

    def __eq__(self, other):
        other = self._check(other)
        return self.p == other.p and self.q == other.q

    def __hash__(self):
        return hash((self.p, self.q))

    def __repr__(self):
        return f"({self.p}) + ({self.q})*{self.ext.name}"


def ext_mul(x: ExtElement, y: ExtElement) -> ExtElement:
    return x * y


def ext_differentiate(z, d, env):
    """Derivative of an extension element; d R = R * dg / (2g)."""
    if not isinstance(z, ExtElement):
        return differentiate(z, d, env)
    dp = differentiate(z.p, d, env)
    if z.q.is_zero():
        return ExtElement(z.ext, dp, Expr())
    g = z.ext.radicand
    dg = differentiate(g, d, env)
    dq = differentiate(z.q, d, env)
    if not dg.is_zero():
        dq = dq + z.q * dg / (2 * g)
    return ExtElement(z.ext, dp, dq)
