"""Indeterminates of the polynomial kernel."""

from enum import IntEnum


class Kind(IntEnum):
    # Values fix the global variable order used for printing and term order.
    CHART = 0
    PARAM = 1
    DIFF = 2
    FUNC = 3
    ROOT = 4


GREEK = {
    "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta",
    "kappa", "lambda", "mu", "nu", "xi", "pi", "rho", "sigma", "tau", "phi",
    "chi", "psi", "omega",
}


class Indeterminate:
    """A named variable.

    ``kind`` is one of :class:`Kind`.  Differential symbols carry a derivative
    ``order`` (``zeta`` at order 2 is zeta'').  Root symbols carry a polynomial
    ``radicand``: the symbol squares to it and is reduced on normalization.
    """

    __slots__ = ("name", "kind", "order", "radicand", "_key", "_hash")

    def __init__(self, name, kind=Kind.PARAM, order=0, radicand=None):
        kind = Kind(kind)
        if order < 0:
            raise ValueError("derivative order must be >= 0")
        if order and kind is not Kind.DIFF:
            raise ValueError("only differential symbols carry an order")
        if (radicand is None) != (kind is not Kind.ROOT):
            raise ValueError("root symbols (and only those) need a radicand")
        self.name = name
        self.kind = kind
        self.order = order
        self.radicand = radicand
        rkey = "" if radicand is None else radicand.to_text()
        self._key = (int(kind), name, order, rkey)
        self._hash = hash(self._key)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Indeterminate):
            return NotImplemented
        return self._hash == other._hash and self._key == other._key

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self._key < other._key

    @property
    def sort_key(self):
        return self._key

    def derivative(self, k=1):
        """The same differential symbol ``k`` orders higher."""
        if self.kind is not Kind.DIFF:
            raise ValueError(f"{self} is not a differential symbol")
        return Indeterminate(self.name, Kind.DIFF, self.order + k)

    def base(self):
        return Indeterminate(self.name, Kind.DIFF, 0) if self.kind is Kind.DIFF else self

    def with_radicand(self, radicand):
        return Indeterminate(self.name, Kind.ROOT, 0, radicand)

    @property
    def text(self):
        return self.name + "'" * self.order

    def latex(self):
        name = "\\" + self.name if self.name in GREEK else self.name
        if self.order == 0:
            return name
        if self.order <= 3:
            return name + "'" * self.order
        return f"{name}^{{({self.order})}}"

    def __repr__(self):
        return self.text

    __str__ = __repr__


def chart(name):
    return Indeterminate(name, Kind.CHART)


def param(name):
    return Indeterminate(name, Kind.PARAM)


def diff(name, order=0):
    return Indeterminate(name, Kind.DIFF, order)


def func(name):
    return Indeterminate(name, Kind.FUNC)


def root(name, radicand):
    return Indeterminate(name, Kind.ROOT, 0, radicand)
