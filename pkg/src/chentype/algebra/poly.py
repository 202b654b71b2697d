"""Sparse multivariate polynomials over the rationals.

A :class:`MultiPoly` stores a tuple of generators (sorted by the global
variable order) and a dict mapping dense exponent tuples to nonzero ``mpq``
coefficients.  Polynomials over different generator tuples are embedded into
the sorted union before combining.
"""

from functools import lru_cache
from math import inf
from operator import add

from gmpy2 import mpq

from .scalars import ONE, format_scalar, scalar
from .symbols import Indeterminate, Kind


@lru_cache(maxsize=4096)
def _merge_gens(g1, g2):
    gens = tuple(sorted(set(g1) | set(g2), key=lambda x: x.sort_key))
    pos = {g: i for i, g in enumerate(gens)}
    idx1 = tuple(pos[g] for g in g1)
    idx2 = tuple(pos[g] for g in g2)
    return gens, idx1, idx2


def _embed(terms, idx, n):
    if len(idx) == n and idx == tuple(range(n)):
        return terms
    out = {}
    for e, c in terms.items():
        new = [0] * n
        for pos, k in zip(idx, e):
            new[pos] = k
        out[tuple(new)] = c
    return out


def _unify(p, q):
    if p.gens is q.gens or p.gens == q.gens:
        return p.gens, p.terms, q.terms
    gens, i1, i2 = _merge_gens(p.gens, q.gens)
    n = len(gens)
    return gens, _embed(p.terms, i1, n), _embed(q.terms, i2, n)


def grlex_key(e):
    return (sum(e), e)


class MultiPoly:
    __slots__ = ("gens", "terms")

    def __init__(self, gens=(), terms=None):
        self.gens = tuple(gens)
        self.terms = {} if terms is None else terms

    # -- constructors -------------------------------------------------------
    @classmethod
    def const(cls, c, gens=()):
        c = scalar(c)
        if not c:
            return cls(gens, {})
        return cls(gens, {(0,) * len(gens): c})

    @classmethod
    def var(cls, x: Indeterminate):
        return cls((x,), {(1,): ONE})

    @classmethod
    def from_dict(cls, gens, terms):
        """Build from ``{exponent tuple: coefficient}``, sorting generators."""
        gens = tuple(gens)
        order = sorted(range(len(gens)), key=lambda i: gens[i].sort_key)
        sgens = tuple(gens[i] for i in order)
        if len(set(sgens)) != len(sgens):
            raise ValueError("duplicate generators")
        out = {}
        for e, c in terms.items():
            c = scalar(c)
            if c:
                key = tuple(e[i] for i in order)
                out[key] = out.get(key, 0) + c
                if not out[key]:
                    del out[key]
        return cls(sgens, out)

    # -- predicates ---------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self):
        if not self.terms:
            return mpq(0)
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def is_monomial(self):
        return len(self.terms) == 1

    def is_one(self):
        return self.is_constant() and self.terms and self.constant_value() == 1

    def free_gens(self):
        """Generators that occur with a positive exponent."""
        used = [False] * len(self.gens)
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return tuple(g for g, u in zip(self.gens, used) if u)

    def trim(self):
        used = self.free_gens()
        if len(used) == len(self.gens):
            return self
        keep = [i for i, g in enumerate(self.gens) if g in set(used)]
        return MultiPoly(used, {tuple(e[i] for i in keep): c for e, c in self.terms.items()})

    def involves(self, x):
        if x not in self.gens:
            return False
        i = self.gens.index(x)
        return any(e[i] for e in self.terms)

    # -- arithmetic -----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            return other
        return MultiPoly.const(other, self.gens)

    def __add__(self, other):
        other = self._coerce(other)
        gens, a, b = _unify(self, other)
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        for e, c in b.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return MultiPoly(gens, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.gens, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c):
        c = scalar(c)
        if not c:
            return MultiPoly(self.gens, {})
        if c == 1:
            return self
        return MultiPoly(self.gens, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        gens, a, b = _unify(self, other)
        if not a or not b:
            return MultiPoly(gens, {})
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (e2, c2), = b.items()
            return MultiPoly(gens, {tuple(map(add, e1, e2)): c1 * c2 for e1, c1 in a.items()})
        out = {}
        get = out.get
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = tuple(map(add, e1, e2))
                out[e] = get(e, 0) + c1 * c2
        return MultiPoly(gens, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers need a nonnegative integer exponent")
        result = MultiPoly.const(1, self.gens)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, mono):
        """Multiply by the monomial with exponent tuple ``mono`` (same gens)."""
        return MultiPoly(self.gens, {tuple(map(add, e, mono)): c for e, c in self.terms.items()})

    # -- comparison ------------------------------------------------------------
    def _sparse(self):
        return frozenset(
            (tuple((g, k) for g, k in zip(self.gens, e) if k), c) for e, c in self.terms.items()
        )

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            try:
                other = MultiPoly.const(other)
            except TypeError:
                return NotImplemented
        if self.gens == other.gens:
            return self.terms == other.terms
        if len(self.terms) != len(other.terms):
            return False
        return self._sparse() == other._sparse()

    def __hash__(self):
        return hash(self._sparse())

    # -- structure --------------------------------------------------------------
    def index(self, x):
        try:
            return self.gens.index(x)
        except ValueError:
            return None

    def degree_in(self, x):
        if not self.terms:
            return -inf
        i = self.index(x)
        if i is None:
            return 0
        return max(e[i] for e in self.terms)

    def low_degree_in(self, x):
        if not self.terms:
            return inf
        i = self.index(x)
        if i is None:
            return 0
        return min(e[i] for e in self.terms)

    def total_degree(self, vars=None):
        """Total degree, counting only ``vars`` when given."""
        if not self.terms:
            return -inf
        if vars is None:
            return max(sum(e) for e in self.terms)
        idx = [i for i, g in enumerate(self.gens) if g in set(vars)]
        return max(sum(e[i] for i in idx) for e in self.terms)

    def leading_exponent(self):
        return max(self.terms, key=grlex_key)

    def leading_coefficient(self):
        if not self.terms:
            return mpq(0)
        return self.terms[self.leading_exponent()]

    def content(self):
        """Positive rational content: gcd of numerators over lcm of denominators."""
        from gmpy2 import gcd, lcm
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = lcm(den, c.denominator)
        return mpq(num, den) if num else mpq(0)

    def monomial_content(self):
        """Exponent tuple of the largest monomial dividing every term."""
        it = iter(self.terms)
        m = list(next(it))
        for e in it:
            for i, k in enumerate(e):
                if k < m[i]:
                    m[i] = k
        return tuple(m)

    def coeff_in(self, x, k):
        """Coefficient of ``x**k`` as a polynomial in the remaining generators."""
        i = self.index(x)
        if i is None:
            return self if k == 0 else MultiPoly(self.gens, {})
        out = {}
        for e, c in self.terms.items():
            if e[i] == k:
                out[e[:i] + (0,) + e[i + 1:]] = c
        return MultiPoly(self.gens, out)

    def coefficients_in(self, x):
        """Map ``k -> coefficient of x**k`` for the occurring powers."""
        i = self.index(x)
        if i is None:
            return {0: self} if self.terms else {}
        groups = {}
        for e, c in self.terms.items():
            groups.setdefault(e[i], {})[e[:i] + (0,) + e[i + 1:]] = c
        return {k: MultiPoly(self.gens, t) for k, t in groups.items()}

    def partial(self, x):
        """Formal partial derivative with respect to generator ``x``."""
        i = self.index(x)
        if i is None:
            return MultiPoly(self.gens, {})
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                out[e[:i] + (k - 1,) + e[i + 1:]] = c * k
        return MultiPoly(self.gens, out)

    def rename(self, mapping):
        """Replace generators by other generators (no collisions allowed)."""
        gens = [mapping.get(g, g) for g in self.gens]
        return MultiPoly.from_dict(gens, self.terms)

    # -- roots ------------------------------------------------------------------
    def root_gens(self):
        return [g for g in self.gens if g.kind is Kind.ROOT]

    def reduce_roots(self):
        """Rewrite ``W**k`` as ``W**(k % 2) * radicand**(k // 2)`` for root symbols."""
        p = self
        for w in p.root_gens():
            i = p.index(w)
            if i is None or not any(e[i] > 1 for e in p.terms):
                continue
            groups = {}
            for e, c in p.terms.items():
                q, r = divmod(e[i], 2)
                groups.setdefault(q, {})[e[:i] + (r,) + e[i + 1:]] = c
            out = MultiPoly(p.gens, groups.pop(0, {}))
            for q, t in sorted(groups.items()):
                out = out + MultiPoly(p.gens, t) * (w.radicand ** q)
            p = out
        return p

    def conjugate(self, w):
        """Flip the sign of the odd powers of root ``w``."""
        i = self.index(w)
        if i is None:
            return self
        return MultiPoly(self.gens, {e: (-c if e[i] % 2 else c) for e, c in self.terms.items()})

    # -- evaluation -------------------------------------------------------------
    def substitute_poly(self, bindings):
        """Substitute polynomials for generators (pure polynomial homomorphism)."""
        bound = [(i, bindings[g]) for i, g in enumerate(self.gens) if g in bindings]
        if not bound:
            return self
        idx = {i for i, _ in bound}
        rest_gens = self.gens
        powers = {}
        out = MultiPoly((), {})
        groups = {}
        for e, c in self.terms.items():
            key = tuple(e[i] for i, _ in bound)
            rest = tuple(0 if i in idx else k for i, k in enumerate(e))
            groups.setdefault(key, {})[rest] = c
        for key, t in groups.items():
            term = MultiPoly(rest_gens, t)
            for (i, val), k in zip(bound, key):
                if k:
                    pk = powers.get((i, k))
                    if pk is None:
                        pk = powers[(i, k)] = val ** k
                    term = term * pk
            out = out + term
        return out

    # -- text -------------------------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def to_text(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                g.text if k == 1 else f"{g.text}^{k}" for g, k in zip(self.gens, e) if k
            )
            neg = c < 0
            a = -c if neg else c
            if not mono:
                body = format_scalar(a)
            elif a == 1:
                body = mono
            else:
                body = f"{format_scalar(a)}*{mono}"
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"MultiPoly({self.to_text()})"

    __str__ = to_text
