"""Exact linear algebra over the rationals and constant-coefficient dependence."""

from gmpy2 import mpq

from ..errors import UsageError
from .expr import Expr


def rref(rows, ncols):
    """Reduced row echelon form of a list of ``mpq`` rows; returns (rows, pivots)."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(rows, ncols):
    """Basis of ``{x : A x = 0}`` for the matrix with the given rows."""
    red, pivots = rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [mpq(0)] * ncols
        v[f] = mpq(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def _combined_rows(vectors):
    """Monomial-coefficient rows of ``sum_i c_i v_i`` (one row per monomial)."""
    k = len(vectors)
    dim = len(vectors[0])
    rows = {}
    for j in range(dim):
        comps = [Expr._coerce(v[j]) for v in vectors]
        dens = []
        for e in comps:
            if not e.is_zero() and not any(e.den == d for d in dens):
                dens.append(e.den)
        for i, e in enumerate(comps):
            if e.is_zero():
                continue
            p = e.num
            for d in dens:
                if d != e.den:
                    p = p * d
            p = p.reduce_roots()
            for mono, c in p._sparse():
                rows.setdefault((j, mono), [mpq(0)] * k)[i] += c
    return list(rows.values())


def linear_dependence(vectors):
    """Rational constants ``c`` (not all zero) with ``sum c_i v_i = 0``, or ``None``.

    ``vectors`` is a list of equal-length sequences of Exprs.  Every
    indeterminate, parameters included, is treated as free, so the relation
    must hold identically.  Only rational constants are searched: a relation
    whose constants are all irrational is not found.  For rational data a real
    relation implies a rational one (the solution space of a rational system is
    spanned by rational vectors), so this loses nothing.
    """
    if not vectors:
        raise UsageError("linear_dependence needs at least one vector")
    dims = {len(v) for v in vectors}
    if len(dims) != 1:
        raise UsageError("vectors must share a dimension")
    rows = _combined_rows(vectors)
    basis = nullspace(rows, len(vectors))
    if not basis:
        return None
    v = basis[0]
    # scale: first nonzero entry 1
    lead = next(x for x in v if x)
    return [x / lead for x in v]


def solve_monic(vectors):
    """Constants ``c`` with ``v_0 + sum_{i>=1} c_i v_i = 0`` if they exist."""
    if not vectors:
        raise UsageError("solve_monic needs at least one vector")
    for v in nullspace(_combined_rows(vectors), len(vectors)):
        if v[0]:
            return [x / v[0] for x in v[1:]]
    return None
