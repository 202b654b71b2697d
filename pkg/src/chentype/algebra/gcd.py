"""Exact division and greatest common divisors of multivariate polynomials.

The GCD is the heuristic algorithm of Char, Geddes and Gonnet: evaluate the
last variable at a large integer, recurse, and rebuild the candidate by
symmetric base-``x`` expansion.  Candidates are always confirmed by exact
division, so a wrong guess costs time but never correctness.
"""

import heapq
import logging

from gmpy2 import gcd as igcd
from gmpy2 import isqrt, mpq, mpz

from .poly import MultiPoly, _unify

log = logging.getLogger(__name__)

HEU_GCD_MAX = 6


class HeuristicGCDFailed(Exception):
    pass


# -- integer polynomials as {exponents: mpz} -----------------------------------

def _int_content(f):
    g = mpz(0)
    for c in f.values():
        g = igcd(g, c)
        if g == 1:
            break
    return g


def _max_norm(f):
    return max(abs(c) for c in f.values())


def _lead(f):
    return f[max(f)]


def _divexact(f, g):
    """Quotient ``f / g`` if exact over the integers, else ``None``.

    Uses lex order on exponent tuples; ``f`` and ``g`` share the variable
    layout.
    """
    if not g:
        raise ZeroDivisionError
    if not f:
        return {}
    lm = max(g)
    lc = g[lm]
    n = len(lm)
    # degree screen
    for i in range(n):
        if max(e[i] for e in g) > max(e[i] for e in f):
            return None
    rest = [(e, c) for e, c in g.items() if e != lm]
    r = dict(f)
    heap = [tuple(-k for k in e) for e in r]
    heapq.heapify(heap)
    q = {}
    while r:
        while True:
            m = tuple(-k for k in heapq.heappop(heap))
            if m in r:
                break
        c = r.pop(m)
        d = tuple(a - b for a, b in zip(m, lm))
        if min(d) < 0:
            return None
        qc, rem = divmod(c, lc)
        if rem:
            return None
        q[d] = qc
        for e, gc in rest:
            t = tuple(a + b for a, b in zip(d, e))
            v = r.get(t)
            if v is None:
                r[t] = -qc * gc
                heapq.heappush(heap, tuple(-k for k in t))
            else:
                v -= qc * gc
                if v:
                    r[t] = v
                else:
                    del r[t]
    return q


def _eval_last(f, x):
    out = {}
    for e, c in f.items():
        key = e[:-1]
        out[key] = out.get(key, 0) + c * x ** e[-1]
    return {e: c for e, c in out.items() if c}


def _interpolate(h, x):
    """Undo :func:`_eval_last` using symmetric base-``x`` digits."""
    out = {}
    half = x // 2
    for e, c in h.items():
        k = 0
        while c:
            d = c % x
            if d > half:
                d -= x
            if d:
                out[e + (k,)] = d
            c = (c - d) // x
            k += 1
    return out


def _primitive(f):
    g = _int_content(f)
    if g == 1:
        return f
    return {e: c // g for e, c in f.items()}


def _normalize_sign(f):
    if f and _lead(f) < 0:
        return {e: -c for e, c in f.items()}
    return f


def _heu_gcd(f, g, n):
    """Return ``(h, cff, cfg)`` with ``h = gcd(f, g)``, ``f = h*cff``, ``g = h*cfg``."""
    if n == 0:
        a = f.get((), mpz(0))
        b = g.get((), mpz(0))
        h = igcd(a, b)
        return {(): h}, {(): a // h}, {(): b // h}
    gc = igcd(_int_content(f), _int_content(g))
    if gc != 1:
        f = {e: c // gc for e, c in f.items()}
        g = {e: c // gc for e, c in g.items()}
    nf = _max_norm(f)
    ng = _max_norm(g)
    b = 2 * min(nf, ng) + 29
    x = max(min(b, 99 * isqrt(b)), 2 * min(nf // abs(_lead(f)), ng // abs(_lead(g))) + 2)
    x = mpz(x)
    for _ in range(HEU_GCD_MAX):
        ff = _eval_last(f, x)
        gg = _eval_last(g, x)
        if ff and gg:
            try:
                h, cff, cfg = _heu_gcd(ff, gg, n - 1)
            except HeuristicGCDFailed:
                h = None
            if h is not None:
                cand = _primitive(_interpolate(h, x))
                if cand:
                    cf = _divexact(f, cand)
                    if cf is not None:
                        cg = _divexact(g, cand)
                        if cg is not None:
                            return _scale(cand, gc), cf, cg
                cff_c = _interpolate(cff, x)
                if cff_c:
                    cand = _divexact(f, cff_c)
                    if cand is not None:
                        cg = _divexact(g, cand)
                        if cg is not None:
                            return _scale(cand, gc), cff_c, cg
                cfg_c = _interpolate(cfg, x)
                if cfg_c:
                    cand = _divexact(g, cfg_c)
                    if cand is not None:
                        cf = _divexact(f, cand)
                        if cf is not None:
                            return _scale(cand, gc), cf, cfg_c
        x = 73794 * x * isqrt(isqrt(x)) // 27011
    raise HeuristicGCDFailed


def _scale(f, c):
    if c == 1:
        return f
    return {e: v * c for e, v in f.items()}


# -- MultiPoly interface ----------------------------------------------------

def _to_int(p):
    """Clear denominators: return (integer terms, multiplier m) with p*m integral."""
    from gmpy2 import lcm
    den = mpz(1)
    for c in p.terms.values():
        den = lcm(den, c.denominator)
    return {e: mpz(c * den) for e, c in p.terms.items()}, den


def _common_layout(p, q):
    """Shared generator tuple restricted to generators used by either input."""
    gens, a, b = _unify(p, q)
    used = [False] * len(gens)
    for t in (a, b):
        for e in t:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
    keep = [i for i, u in enumerate(used) if u]
    ka = {tuple(e[i] for i in keep): c for e, c in a.items()}
    kb = {tuple(e[i] for i in keep): c for e, c in b.items()}
    return tuple(gens[i] for i in keep), ka, kb


def poly_divexact(p, q):
    """``p / q`` as a MultiPoly if the division is exact, else ``None``."""
    if q.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    gens, a, b = _common_layout(p, q)
    if not a:
        return MultiPoly(gens, {})
    ia, ma = _to_int(MultiPoly(gens, a))
    ib, mb = _to_int(MultiPoly(gens, b))
    cb = _int_content(ib)
    ib = {e: c // cb for e, c in ib.items()}
    quo = _divexact(ia, ib)
    if quo is None:
        return None
    factor = mpq(mb, ma * cb)
    return MultiPoly(gens, {e: mpq(c) * factor for e, c in quo.items()})


def poly_gcd(p, q):
    """Primitive integer GCD of ``p`` and ``q`` (positive leading coefficient).

    Returns the constant 1 if the heuristic fails.
    """
    if p.is_zero():
        return q
    if q.is_zero():
        return p
    gens, a, b = _common_layout(p, q)
    ia, _ = _to_int(MultiPoly(gens, a))
    ib, _ = _to_int(MultiPoly(gens, b))
    ia = _primitive(ia)
    ib = _primitive(ib)
    n = len(gens)
    # common monomial factor first
    mono = [min(e[i] for e in list(ia) + list(ib)) for i in range(n)]
    if any(mono):
        ia = {tuple(k - m for k, m in zip(e, mono)): c for e, c in ia.items()}
        ib = {tuple(k - m for k, m in zip(e, mono)): c for e, c in ib.items()}
    if len(ia) == 1 or len(ib) == 1:
        h = {(0,) * n: mpz(1)}
    else:
        try:
            h, _, _ = _heu_gcd(ia, ib, n)
        except HeuristicGCDFailed:
            log.debug("heuristic gcd failed on %d/%d terms; skipping cancellation", len(ia), len(ib))
            h = {(0,) * n: mpz(1)}
    h = _normalize_sign(_primitive(h))
    mono = tuple(mono)
    h = {tuple(k + m for k, m in zip(e, mono)): c for e, c in h.items()}
    return MultiPoly(gens, {e: mpq(c) for e, c in h.items()})
