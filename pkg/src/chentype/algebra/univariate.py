"""Univariate polynomials with rational coefficients: exact rational roots."""

from math import lcm

from gmpy2 import gcd, is_prime, mpq, mpz

TRIAL_BOUND = 100_000


def primitive_integer(coeffs):
    """Scale ``coeffs`` (ascending, rational) to coprime integers."""
    coeffs = [mpq(c) for c in coeffs]
    den = 1
    for c in coeffs:
        den = lcm(den, int(c.denominator))
    ints = [mpz(c * den) for c in coeffs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    return [c // g for c in ints] if g else ints


def _factor(n):
    """Prime factorization of ``|n|`` as a dict, or None when it is out of reach."""
    n = abs(mpz(n))
    out = {}
    p = 2
    while p * p <= n and p < TRIAL_BOUND:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        if n >= TRIAL_BOUND * TRIAL_BOUND and not is_prime(n):
            return None
        out[int(n)] = out.get(int(n), 0) + 1
    return out


def _divisors(n):
    f = _factor(n)
    if f is None:
        return None
    divs = [1]
    for p, e in f.items():
        divs = [d * p ** k for d in divs for k in range(e + 1)]
    return divs


def evaluate(coeffs, x):
    acc = mpq(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def deflate(coeffs, r):
    """Quotient of the polynomial by ``(x - r)`` (exact when ``r`` is a root)."""
    n = len(coeffs) - 1
    out = [mpq(0)] * n
    acc = mpq(0)
    for i in range(n, 0, -1):
        acc = acc * r + coeffs[i]
        out[i - 1] = acc
    return out


def rational_roots(coeffs):
    """Rational roots with multiplicities of ``sum coeffs[i] x^i``.

    Returns ``(roots, complete)`` where ``roots`` is a sorted list of
    ``(root, multiplicity)`` and ``complete`` says whether they account for the
    full degree (so the polynomial splits over the rationals).
    """
    coeffs = [mpq(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) <= 1:
        return [], len(coeffs) == 1
    degree = len(coeffs) - 1
    found = {}
    while coeffs[0] == 0:
        found[mpq(0)] = found.get(mpq(0), 0) + 1
        coeffs = coeffs[1:]
    while len(coeffs) > 1:
        ints = primitive_integer(coeffs)
        ps, qs = _divisors(ints[0]), _divisors(ints[-1])
        if ps is None or qs is None:
            break
        root = next((s * mpq(p, q) for p in ps for q in qs for s in (1, -1)
                     if evaluate(coeffs, s * mpq(p, q)) == 0), None)
        if root is None:
            break
        found[root] = found.get(root, 0) + 1
        coeffs = deflate(coeffs, root)
    roots = sorted(found.items())
    return roots, sum(m for _, m in roots) == degree
