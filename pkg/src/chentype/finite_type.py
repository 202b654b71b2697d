"""Finite-type analysis: iterates of an operator, annihilating relations, verdicts."""

from dataclasses import dataclass, field
from math import inf

from gmpy2 import mpq

from .algebra import Expr, rational_roots, solve_monic
from .algebra.scalars import format_scalar
from .errors import UsageError
from .geometry import beltrami_operator, third_form
from .geometry.operator import apply


# -- iterates --------------------------------------------------------------------

def compute_iterates(chart, op, k_max):
    """``[x, op x, ..., op^k_max x]`` componentwise."""
    if k_max < 1:
        raise UsageError("k_max must be at least 1")
    out = [tuple(chart.components)]
    for _ in range(k_max):
        out.append(tuple(apply(op, c) for c in out[-1]))
    return out


def _combine(coeffs, vectors):
    """``sum coeffs[p] * vectors[p]`` for 3-vectors of Exprs."""
    total = [Expr() for _ in vectors[0]]
    for c, v in zip(coeffs, vectors):
        if c:
            total = [t + x * Expr.const(c) for t, x in zip(total, v)]
    return tuple(total)


def _is_constant_vector(v):
    return all(c.is_constant() for c in v)


# -- relations -------------------------------------------------------------------

@dataclass(frozen=True)
class Decomposition:
    """``x = x0 + sum x_i`` with ``op x_i = lambda_i x_i``."""

    x0: tuple | None
    parts: tuple  # of (eigenvalue, vector)


@dataclass(frozen=True)
class TypeRelation:
    """``op^(j+1) x + c_1 op^j x + ... + c_j op x = 0`` with ``j = order``.

    ``k`` is the Chen type implied by the relation, ``None`` when the
    relation has a repeated zero root.  ``null`` marks a zero eigenvalue.
    """

    order: int
    constants: tuple
    k: int | None
    null: bool
    eigenvalues: tuple | None
    decomposition: Decomposition | None = None

    def polynomial(self):
        """Ascending coefficients of ``Q(t) = t^j + c_1 t^(j-1) + ... + c_j``."""
        return [mpq(c) for c in reversed(self.constants)] + [mpq(1)]

    def coefficients(self):
        """Ascending coefficients on ``op^1 x, ..., op^(j+1) x``."""
        return self.polynomial()

    def holds(self, iterates):
        vectors = iterates[1:self.order + 2]
        return all(c.is_zero() for c in _combine(self.coefficients(), vectors))

    def text(self, op="Delta"):
        parts = []
        for p, c in reversed(list(enumerate(self.coefficients(), start=1))):
            if not c:
                continue
            term = f"{op}^{p} x" if p > 1 else f"{op} x"
            mag = abs(c)
            body = term if mag == 1 else f"{format_scalar(mag)} {term}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"{'+' if c > 0 else '-'} {body}")
        return " ".join(parts) + " = 0"

    def to_json(self):
        return {
            "k": self.k,
            "order": self.order,
            "constants": [format_scalar(c) for c in self.constants],
            "eigenvalues": None if self.eigenvalues is None
            else [format_scalar(x) for x in self.eigenvalues],
            "null": self.null,
            "text": self.text(),
        }


def detect_relation(iterates, max_order=None):
    """Least-order constant-coefficient relation among ``iterates[1:]``.

    ``iterates[0]`` (the position) is never part of the relation, which leaves
    room for a constant vector ``x0``.
    """
    if len(iterates) < 2:
        raise UsageError("need at least one iterate beyond x")
    top = len(iterates) - 2 if max_order is None else min(max_order, len(iterates) - 2)
    for j in range(top + 1):
        vectors = [iterates[j + 1 - i] for i in range(j + 1)]
        constants = solve_monic(vectors)
        if constants is not None:
            return _relation(j, tuple(constants), iterates)
    return None


def _kernel_part(relation_poly, iterates):
    """``Q(op) x / Q(0)``: the component of ``x`` in the kernel, or None if ``Q(0) = 0``."""
    q0 = relation_poly[0]
    if q0 == 0:
        return None
    return _combine([c / q0 for c in relation_poly], iterates)


def _relation(order, constants, iterates):
    rel = TypeRelation(order, constants, None, False, None)
    poly = rel.polynomial()
    ker = _kernel_part(poly, iterates)
    if ker is None:
        return TypeRelation(order, constants, None, True, None)
    nonconst = not _is_constant_vector(ker)
    k = order + (1 if nonconst else 0)
    roots, complete = rational_roots(poly)
    eig = None
    if complete and all(m == 1 for _, m in roots):
        eig = tuple(r for r, _ in roots)
        if nonconst:
            eig = (mpq(0),) + eig
    base = TypeRelation(order, constants, k, nonconst, eig)
    return TypeRelation(order, constants, k, nonconst, eig, eigen_split(base, iterates))


def eigen_split(relation, iterates):
    """Split ``x`` into eigencomponents when the relation has distinct rational roots.

    Returns None when the roots are irrational or repeated.  Each component is
    checked against ``op x_i = lambda_i x_i`` using the next iterate.
    """
    if relation.eigenvalues is None:
        return None
    nonzero = [r for r in relation.eigenvalues if r != 0]
    nodes = [mpq(0)] + nonzero
    j = len(nodes) - 1
    if len(iterates) < j + 2:
        raise UsageError("not enough iterates to verify the split")
    parts = []
    x0 = None
    for i, lam in enumerate(nodes):
        coeffs = [mpq(1)]
        for m, other in enumerate(nodes):
            if m == i:
                continue
            # multiply by (t - other) / (lam - other)
            scale = 1 / (lam - other)
            nxt = [mpq(0)] * (len(coeffs) + 1)
            for p, c in enumerate(coeffs):
                nxt[p + 1] += c * scale
                nxt[p] -= c * other * scale
            coeffs = nxt
        comp = _combine(coeffs, iterates)
        image = _combine([mpq(0)] + coeffs, iterates)
        if not all((a - b * Expr.const(lam)).is_zero() for a, b in zip(image, comp)):
            raise AssertionError(f"eigencomponent for {lam} failed verification")
        if lam == 0 and _is_constant_vector(comp):
            x0 = comp
        else:
            parts.append((lam, comp))
    return Decomposition(x0, tuple(parts))


# -- reports ---------------------------------------------------------------------

@dataclass(frozen=True)
class CrossCheck:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self):
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass(frozen=True)
class Certificate:
    """Leading-term evidence: degrees in ``variable`` strictly grow with nonzero tops."""

    variable: str
    degrees: tuple
    leading: tuple
    argument: str

    def valid(self):
        d = self.degrees
        return (all(x < y for x, y in zip(d, d[1:]))
                and all(not c.is_zero() for c in self.leading))


@dataclass
class ClassificationReport:
    surface: str
    k_max: int
    verdict: str
    relation: TypeRelation | None = None
    certificate: Certificate | None = None
    degree_table: list = field(default_factory=list)
    cross_checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    constraints: dict | None = None
    label: str = "III"
    qualifier: str = ""

    def summary(self):
        base = self._base_summary()
        return f"{base} {self.qualifier}" if self.qualifier else base

    def _base_summary(self):
        if self.verdict == "finite-type":
            return f"finite {self.label}-type {self.relation.k}"
        if self.verdict == "null-type":
            return f"finite null {self.label}-type {self.relation.k}"
        if self.verdict == "infinite-type-certificate":
            trail = ", ".join(str(d) for d in self.certificate.degrees)
            return (f"infinite {self.label}-type certificate to depth {self.k_max}: "
                    f"leading {self.certificate.variable}-degrees {trail}")
        if self.verdict == "constraints":
            return "; ".join(self.notes[:1]) or "constraints"
        return f"inconclusive to depth {self.k_max}"

    def to_json(self):
        out = {
            "surface": self.surface,
            "k_max": self.k_max,
            "verdict": self.verdict,
            "summary": self.summary(),
            "relation": self.relation.to_json() if self.relation else None,
            "degree_table": self.degree_table,
            "cross_checks": [c.to_json() for c in self.cross_checks],
        }
        if self.certificate:
            out["certificate"] = {
                "variable": self.certificate.variable,
                "degrees": list(self.certificate.degrees),
                "leading": [c.to_text() for c in self.certificate.leading],
                "argument": self.certificate.argument,
            }
        if self.constraints is not None:
            out["constraints"] = {k: [format_scalar(x) for x in v]
                                  for k, v in self.constraints.items()}
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    def to_text(self):
        lines = [f"surface: {self.surface}", f"k_max: {self.k_max}",
                 f"verdict: {self.summary()}"]
        if self.relation:
            lines.append(f"relation: {self.relation.text()}")
            if self.relation.eigenvalues is not None:
                lines.append("eigenvalues: " + ", ".join(format_scalar(x)
                                                         for x in self.relation.eigenvalues))
            dec = self.relation.decomposition
            if dec and dec.x0 is not None:
                lines.append("x0: (" + ", ".join(c.to_text() for c in dec.x0) + ")")
        if self.certificate:
            lines.append(f"argument: {self.certificate.argument}")
        if self.constraints is not None:
            for name, vals in self.constraints.items():
                lines.append(f"constraint: {name} in {{{', '.join(format_scalar(v) for v in vals)}}}")
        for row in self.degree_table:
            lines.append(f"degrees k={row['k']}: {row['degrees']}")
        for c in self.cross_checks:
            lines.append(f"check {c.name}: {'ok' if c.passed else 'FAILED'}"
                         + (f" ({c.detail})" if c.detail else ""))
        lines.extend(f"note: {n}" for n in self.notes)
        return "\n".join(lines)


def _degree_entry(e, var):
    d = e.degree_in(var)
    if d == -inf:
        return None
    if d == inf:
        return "non-polynomial"
    return int(d)


def degree_table(iterates, var):
    return [{"k": k, "degrees": [_degree_entry(c, var) for c in vec]}
            for k, vec in enumerate(iterates)]


def leading_iterates(chart, op, k_max, var):
    """``x``, ``op x`` in full, then only the top ``var``-term of each further iterate.

    Sound when the operator raises the ``var``-degree of every term by the
    same amount, so the top term of ``op f`` comes from the top term of ``f``.
    """
    out = compute_iterates(chart, op, 1)
    for _ in range(k_max - 1):
        prev = out[-1]
        d = max(c.degree_in(var) for c in prev)
        if d in (inf, -inf):
            break
        top = Expr.symbol(var) ** int(d)
        out.append(tuple(apply(op, c.coeff_in(var, d) * top) for c in prev))
    return out


def _family_hooks(chart):
    family = chart.metadata.get("family")
    if family == "ruled":
        from . import ruled
        return ruled.growth_certificate, ruled.family_checks, ruled.T
    if family == "quadric1":
        from . import quadric
        return quadric.kind1_certificate, quadric.kind1_checks, quadric.U
    if family == "quadric2":
        from . import quadric
        return quadric.kind2_certificate, quadric.kind2_checks, quadric.U
    return None, None, chart.vars[0]


def classify(chart, k_max=4, op=None):
    """Relation search on III-iterates of the position, with family evidence."""
    if op is None:
        op = beltrami_operator(third_form(chart), chart.env)
    certify, checks, var = _family_hooks(chart)
    if chart.abstract:
        if certify is None:
            raise UsageError(f"{chart.name}: abstract charts need a family certificate")
        iterates = leading_iterates(chart, op, k_max, var)
        rel = None
    else:
        iterates = compute_iterates(chart, op, k_max)
    report = ClassificationReport(chart.name, k_max, "inconclusive",
                                  degree_table=degree_table(iterates, var))
    if chart.abstract:
        report.notes.append("abstract chart: iterates beyond the first keep only their top "
                            f"{var.name}-term")
    else:
        rel = detect_relation(iterates)
    if rel is not None:
        report.relation = rel
        report.verdict = "null-type" if rel.null else "finite-type"
        if rel.k is None:
            report.verdict = "inconclusive"
            report.notes.append("relation has a repeated zero root")
        report.cross_checks.append(CrossCheck("relation re-verifies", rel.holds(iterates)))
        shorter = detect_relation(iterates, rel.order - 1) if rel.order else None
        report.cross_checks.append(CrossCheck("minimal order", shorter is None,
                                              f"order {rel.order}"))
        if rel.eigenvalues is None:
            report.notes.append("eigenvalues not rational and distinct; no split")
    elif certify is not None:
        cert = certify(chart, iterates)
        if cert is not None and cert.valid():
            report.certificate = cert
            report.verdict = "infinite-type-certificate"
    if checks is not None:
        report.cross_checks.extend(checks(chart, iterates, report))
    return report


__all__ = [
    "Certificate", "ClassificationReport", "CrossCheck", "Decomposition", "TypeRelation",
    "classify", "compute_iterates", "degree_table", "detect_relation",
    "eigen_split", "leading_iterates",
]
