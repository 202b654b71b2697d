"""Command-line front end: ``verify``, ``classify`` and ``show``."""

import argparse
import json
import re
import sys

from . import quadric as qd
from . import ruled as rl
from .algebra import scalar
from .errors import ChenTypeError, FlatChartError, UsageError
from .finite_type import classify
from .geometry import (CATALOG, apply, curvature, first_form, make_chart, second_form,
                       third_form)
from .geometry.operator import beltrami_operator
from .verification import MISMATCH, STRUCTURAL, build_cases, run_cases, select

RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")
REQUIRED = {"helicoid": ("h",), "quadric1": ("a", "b", "c"), "quadric2": ("a", "b")}
SHOW_WHAT = ("forms", "curvature", "operator", "iterate")


# -- surface specs ---------------------------------------------------------------

def parse_params(tokens):
    params = {}
    for tok in tokens:
        key, sep, value = tok.partition("=")
        if not sep or not key:
            raise UsageError(f"expected key=rational, got {tok!r}")
        if not RATIONAL.match(value):
            raise UsageError(f"{key}: {value!r} is not a rational (use p/q or an integer)")
        if key in params:
            raise UsageError(f"parameter {key} given twice")
        params[key] = scalar(value)
    return params


def build_surface(name, params, symbolic=False):
    """Chart (and quadric record, if any) for ``name key=value ...``."""
    if name not in CATALOG:
        raise UsageError(f"unknown surface {name!r}; known: {', '.join(CATALOG)}")
    missing = [k for k in REQUIRED.get(name, ()) if k not in params]
    if missing and not symbolic:
        raise UsageError(f"{name} needs {', '.join(f'{k}=<rational>' for k in missing)} "
                         "or --symbolic")
    try:
        if name == "quadric1":
            q = qd.kind1(**params)
            return q.chart, q
        if name == "quadric2":
            q = qd.kind2(**params)
            return q.chart, q
        return make_chart(name, **params), None
    except TypeError as exc:
        raise UsageError(f"{name}: bad parameters ({exc})") from None


def split_spec(tokens):
    """``name key=val ... [rest...]`` -> (name, params, rest)."""
    if not tokens:
        raise UsageError("missing surface name")
    name, rest = tokens[0], tokens[1:]
    kv = [t for t in rest if "=" in t]
    return name, parse_params(kv), [t for t in rest if "=" not in t]


# -- verify ----------------------------------------------------------------------

def cmd_verify(args, out):
    cases = select(build_cases(args.kmax), args.pattern)
    if not cases:
        raise UsageError(f"no verification case matches {args.pattern!r}")
    results = run_cases(cases, args.kmax, bless=args.bless, golden_root=args.golden_dir)
    counts = {s: sum(r.status == s for r in results) for s in ("match", STRUCTURAL, MISMATCH)}
    if args.json:
        payload = {"k_max": args.kmax, "cases": [r.to_json(args.timing) for r in results],
                   "counts": counts}
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        width = max(len(r.id) for r in results)
        for r in results:
            line = f"{r.id:<{width}}  {r.status}"
            if args.timing:
                line += f"  {r.runtime:.3f}s"
            if r.status != "match" and r.detail:
                line += f"  {r.detail}"
            out.write(line + "\n")
        out.write(f"{len(results)} cases: {counts['match']} match, "
                  f"{counts[STRUCTURAL]} structural-only, {counts[MISMATCH]} mismatch\n")
    return 1 if counts[MISMATCH] else 0


# -- classify --------------------------------------------------------------------

def run_classification(name, params, symbolic, k_max):
    chart, q = build_surface(name, params, symbolic)
    if isinstance(q, qd.QuadricKindI):
        return qd.kind1_classify(q, k_max)
    if isinstance(q, qd.QuadricKindII):
        return qd.kind2_classify(q, k_max)
    return classify(chart, k_max)


def cmd_classify(args, out):
    name, params, rest = split_spec(args.spec)
    if rest:
        raise UsageError(f"unexpected arguments: {' '.join(rest)}")
    report = run_classification(name, params, args.symbolic, args.kmax)
    if args.json:
        out.write(json.dumps(report.to_json(), indent=2) + "\n")
    else:
        out.write(report.to_text() + "\n")
    return 0


# -- show ------------------------------------------------------------------------

def _render(e, latex):
    return e.latex() if latex else e.to_text()


def _vars(chart):
    return tuple(v.text for v in chart.vars)


def show_forms(chart, latex):
    vs = _vars(chart)
    out = {}
    for label, build in (("I", first_form), ("II", second_form), ("III", third_form)):
        try:
            form = build(chart)
        except FlatChartError as exc:
            out[label] = None
            out["error"] = f"flat chart: {exc}"
            break
        out[label] = form.latex(vs) if latex else form.to_text(vs)
    return out


def show_curvature(chart, latex):
    data = curvature(chart)
    H = data.H
    out = {"K": _render(data.K, latex),
           "H": f"{_render(H.p, latex)} + ({_render(H.q, latex)}) R",
           "R^2": _render(H.ext.radicand, latex)}
    if data.normal is not None:
        out["n"] = [f"({_render(c.q, latex)}) R" for c in data.normal]
    return out


def _ruled_layout(chart, latex):
    rop = rl.ruled_third_beltrami(rl.spec_for_chart(chart))
    out = {"layout": "P1 d_ss + P2 d_st + P3 d_s + P4 d_t + P5 d_tt"}
    for k, v in rop.coefficients().items():
        out[f"P_{k[1]}" if latex else k] = _render(v, latex)
    return out


def _quadric_layout(q, latex):
    if isinstance(q, qd.QuadricKindI):
        lu, lv = qd.kind1_leading_parts(q)
        fs = qd.kind1_f(q)
        layout = ("Lu (u d_uu + 3 d_u) + Lv (v d_vv + 3 d_v) "
                  "+ f1 d_uv + f2 d_uu + f3 d_vv + f4 d_u + f5 d_v")
    else:
        lu, lv = qd.kind2_leading_parts(q)
        fs = qd.kind2_f(q)
        layout = ("Lu (u d_uu + 2 d_u) + Lv (v d_vv + 2 d_v) "
                  "- f1 d_uv - f2 d_uu - f3 d_vv - f4 d_u - f5 d_v")
    u, v = q.chart.vars
    out = {"layout": layout,
           "Lu": _render(lu.coeff_in(u, lu.degree_in(u)), latex) + " u^" + str(int(lu.degree_in(u))),
           "Lv": _render(lv.coeff_in(v, lv.degree_in(v)), latex) + " v^" + str(int(lv.degree_in(v)))}
    for k, f in fs.items():
        out[k] = _render(f, latex)
    return out


def show_operator(chart, q, latex):
    if q is not None:
        return _quadric_layout(q, latex)
    if chart.metadata.get("family") == "ruled":
        return _ruled_layout(chart, latex)
    op = beltrami_operator(third_form(chart), chart.env)
    return {"operator": op.latex() if latex else op.to_text()}


def show_iterate(chart, k, latex):
    op = beltrami_operator(third_form(chart), chart.env)
    vec = tuple(chart.components)
    for _ in range(k):
        vec = tuple(apply(op, c) for c in vec)
    return {f"x{i + 1}": _render(c, latex) for i, c in enumerate(vec)}


def cmd_show(args, out):
    name, params, rest = split_spec(args.spec)
    if not rest or rest[0] not in SHOW_WHAT:
        raise UsageError(f"show needs one of: {', '.join(SHOW_WHAT)}")
    what, extra = rest[0], rest[1:]
    chart, q = build_surface(name, params, args.symbolic)
    if what == "iterate":
        if len(extra) != 1 or not extra[0].isdigit():
            raise UsageError("show ... iterate needs a non-negative integer k")
        payload = show_iterate(chart, int(extra[0]), args.latex)
    elif extra:
        raise UsageError(f"unexpected arguments: {' '.join(extra)}")
    elif what == "forms":
        payload = show_forms(chart, args.latex)
    elif what == "curvature":
        payload = show_curvature(chart, args.latex)
    else:
        payload = show_operator(chart, q, args.latex)
    error = payload.pop("error", None) if isinstance(payload, dict) else None
    if args.json:
        body = dict(payload)
        if error:
            body["error"] = error
        out.write(json.dumps(body, indent=2) + "\n")
    else:
        for key, value in payload.items():
            if value is None:
                continue
            if isinstance(value, list):
                value = "(" + ", ".join(value) + ")"
            out.write(f"{value}\n" if key in ("I", "II", "III", "operator") else f"{key}: {value}\n")
    if error:
        print(f"error: {error}", file=sys.stderr)
        return 1
    return 0


# -- entry point -----------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="chentype",
                                description="Exact finite Chen-type analysis under the third "
                                            "fundamental form.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the verification suite")
    v.add_argument("pattern", nargs="?", help="glob over case ids, e.g. 'e7.*'")
    v.add_argument("--kmax", type=int, default=3)
    v.add_argument("--json", action="store_true")
    v.add_argument("--bless", action="store_true", help="rewrite golden files")
    v.add_argument("--timing", action="store_true", help="include per-case runtimes")
    v.add_argument("--golden-dir", help=argparse.SUPPRESS)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("classify", help="classify a surface")
    c.add_argument("spec", nargs="+", help="surface name followed by key=rational pairs")
    c.add_argument("--kmax", type=int, default=4)
    c.add_argument("--symbolic", action="store_true", help="leave missing parameters symbolic")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_classify)

    s = sub.add_parser("show", help="print forms, curvature, the operator or an iterate")
    s.add_argument("spec", nargs="+",
                   help="surface name, key=rational pairs, then forms|curvature|operator|iterate k")
    s.add_argument("--symbolic", action="store_true")
    fmt = s.add_mutually_exclusive_group()
    fmt.add_argument("--latex", action="store_true")
    fmt.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_show)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args, extra = parser.parse_known_args(argv)
    # positionals may follow flags, e.g. ``show quadric1 --symbolic operator``
    stray = [t for t in extra if t.startswith("-")]
    if stray or (extra and not hasattr(args, "spec")):
        parser.error(f"unrecognized arguments: {' '.join(extra)}")
    if extra:
        args.spec.extend(extra)
    if getattr(args, "kmax", 1) < 1:
        parser.error("--kmax must be at least 1")
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except ChenTypeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
