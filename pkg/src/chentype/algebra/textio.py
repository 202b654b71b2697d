"""Canonical text, LaTeX emission and a parser for the text form.

Text form: ``num`` or ``(num)/(den)``, terms in descending graded-lex order,
``*`` for products, ``^`` for powers, ``p/q`` rational coefficients, and
primes for derivative orders (``zeta''``).
"""

import re

from ..errors import UnboundSymbolError, UsageError
from .expr import Expr
from .poly import MultiPoly
from .symbols import Indeterminate, Kind


def to_text(e: Expr) -> str:
    num = e.num.to_text()
    if e.den.is_one():
        return num
    return f"({num})/({e.den.to_text()})"


def _poly_latex(p: MultiPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for e, c in p.sorted_terms():
        mono = " ".join(
            g.latex() if k == 1 else f"{_latex_base(g)}^{{{k}}}"
            for g, k in zip(p.gens, e) if k
        )
        neg = c < 0
        a = -c if neg else c
        if a.denominator == 1:
            coef = str(int(a.numerator))
        else:
            coef = f"\\frac{{{int(a.numerator)}}}{{{int(a.denominator)}}}"
        if not mono:
            body = coef
        elif a == 1:
            body = mono
        else:
            body = f"{coef} {mono}"
        sign = "-" if neg else "+"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


def _latex_base(g):
    s = g.latex()
    return "{" + s + "}" if "'" in s else s


def to_latex(e: Expr) -> str:
    num = _poly_latex(e.num)
    if e.den.is_one():
        return num
    return f"\\frac{{{num}}}{{{_poly_latex(e.den)}}}"


# -- parser ----------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)('*)|(.))")


class SymbolTable:
    """Name lookup for the parser.

    ``symbols`` are concrete indeterminates; differential symbols are matched
    by base name and take their order from trailing primes.
    """

    def __init__(self, symbols=()):
        self.by_name = {}
        for s in symbols:
            self.add(s)

    def add(self, s: Indeterminate):
        self.by_name[s.name] = s.base() if s.kind is Kind.DIFF else s

    def lookup(self, name, primes):
        try:
            s = self.by_name[name]
        except KeyError:
            raise UnboundSymbolError(f"unknown symbol {name!r}") from None
        if primes:
            if s.kind is not Kind.DIFF:
                raise UsageError(f"{name} is not a differential symbol")
            return s.derivative(primes)
        return s

    @classmethod
    def of(cls, *exprs):
        t = cls()
        for e in exprs:
            for s in e.free_symbols():
                t.add(s)
        return t


def _tokenize(text):
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        num, name, primes, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name, len(primes)))
        elif op is not None and not op.isspace():
            out.append(("op", op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens, table):
        self.toks = tokens
        self.i = 0
        self.table = table

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take_op(self, ch):
        t = self.peek()
        if t and t[0] == "op" and t[1] == ch:
            self.i += 1
            return True
        return False

    def expr(self):
        val = self.term()
        while True:
            if self.take_op("+"):
                val = val + self.term()
            elif self.take_op("-"):
                val = val - self.term()
            else:
                return val

    def term(self):
        val = self.unary()
        while True:
            if self.take_op("*"):
                val = val * self.unary()
            elif self.take_op("/"):
                val = val / self.unary()
            else:
                return val

    def unary(self):
        if self.take_op("-"):
            return -self.unary()
        if self.take_op("+"):
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.take_op("^"):
            neg = self.take_op("-")
            if self.take_op("("):
                neg = self.take_op("-") != neg
                k = self._int()
                if not self.take_op(")"):
                    raise UsageError("expected ')'")
            else:
                k = self._int()
            return base ** (-k if neg else k)
        return base

    def _int(self):
        t = self.peek()
        if not t or t[0] != "num":
            raise UsageError("expected an integer exponent")
        self.i += 1
        return t[1]

    def atom(self):
        t = self.peek()
        if t is None:
            raise UsageError("unexpected end of expression")
        if t[0] == "num":
            self.i += 1
            return Expr.const(t[1])
        if t[0] == "name":
            self.i += 1
            return Expr.symbol(self.table.lookup(t[1], t[2]))
        if self.take_op("("):
            val = self.expr()
            if not self.take_op(")"):
                raise UsageError("expected ')'")
            return val
        raise UsageError(f"unexpected token {t[1]!r}")


def parse(text: str, symbols) -> Expr:
    """Parse canonical (or hand-written) text into an Expr."""
    table = symbols if isinstance(symbols, SymbolTable) else SymbolTable(symbols)
    p = _Parser(_tokenize(text), table)
    val = p.expr()
    if p.peek() is not None:
        raise UsageError(f"trailing input in {text!r}")
    return val
