"""Parser for polynomial expressions in ``z``.

Grammar (whitespace ignored, no implicit multiplication)::

    expr     := term (('+'|'-') term)*
    term     := factor (('*' | '/') factor)*     # '/' only by a nonzero constant
    factor   := base ('^' uint)?
    base     := 'z' | rational | 'sqrt' '(' uint ')' | '(' expr ')'
    rational := int ('/' uint)?

A leading sign on an expression (``-z^2+1``, ``(-3)``) is accepted as a
unary minus.  When every literal lives in one field Q(sqrt(d)) the result is
exact; mixing radicals gives a numeric-only polynomial and a
:class:`NumericOnlyWarning`.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass

from flint import acb, acb_poly, ctx

from .errors import IncompatibleRadicals, NumericOnlyWarning, ParseError
from .poly import Poly
from .quadratic import QNumber

_TOKEN = re.compile(r"\s*(?:(\d+)|(sqrt)|(z)|([-+*/^()]))")


@dataclass(frozen=True)
class _Tok:
    kind: str
    value: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(_Tok("int", m.group(1), start))
        elif m.group(2):
            toks.append(_Tok("sqrt", "sqrt", start))
        elif m.group(3):
            toks.append(_Tok("z", "z", start))
        else:
            toks.append(_Tok(m.group(4), m.group(4), start))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


# AST nodes are tuples: ("z",), ("num", int, int), ("sqrt", int),
# ("add"|"sub"|"mul", a, b), ("div", a, b, pos), ("neg", a), ("pow", a, k)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self, kind: str | None = None) -> _Tok:
        tok = self.toks[self.i]
        if kind is not None and tok.kind != kind:
            want = "number" if kind == "int" else repr(kind)
            found = "end of input" if tok.kind == "end" else repr(tok.value)
            raise ParseError(f"expected {want}, found {found}", self.text, tok.pos)
        self.i += 1
        return tok

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"unexpected {tok.value!r}", self.text, tok.pos)
        return node

    def expr(self):
        if self.peek().kind in "+-":
            sign = self.take().kind
            node = self.term()
            if sign == "-":
                node = ("neg", node)
        else:
            node = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.take().kind
            rhs = self.term()
            node = ("add" if op == "+" else "sub", node, rhs)
        return node

    def term(self):
        node = self.factor()
        while self.peek().kind in ("*", "/"):
            op = self.take()
            rhs = self.factor()
            node = ("mul", node, rhs) if op.kind == "*" else ("div", node, rhs, op.pos)
        nxt = self.peek()
        if nxt.kind in ("z", "int", "sqrt", "("):
            raise ParseError("implicit multiplication is not supported; use '*'", self.text, nxt.pos)
        return node

    def factor(self):
        node = self.base()
        if self.peek().kind == "^":
            self.take()
            node = ("pow", node, int(self.take("int").value))
        return node

    def base(self):
        tok = self.peek()
        if tok.kind == "z":
            self.take()
            return ("z",)
        if tok.kind == "int":
            self.take()
            num = int(tok.value)
            den = 1
            if self.peek().kind == "/":
                self.take()
                dtok = self.take("int")
                den = int(dtok.value)
                if den == 0:
                    raise ParseError("division by zero", self.text, dtok.pos)
            return ("num", num, den)
        if tok.kind == "sqrt":
            self.take()
            self.take("(")
            n = int(self.take("int").value)
            self.take(")")
            return ("sqrt", n)
        if tok.kind == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        found = "end of input" if tok.kind == "end" else repr(tok.value)
        raise ParseError(f"expected 'z', a number, sqrt(...) or '(', found {found}", self.text, tok.pos)


def _eval_exact(node) -> Poly:
    kind = node[0]
    if kind == "z":
        return Poly.z()
    if kind == "num":
        return Poly([QNumber(node[1]) / node[2]], allow_zero=True)
    if kind == "sqrt":
        return Poly([QNumber.sqrt(node[1])], allow_zero=True)
    if kind == "neg":
        return -_eval_exact(node[1])
    if kind == "pow":
        return _eval_exact(node[1]) ** node[2]
    a, b = _eval_exact(node[1]), _eval_exact(node[2])
    if not (a.is_exact and b.is_exact):
        raise IncompatibleRadicals(0, 0)
    if kind == "div":
        if b.degree != 0:
            raise ParseError("division is only allowed by a nonzero constant", "", node[3])
        out = a * b.exact[0].inverse()
        if not out.is_exact:
            raise IncompatibleRadicals(a.radical, b.radical)
        return out
    if kind == "add":
        out = a + b
    elif kind == "sub":
        out = a - b
    else:
        out = a * b
    if not out.is_exact:
        raise IncompatibleRadicals(a.radical, b.radical)
    return out


def _eval_ball(node, prec: int) -> acb_poly:
    kind = node[0]
    if kind == "z":
        return acb_poly([0, 1])
    if kind == "num":
        return acb_poly([acb(node[1]) / node[2]])
    if kind == "sqrt":
        return acb_poly([acb(node[1]).sqrt()])
    if kind == "neg":
        return -_eval_ball(node[1], prec)
    if kind == "pow":
        return _eval_ball(node[1], prec) ** node[2]
    a, b = _eval_ball(node[1], prec), _eval_ball(node[2], prec)
    if kind == "div":
        if b.degree() != 0:
            raise ParseError("division is only allowed by a nonzero constant", "", node[3])
        return a * (1 / b.coeffs()[0])
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    return a * b


def parse_poly(expr: str, precision: int = 256) -> Poly:
    """Parse ``expr`` into a :class:`Poly` of degree at least 1."""
    ast = _Parser(expr).parse()
    try:
        p = _eval_exact(ast)
    except ParseError as err:
        raise ParseError(err.message, expr, err.position) from None
    except IncompatibleRadicals:
        warnings.warn(
            f"mixed radicals in {expr!r}; continuing with ball arithmetic only",
            NumericOnlyWarning,
            stacklevel=2,
        )

        def source(prec):
            with ctx.workprec(prec):
                return _eval_ball(ast, prec).coeffs()

        try:
            p = Poly.numeric(source, check_prec=precision, allow_zero=True)
        except ParseError as err:
            raise ParseError(err.message, expr, err.position) from None
    if p.degree < 1:
        raise ParseError("expression has degree 0; a polynomial of degree at least 1 is required", expr, 0)
    return p
