"""Parsing and printing of expressions in R = F{Y}[X].

Grammar (whitespace is ignored)::

    expr   := term (("+" | "-") term)*
    term   := factor (("*" | "/") factor)*
    factor := atom ("^" NAT)?
    atom   := RATIONAL | "t" NAT | "X[" NAT "," NAT "]"
            | "Y[" NAT "," NAT (";" NAT)? "]" | "det" | "(" expr ")" | "-" factor

Unary minus takes a whole factor, so -X[1,1]^2 means -(X[1,1]^2).
Division is accepted only by a nonzero element of F, which is what the
printer emits for rational-function coefficients.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional

from .diffring import DiffPoly
from .matring import RPoly, det_x
from .scalar import QQ, FieldConfig, Scalar, format_scalar


class ParseError(ValueError):
    """Syntax or range error at a 1-based line and column."""

    def __init__(self, message: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.column = col
        self.message = message


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+)
  | (?P<det>det\b)
  | (?P<gen>t(?P<gidx>\d+))
  | (?P<var>[XY])
  | (?P<op>[-+*/^()\[\],;])
    """,
    re.VERBOSE,
)


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> List[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = "gen" if m.group("gen") else m.lastgroup
        if kind != "ws":
            toks.append(_Tok(kind, m.group(), pos))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, n: int, cfg: FieldConfig):
        self.text = text
        self.n = n
        self.cfg = cfg
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok: Optional[_Tok] = None):
        tok = tok or self.peek()
        return ParseError(msg, self.text, tok.pos)

    def expect(self, text: str) -> _Tok:
        t = self.peek()
        if t.text != text:
            found = repr(t.text) if t.kind != "end" else "end of input"
            raise self.error(f"expected {text!r}, found {found}")
        return self.take()

    def nat(self) -> int:
        t = self.peek()
        if t.kind != "num":
            raise self.error("expected a natural number")
        self.take()
        return int(t.text)

    def index(self) -> int:
        tok = self.peek()
        v = self.nat()
        if not 1 <= v <= self.n:
            raise self.error(f"index {v} out of range 1..{self.n}", tok)
        return v

    def parse(self) -> RPoly:
        e = self.expr()
        if self.peek().kind != "end":
            raise self.error(f"unexpected {self.peek().text!r}")
        return e

    def expr(self) -> RPoly:
        val = self.term()
        while self.peek().text in ("+", "-"):
            op = self.take().text
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self) -> RPoly:
        val = self.factor()
        while self.peek().text in ("*", "/"):
            op = self.take()
            rhs = self.factor()
            if op.text == "*":
                val = val * rhs
            else:
                val = self._divide(val, rhs, op)
        return val

    def _divide(self, val: RPoly, rhs: RPoly, op: _Tok) -> RPoly:
        if not (rhs.is_scalar() and rhs.is_y_free()):
            raise self.error("can only divide by an element of F", op)
        if not rhs:
            raise self.error("division by zero", op)
        d = rhs.coefficient((0,) * (self.n * self.n)).constant_value()
        return val * (Scalar(1) / d)

    def factor(self) -> RPoly:
        base = self.atom()
        if self.peek().text == "^":
            self.take()
            return base ** self.nat()
        return base

    def atom(self) -> RPoly:
        t = self.peek()
        n = self.n
        if t.kind == "num":
            self.take()
            return RPoly.const(n, int(t.text))
        if t.kind == "gen":
            self.take()
            i = int(t.text[1:])
            if not 1 <= i <= self.cfg.m:
                raise self.error(f"generator t{i} out of range 1..{self.cfg.m}", t)
            return RPoly.const(n, Scalar.gen(i))
        if t.kind == "det":
            self.take()
            return det_x(n)
        if t.text == "X":
            self.take()
            self.expect("[")
            i = self.index()
            self.expect(",")
            j = self.index()
            self.expect("]")
            return RPoly.x(n, i, j)
        if t.text == "Y":
            self.take()
            self.expect("[")
            i = self.index()
            self.expect(",")
            j = self.index()
            k = 0
            if self.peek().text == ";":
                self.take()
                k = self.nat()
            self.expect("]")
            return RPoly.const(n, DiffPoly.var(i, j, k))
        if t.text == "(":
            self.take()
            e = self.expr()
            self.expect(")")
            return e
        if t.text == "-":
            # binds looser than "^": -x^2 is -(x^2)
            self.take()
            return -self.factor()
        found = repr(t.text) if t.kind != "end" else "end of input"
        raise self.error(f"unexpected {found}")


def parse_expr(text: str, n: int = 2, cfg: FieldConfig = QQ) -> RPoly:
    return _Parser(text, n, cfg).parse()


def parse_scalar(text: str, cfg: FieldConfig = QQ) -> Scalar:
    """An expression that must evaluate to an element of F."""
    p = parse_expr(text, 1, cfg)
    if not (p.is_scalar() and p.is_y_free()):
        raise ParseError("expected an element of F", text, 0)
    return p.coefficient((0,)).constant_value()


def parse_matrix(text: str, cfg: FieldConfig = QQ):
    """Row-major matrix: rows separated by ';', entries by ','."""
    rows = [r for r in text.split(";")]
    mat = [[parse_scalar(e, cfg) for e in r.split(",")] for r in rows]
    size = len(mat)
    if any(len(r) != size for r in mat):
        raise ParseError(f"matrix is not square ({size} rows)", text, 0)
    return mat


# -- printing ------------------------------------------------------------------


def _signed_scalar(c: Scalar):
    """(negative?, text) with a leading minus pulled out of a one-term numerator."""
    if len(c.num) == 1 and c.num.leading_coefficient() < 0:
        return True, format_scalar(-c)
    return False, format_scalar(c)


def _needs_parens(text: str) -> bool:
    # a sum at top level, or a quotient that a following factor would split
    depth = 0
    for k, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and ch in "+-" and k > 0:
            return True
    return False


def _product(c: Scalar, factors: List[str]):
    neg, ctext = _signed_scalar(c)
    if not factors:
        return neg, ctext
    if ctext == "1":
        return neg, "*".join(factors)
    if _needs_parens(ctext):
        ctext = f"({ctext})"
    return neg, ctext + "*" + "*".join(factors)


def _y_factors(mono) -> List[str]:
    return [str(v) if e == 1 else f"{v}^{e}" for v, e in mono]


def _x_factors(n: int, alpha) -> List[str]:
    out = []
    for k, e in enumerate(alpha):
        if e:
            name = f"X[{k // n + 1},{k % n + 1}]"
            out.append(name if e == 1 else f"{name}^{e}")
    return out


def _join(parts) -> str:
    if not parts:
        return "0"
    pieces = []
    for k, (neg, body) in enumerate(parts):
        if k == 0:
            pieces.append(("-" if neg else "") + body)
        else:
            if body.startswith("-") or _needs_parens(body):
                body = f"({body})"
            pieces.append((" - " if neg else " + ") + body)
    return "".join(pieces)


def format_diffpoly(p: DiffPoly) -> str:
    """Terms in descending graded-lex order on the Y's."""
    return _join([_product(c, _y_factors(m)) for m, c in p.sorted_terms()])


def format_expr(p: RPoly) -> str:
    """Terms in descending X order, leading power product first."""
    parts = []
    for alpha, c in p.sorted_terms():
        xf = _x_factors(p.n, alpha)
        if len(c) == 1:
            (mono, s), = c.terms.items()
            parts.append(_product(s, _y_factors(mono) + xf))
        else:
            inner = format_diffpoly(c)
            parts.append((False, f"({inner})" + ("*" + "*".join(xf) if xf else "")))
    return _join(parts)


def format_matrix(mat) -> str:
    return ";".join(",".join(str(x) for x in row) for row in mat)
